//! Entropy sources feeding the composed generators: live XORshift or BBS
//! instances, or scripted integer lists for known-answer runs.

use crate::bbs::BbsState;
use crate::error::{Error, Result};
use crate::xorshift::XorshiftState;

/// A draw-by-draw word source. Scripted sources error once exhausted.
#[derive(Debug, Clone)]
pub enum EntropySource {
    Xorshift(XorshiftState),
    Bbs { state: BbsState, lsb_bits: u32 },
    Scripted { values: Vec<u64>, pos: usize },
}

impl EntropySource {
    pub fn scripted(values: Vec<u64>) -> Self {
        Self::Scripted { values, pos: 0 }
    }

    pub fn next_word(&mut self) -> Result<u64> {
        match self {
            Self::Xorshift(g) => Ok(g.next_word()),
            Self::Bbs { state, lsb_bits } => Ok(state.next_bits(*lsb_bits)),
            Self::Scripted { values, pos } => {
                let v = values
                    .get(*pos)
                    .copied()
                    .ok_or(Error::ScriptExhausted(*pos))?;
                *pos += 1;
                Ok(v)
            }
        }
    }
}

impl From<XorshiftState> for EntropySource {
    fn from(g: XorshiftState) -> Self {
        Self::Xorshift(g)
    }
}
