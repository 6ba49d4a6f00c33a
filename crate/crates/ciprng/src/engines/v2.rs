//! CIPRNG version 2: like version 1, but each round negates `m` *distinct*
//! components. Touch flags remember which components a round already
//! visited; a revisit extends the round by one draw instead of re-negating.

use crate::chaotic::{ci_step, BooleanStateVector, StrategyElement};
use crate::engines::g1::g1_map_general;
use crate::error::{Error, Result};
use crate::source::EntropySource;

#[derive(Debug, Clone)]
pub struct CiprngV2 {
    x: BooleanStateVector,
    touched: Vec<bool>,
    prng1: EntropySource,
    prng2: EntropySource,
}

impl CiprngV2 {
    pub fn new(x0: BooleanStateVector, prng1: EntropySource, prng2: EntropySource) -> Self {
        let n = x0.len();
        Self {
            x: x0,
            touched: vec![false; n],
            prng1,
            prng2,
        }
    }

    pub fn state(&self) -> &BooleanStateVector {
        &self.x
    }

    /// One round: `m = g1(a)` distinct negations, with collisions on the
    /// touch flags skipped and the round extended. A scripted source that
    /// keeps replaying touched positions would stall the loop, so the
    /// round errors after `64 * N` draws.
    pub fn next_block(&mut self) -> Result<BooleanStateVector> {
        let n = self.x.len();
        self.touched.fill(false);
        let a = self.prng1.next_word()? as u32;
        let m = g1_map_general(a, n) as usize;
        let max_draws = 64 * n;
        let mut negated = 0;
        let mut draws = 0;
        while negated < m {
            if draws >= max_draws {
                return Err(Error::RoundStalled { draws, needed: m });
            }
            let b = self.prng2.next_word()?;
            draws += 1;
            let s = (b % n as u64) as usize + 1;
            if !self.touched[s - 1] {
                self.x = ci_step(&self.x, StrategyElement(s))?;
                self.touched[s - 1] = true;
                negated += 1;
            }
        }
        Ok(self.x.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xorshift::XorshiftState;

    /// Smallest 32-bit word mapping to iteration count `m` for width `n`.
    fn word_for_m(m: usize, n: usize) -> u64 {
        if m == 0 {
            return 0;
        }
        let mut c: u128 = 1;
        let mut acc: u128 = 0;
        for i in 0..m {
            acc += c;
            c = c * (n as u128 - i as u128) / (i as u128 + 1);
        }
        // First a with a/2^32 >= acc/2^n.
        (((acc << 32) + (1 << n) - 1) >> n) as u64
    }

    #[test]
    fn zero_iterations_leaves_state() {
        let x0 = BooleanStateVector::from_word(0b1010_1010, 8).unwrap();
        let mut g = CiprngV2::new(
            x0.clone(),
            EntropySource::scripted(vec![0]),
            EntropySource::scripted(vec![]),
        );
        assert_eq!(g.next_block().unwrap(), x0);
    }

    #[test]
    fn collision_extends_round() {
        // m=2 over N=8 with draws 3,3,5: the repeat of 3 is skipped and
        // positions 4 and 6 end up negated.
        let x0 = BooleanStateVector::from_word(0, 8).unwrap();
        let a = word_for_m(2, 8);
        let mut g = CiprngV2::new(
            x0,
            EntropySource::scripted(vec![a]),
            EntropySource::scripted(vec![3, 3, 5]),
        );
        let x = g.next_block().unwrap();
        assert_eq!(x.to_string(), "00010100");
    }

    #[test]
    fn full_negation_round() {
        let x0 = BooleanStateVector::from_word(0, 8).unwrap();
        let a = word_for_m(8, 8);
        let mut g = CiprngV2::new(
            x0,
            EntropySource::scripted(vec![a]),
            EntropySource::scripted(vec![0, 1, 2, 3, 4, 5, 6, 7]),
        );
        assert_eq!(g.next_block().unwrap().to_string(), "11111111");
    }

    #[test]
    fn no_position_negated_twice_per_round() {
        let mut g = CiprngV2::new(
            BooleanStateVector::from_word(0x5A5A_5A5A, 32).unwrap(),
            XorshiftState::with_default_triple(41).unwrap().into(),
            XorshiftState::with_default_triple(43).unwrap().into(),
        );
        for _ in 0..500 {
            let before = g.state().clone();
            let after = g.next_block().unwrap();
            // Every component differs at most once from the previous
            // block, i.e. the per-round flip set is exactly the diff.
            let flips: usize = before
                .as_slice()
                .iter()
                .zip(after.as_slice())
                .filter(|(a, b)| a != b)
                .count();
            let touched = g.touched.iter().filter(|&&t| t).count();
            assert_eq!(flips, touched);
        }
    }

    #[test]
    fn adversarial_stream_errors_instead_of_spinning() {
        let x0 = BooleanStateVector::from_word(0, 8).unwrap();
        let a = word_for_m(2, 8);
        let same = vec![3u64; 64 * 8 + 8];
        let mut g = CiprngV2::new(
            x0,
            EntropySource::scripted(vec![a]),
            EntropySource::scripted(same),
        );
        assert!(matches!(g.next_block(), Err(Error::RoundStalled { .. })));
    }
}
