//! Composed generators and the block-oriented streaming surface.

pub mod fpga;
pub mod g1;
pub mod v1;
pub mod v2;

pub use fpga::{derive_nibble_mask, mask_form_round, FpgaCiprng, FpgaProfile, SourceWords};
pub use g1::{g1_map, g1_map_general};
pub use v1::CiprngV1;
pub use v2::CiprngV2;

use crate::bits::BitSequence;
use crate::error::Result;
use crate::source::EntropySource;

/// Anything that emits fixed-width output blocks.
pub trait BlockGenerator {
    /// Bits per emitted block.
    fn block_width(&self) -> usize;
    /// Appends one block to `out`, most significant bit first.
    fn emit_block(&mut self, out: &mut BitSequence) -> Result<()>;
}

impl BlockGenerator for crate::xorshift::XorshiftState {
    fn block_width(&self) -> usize {
        64
    }

    fn emit_block(&mut self, out: &mut BitSequence) -> Result<()> {
        out.push_word(self.next_word(), 64);
        Ok(())
    }
}

/// BBS as a block generator, emitting its configured low-bit count.
pub struct BbsBlocks {
    pub state: crate::bbs::BbsState,
    pub lsb_bits: u32,
}

impl BlockGenerator for BbsBlocks {
    fn block_width(&self) -> usize {
        self.lsb_bits as usize
    }

    fn emit_block(&mut self, out: &mut BitSequence) -> Result<()> {
        let w = self.state.next_bits(self.lsb_bits);
        out.push_word(w, self.lsb_bits as usize);
        Ok(())
    }
}

impl BlockGenerator for CiprngV1 {
    fn block_width(&self) -> usize {
        self.state().len()
    }

    fn emit_block(&mut self, out: &mut BitSequence) -> Result<()> {
        let x = self.next_output()?;
        for b in x.as_slice() {
            out.push(*b);
        }
        Ok(())
    }
}

impl BlockGenerator for CiprngV2 {
    fn block_width(&self) -> usize {
        self.state().len()
    }

    fn emit_block(&mut self, out: &mut BitSequence) -> Result<()> {
        let x = self.next_block()?;
        for b in x.as_slice() {
            out.push(*b);
        }
        Ok(())
    }
}

impl BlockGenerator for FpgaCiprng {
    fn block_width(&self) -> usize {
        16
    }

    fn emit_block(&mut self, out: &mut BitSequence) -> Result<()> {
        let w = self.next_word()?;
        out.push_word(w as u64, 16);
        Ok(())
    }
}

/// Scripted words replayed verbatim as fixed-width blocks.
pub struct ScriptedBlocks {
    pub source: EntropySource,
    pub width: usize,
}

impl BlockGenerator for ScriptedBlocks {
    fn block_width(&self) -> usize {
        self.width
    }

    fn emit_block(&mut self, out: &mut BitSequence) -> Result<()> {
        out.push_word(self.source.next_word()?, self.width);
        Ok(())
    }
}

/// Concatenates successive output blocks and returns exactly `n` bits.
pub fn stream_bits<G: BlockGenerator + ?Sized>(generator: &mut G, n: usize) -> Result<BitSequence> {
    let mut out = BitSequence::with_capacity(n + generator.block_width());
    while out.len() < n {
        generator.emit_block(&mut out)?;
    }
    out.truncate(n);
    Ok(out)
}
