//! The combined 16-bit generator: two 64-bit XORshifts feed four 32-bit
//! words whose 2-bit chunks toggle four nibble masks, a BBS bit per
//! nibble gates one extra toggle, and the state updates by XOR.

use crate::bbs::{BbsState, DEFAULT_MODULUS};
use crate::error::Result;
use crate::source::EntropySource;
use crate::xorshift::{ShiftTriple, XorshiftState, DEFAULT_TRIPLE};

/// Seed material for the combined generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpgaProfile {
    pub xs1_seed: u64,
    pub xs2_seed: u64,
    pub triple: ShiftTriple,
    pub bbs_state: u32,
    pub bbs_modulus: u32,
    pub z0: u16,
}

impl Default for FpgaProfile {
    fn default() -> Self {
        Self {
            xs1_seed: 0x0123_4567_89AB_CDEF,
            xs2_seed: 0xFEDC_BA98_7654_3210,
            triple: DEFAULT_TRIPLE,
            bbs_state: 2,
            bbs_modulus: DEFAULT_MODULUS,
            z0: 0,
        }
    }
}

/// Per-round draws from the three sub-generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceWords {
    pub x: u64,
    pub y: u64,
    pub t: u8,
}

#[derive(Debug, Clone)]
pub struct FpgaCiprng {
    z: u16,
    xs1: EntropySource,
    xs2: EntropySource,
    bbs: EntropySource,
}

impl FpgaCiprng {
    pub fn from_profile(p: &FpgaProfile) -> Result<Self> {
        Ok(Self {
            z: p.z0,
            xs1: XorshiftState::new(p.xs1_seed, p.triple)?.into(),
            xs2: XorshiftState::new(p.xs2_seed, p.triple)?.into(),
            bbs: EntropySource::Bbs {
                state: BbsState::new(p.bbs_state, p.bbs_modulus)?,
                lsb_bits: 4,
            },
        })
    }

    /// Builds from arbitrary word sources; scripted sources make every
    /// round reproducible from explicit integers.
    pub fn from_sources(
        z0: u16,
        xs1: EntropySource,
        xs2: EntropySource,
        bbs: EntropySource,
    ) -> Self {
        Self {
            z: z0,
            xs1,
            xs2,
            bbs,
        }
    }

    pub fn state(&self) -> u16 {
        self.z
    }

    /// Phase one of a round: run the three sub-generators.
    pub fn draw_sources(&mut self) -> Result<SourceWords> {
        let x = self.xs1.next_word()?;
        let y = self.xs2.next_word()?;
        let t = (self.bbs.next_word()? & 0xF) as u8;
        Ok(SourceWords { x, y, t })
    }

    /// Phase two of a round: combine the drawn words into the state.
    /// This is the loop form: four mask accumulators built side by side,
    /// then the gated extra toggles, then one XOR into `z`.
    pub fn combine(&mut self, w: SourceWords) -> u16 {
        let z1 = (w.x & 0xffff_ffff) as u32;
        let z2 = ((w.x >> 32) & 0xffff_ffff) as u32;
        let z3 = (w.y & 0xffff_ffff) as u32;
        let z4 = ((w.y >> 32) & 0xffff_ffff) as u32;
        let (t1, t2, t3, t4) = (w.t & 1, w.t & 2, w.t & 4, w.t & 8);

        let mut w1: u16 = 0;
        let mut w2: u16 = 0;
        let mut w3: u16 = 0;
        let mut w4: u16 = 0;
        for i in 0..12 {
            w1 ^= 1 << ((z1 >> (i * 2)) & 3);
            w2 ^= 1 << ((z2 >> (i * 2)) & 3);
            w3 ^= 1 << ((z3 >> (i * 2)) & 3);
            w4 ^= 1 << ((z4 >> (i * 2)) & 3);
        }
        if t1 != 0 {
            w1 ^= 1 << ((z1 >> 24) & 3);
        }
        if t2 != 0 {
            w2 ^= 1 << ((z2 >> 24) & 3);
        }
        if t3 != 0 {
            w3 ^= 1 << ((z3 >> 24) & 3);
        }
        if t4 != 0 {
            w4 ^= 1 << ((z4 >> 24) & 3);
        }
        self.z ^= w1 ^ (w2 << 4) ^ (w3 << 8) ^ (w4 << 12);
        self.z
    }

    /// One full round; returns the new 16-bit state.
    pub fn next_word(&mut self) -> Result<u16> {
        let words = self.draw_sources()?;
        Ok(self.combine(words))
    }
}

/// Folds the twelve 2-bit chunks of `z_word` (plus the gated thirteenth
/// at bits 24..26 when `t_bit` is set) into a 4-bit toggle mask.
pub fn derive_nibble_mask(z_word: u32, t_bit: bool) -> u8 {
    let mut mask = 0u8;
    for i in 0..12 {
        mask ^= 1 << ((z_word >> (i * 2)) & 3);
    }
    if t_bit {
        mask ^= 1 << ((z_word >> 24) & 3);
    }
    mask & 0xF
}

/// Mask form of one round: assemble the whole 16-bit update word
/// `d = w1 | w2<<4 | w3<<8 | w4<<12` from the chunk stream and apply
/// `z ^ d`. Algebraically the same map as [`FpgaCiprng::combine`],
/// kept as an independent route for equivalence checks.
pub fn mask_form_round(z: u16, w: SourceWords) -> u16 {
    let words = [
        (w.x & 0xffff_ffff) as u32,
        ((w.x >> 32) & 0xffff_ffff) as u32,
        (w.y & 0xffff_ffff) as u32,
        ((w.y >> 32) & 0xffff_ffff) as u32,
    ];
    let mut d: u16 = 0;
    for (j, &zw) in words.iter().enumerate() {
        let t_bit = w.t >> j & 1 == 1;
        d ^= (derive_nibble_mask(zw, t_bit) as u16) << (4 * j);
    }
    z ^ d
}
