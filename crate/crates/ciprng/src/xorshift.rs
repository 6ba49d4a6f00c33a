//! 64-bit XORshift generator: three shift-xor steps per round.

use crate::error::{Error, Result};

/// Shift amounts for the three xorshift steps, each in `[1,63]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftTriple {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

/// The standard full-period triple used by the default profiles.
pub const DEFAULT_TRIPLE: ShiftTriple = ShiftTriple { a: 13, b: 7, c: 17 };

impl ShiftTriple {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self> {
        for s in [a, b, c] {
            if !(1..=63).contains(&s) {
                return Err(Error::InvalidShift(s));
            }
        }
        Ok(Self { a, b, c })
    }

    /// Register/wiring cost estimate for one 64-bit xorshift:
    /// `(64 - a) + (64 - b) + (64 - c)` logic elements.
    pub fn logic_elements(&self) -> u32 {
        192 - self.a - self.b - self.c
    }
}

/// A 64-bit XORshift generator. The state is never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorshiftState {
    x: u64,
    triple: ShiftTriple,
}

impl XorshiftState {
    /// Seeds the generator. Zero seeds are rejected: zero is a fixed point
    /// of the shift-xor map and would produce a constant stream.
    pub fn new(seed: u64, triple: ShiftTriple) -> Result<Self> {
        if seed == 0 {
            return Err(Error::ZeroSeed);
        }
        Ok(Self { x: seed, triple })
    }

    pub fn with_default_triple(seed: u64) -> Result<Self> {
        Self::new(seed, DEFAULT_TRIPLE)
    }

    pub fn state(&self) -> u64 {
        self.x
    }

    pub fn triple(&self) -> ShiftTriple {
        self.triple
    }

    /// One round: left shift-xor by `a`, right by `b`, left by `c`.
    /// Returns the new state.
    pub fn next_word(&mut self) -> u64 {
        let ShiftTriple { a, b, c } = self.triple;
        let mut x = self.x;
        x ^= x << a;
        x ^= x >> b;
        x ^= x << c;
        self.x = x;
        x
    }
}
