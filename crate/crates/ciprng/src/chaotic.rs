//! Single-step chaotic iterations: a Boolean state vector of which one
//! strategy-selected component is negated per step.

use std::fmt;

use crate::bits::BitSequence;
use crate::error::{Error, Result};

/// The N-component Boolean state. Components are 1-indexed, and component
/// 1 is the most significant bit when the state is rendered as a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanStateVector {
    bits: Vec<bool>,
}

impl BooleanStateVector {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyState);
        }
        Ok(Self { bits })
    }

    /// Builds an N-bit state from the low `n` bits of `word`, component 1
    /// taking the most significant of those bits.
    pub fn from_word(word: u64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyState);
        }
        let bits = (0..n).map(|i| (word >> (n - 1 - i)) & 1 == 1).collect();
        Ok(Self { bits })
    }

    pub fn from_bit_str(s: &str) -> Result<Self> {
        Self::new(BitSequence::from_bit_str(s)?.as_slice().to_vec())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Always false: construction requires at least one component.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Component access, 1-indexed.
    pub fn component(&self, position: usize) -> Result<bool> {
        self.check(position)?;
        Ok(self.bits[position - 1])
    }

    fn check(&self, position: usize) -> Result<()> {
        if position < 1 || position > self.bits.len() {
            return Err(Error::PositionOutOfRange {
                position,
                n: self.bits.len(),
            });
        }
        Ok(())
    }

    pub fn hamming_weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn to_bit_sequence(&self) -> BitSequence {
        BitSequence::new(self.bits.clone())
    }

    /// Negates the selected component in place.
    pub fn negate(&mut self, position: usize) -> Result<()> {
        self.check(position)?;
        self.bits[position - 1] = !self.bits[position - 1];
        Ok(())
    }
}

impl fmt::Display for BooleanStateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One strategy element: a component index in `[1,N]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrategyElement(pub usize);

/// One chaotic-iteration step with the vectorial negation as iteration
/// function: returns `x` with exactly the `s`-th component negated.
pub fn ci_step(x: &BooleanStateVector, s: StrategyElement) -> Result<BooleanStateVector> {
    let mut next = x.clone();
    next.negate(s.0)?;
    Ok(next)
}

/// The integer form of the same iteration when the strategy is a whole
/// mask per step: `x^{n+1} = x^n xor s^n`.
pub fn xor_ci_step(x: u64, s_mask: u64) -> u64 {
    x ^ s_mask
}
