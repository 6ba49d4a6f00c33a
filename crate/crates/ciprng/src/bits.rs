//! Plain bit sequences: the common currency between generators, the
//! statistical battery and the watermarking pipeline.

use std::fmt;

use crate::error::{Error, Result};

/// An ordered sequence of bits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitSequence {
    bits: Vec<bool>,
}

impl BitSequence {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            bits: Vec::with_capacity(n),
        }
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::MalformedHeader(format!(
                        "unexpected character {c:?} in bit string"
                    )))
                }
            }
        }
        Ok(Self { bits })
    }

    /// Takes the `width` low bits of `word`, most significant first.
    pub fn push_word(&mut self, word: u64, width: usize) {
        debug_assert!(width <= 64);
        for i in (0..width).rev() {
            self.bits.push((word >> i) & 1 == 1);
        }
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn truncate(&mut self, n: usize) {
        self.bits.truncate(n);
    }

    /// Reads the `width`-bit word starting at `offset`, most significant first.
    pub fn word_at(&self, offset: usize, width: usize) -> u64 {
        debug_assert!(width <= 64 && offset + width <= self.bits.len());
        let mut w = 0u64;
        for i in 0..width {
            w = (w << 1) | self.bits[offset + i] as u64;
        }
        w
    }

    /// Packs into bytes, most significant bit first, zero-padding the tail.
    pub fn to_bytes_msb(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.bits.len().div_ceil(8)];
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                out[i / 8] |= 0x80 >> (i % 8);
            }
        }
        out
    }

    pub fn to_hex(&self) -> String {
        self.to_bytes_msb()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromIterator<bool> for BitSequence {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_str_round_trip() {
        let s = BitSequence::from_bit_str("10100111101111110011").unwrap();
        assert_eq!(s.len(), 20);
        assert_eq!(s.to_string(), "10100111101111110011");
    }

    #[test]
    fn push_word_is_msb_first() {
        let mut s = BitSequence::default();
        s.push_word(0b10110, 5);
        assert_eq!(s.to_string(), "10110");
        assert_eq!(s.word_at(0, 5), 0b10110);
    }

    #[test]
    fn bytes_pack_msb_first() {
        let s = BitSequence::from_bit_str("1000000001").unwrap();
        assert_eq!(s.to_bytes_msb(), vec![0x80, 0x40]);
        assert_eq!(s.to_hex(), "8040");
    }

    #[test]
    fn rejects_garbage() {
        assert!(BitSequence::from_bit_str("10x1").is_err());
    }
}
