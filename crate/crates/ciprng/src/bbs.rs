//! Blum Blum Shub: repeated modular squaring against a Blum modulus,
//! emitting a few low bits per step.

use crate::error::{Error, Result};

/// Default 32-bit Blum modulus: 65519 * 65479, both primes congruent
/// to 3 mod 4. Used by the stock generation profiles.
pub const DEFAULT_MODULUS: u32 = 4_290_118_601;

/// BBS state: `b` evolves by squaring mod `m`. The square is taken in
/// 64-bit arithmetic so any 32-bit modulus is safe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BbsState {
    b: u32,
    m: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Checks that `m = p*q` for two distinct primes with `p ≡ q ≡ 3 (mod 4)`.
fn check_blum(m: u32) -> Result<()> {
    let mut n = m;
    let mut factors = Vec::new();
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 && factors.len() <= 2 {
        while n.is_multiple_of(d) {
            factors.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    if factors.len() != 2 || factors[0] == factors[1] {
        return Err(Error::InvalidBlumModulus(
            m as u64,
            "not a product of two distinct primes",
        ));
    }
    for p in factors {
        if !is_prime(p) || p % 4 != 3 {
            return Err(Error::InvalidBlumModulus(
                m as u64,
                "factor not a prime congruent to 3 mod 4",
            ));
        }
    }
    Ok(())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl BbsState {
    /// Builds a generator from an explicit state. The modulus must be a
    /// Blum integer and `b` must satisfy `1 < b < m` with `gcd(b,m) = 1`;
    /// 0 and 1 are fixed points of squaring and are rejected.
    pub fn new(b: u32, m: u32) -> Result<Self> {
        check_blum(m)?;
        if b <= 1 || b >= m {
            return Err(Error::InvalidBbsSeed {
                seed: b as u64,
                modulus: m as u64,
                reason: "state must lie strictly between 1 and m",
            });
        }
        if gcd(b as u64, m as u64) != 1 {
            return Err(Error::InvalidBbsSeed {
                seed: b as u64,
                modulus: m as u64,
                reason: "state shares a factor with the modulus",
            });
        }
        Ok(Self { b, m })
    }

    /// Derives a valid state from an arbitrary 64-bit seed word: reduce
    /// modulo `m`, clamp up to 2, and walk forward until coprime with
    /// `m`. A seed already naming a valid state is used as is.
    pub fn from_seed(seed: u64, m: u32) -> Result<Self> {
        check_blum(m)?;
        let mut b = (seed % m as u64) as u32;
        if b < 2 {
            b = 2;
        }
        while gcd(b as u64, m as u64) != 1 {
            b = if b + 1 >= m { 2 } else { b + 1 };
        }
        Self::new(b, m)
    }

    pub fn state(&self) -> u32 {
        self.b
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    /// One squaring step; returns the `k` low bits of the new state.
    pub fn next_bits(&mut self, k: u32) -> u64 {
        debug_assert!((1..=32).contains(&k));
        let sq = (self.b as u64) * (self.b as u64);
        self.b = (sq % self.m as u64) as u32;
        self.b as u64 & ((1u64 << k) - 1)
    }
}
