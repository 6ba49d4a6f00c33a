//! Frequency-family tests: monobit, frequency within a block, runs and
//! longest run of ones in a block. SP 800-22 sections 2.1 through 2.4.

use crate::bits::BitSequence;
use crate::error::{Error, Result};

use super::special::{erfc, igamc};

pub const MONOBIT_MIN_BITS: usize = 100;

/// Frequency (monobit) test.
pub fn monobit(s: &BitSequence) -> Result<f64> {
    let n = s.len();
    if n < MONOBIT_MIN_BITS {
        return Err(Error::SequenceTooShort {
            test: "monobit",
            needed: MONOBIT_MIN_BITS,
            got: n,
        });
    }
    let sum: i64 = s.iter().map(|b| if b { 1i64 } else { -1 }).sum();
    let s_obs = (sum.abs() as f64) / (n as f64).sqrt();
    Ok(erfc(s_obs / std::f64::consts::SQRT_2))
}

/// Frequency test within a block, block length `m`.
pub fn block_frequency(s: &BitSequence, m: usize) -> Result<f64> {
    let n = s.len();
    if m == 0 || n < m {
        return Err(Error::SequenceTooShort {
            test: "block frequency",
            needed: m.max(1),
            got: n,
        });
    }
    let blocks = n / m;
    let mut chi2 = 0.0;
    for i in 0..blocks {
        let ones = (0..m).filter(|&j| s.get(i * m + j)).count();
        let pi = ones as f64 / m as f64;
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * m as f64;
    Ok(igamc(blocks as f64 / 2.0, chi2 / 2.0))
}

/// Runs test. Returns p = 0 when the monobit prerequisite fails, per the
/// reference procedure.
pub fn runs(s: &BitSequence) -> Result<f64> {
    let n = s.len();
    if n < MONOBIT_MIN_BITS {
        return Err(Error::SequenceTooShort {
            test: "runs",
            needed: MONOBIT_MIN_BITS,
            got: n,
        });
    }
    let pi = s.ones() as f64 / n as f64;
    let tau = 2.0 / (n as f64).sqrt();
    if (pi - 0.5).abs() >= tau {
        return Ok(0.0);
    }
    let mut v = 1u64;
    for k in 0..n - 1 {
        if s.get(k) != s.get(k + 1) {
            v += 1;
        }
    }
    let nf = n as f64;
    let num = (v as f64 - 2.0 * nf * pi * (1.0 - pi)).abs();
    let den = 2.0 * (2.0 * nf).sqrt() * pi * (1.0 - pi);
    Ok(erfc(num / den))
}

pub const LONGEST_RUN_MIN_BITS: usize = 128;

struct LongestRunRegime {
    block: usize,
    categories: usize,
    /// Lowest run length mapped to category 0; runs at or above
    /// `floor + categories - 1` map to the last category.
    floor: usize,
    probs: &'static [f64],
}

fn longest_run_regime(n: usize) -> Result<LongestRunRegime> {
    if n < LONGEST_RUN_MIN_BITS {
        return Err(Error::SequenceTooShort {
            test: "longest run of ones",
            needed: LONGEST_RUN_MIN_BITS,
            got: n,
        });
    }
    Ok(if n < 6272 {
        LongestRunRegime {
            block: 8,
            categories: 4,
            floor: 1,
            probs: &[0.2148, 0.3672, 0.2305, 0.1875],
        }
    } else if n < 750_000 {
        LongestRunRegime {
            block: 128,
            categories: 6,
            floor: 4,
            probs: &[0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124],
        }
    } else {
        LongestRunRegime {
            block: 10_000,
            categories: 7,
            floor: 10,
            probs: &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727],
        }
    })
}

/// Longest run of ones in a block.
pub fn longest_run_of_ones(s: &BitSequence) -> Result<f64> {
    let n = s.len();
    let regime = longest_run_regime(n)?;
    let blocks = n / regime.block;
    let mut counts = vec![0u64; regime.categories];
    for i in 0..blocks {
        let mut longest = 0usize;
        let mut run = 0usize;
        for j in 0..regime.block {
            if s.get(i * regime.block + j) {
                run += 1;
                longest = longest.max(run);
            } else {
                run = 0;
            }
        }
        let cat = longest.clamp(regime.floor, regime.floor + regime.categories - 1) - regime.floor;
        counts[cat] += 1;
    }
    let nf = blocks as f64;
    let chi2: f64 = counts
        .iter()
        .zip(regime.probs)
        .map(|(&c, &p)| {
            let e = nf * p;
            (c as f64 - e) * (c as f64 - e) / e
        })
        .sum();
    Ok(igamc((regime.categories - 1) as f64 / 2.0, chi2 / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-6;

    const SAMPLE_100: &str = "11001001000011111101101010100010001000010110100011\
                              00001000110100110001001100011001100010100010111000";

    fn seq(s: &str) -> BitSequence {
        BitSequence::from_bit_str(s).unwrap()
    }

    #[test]
    fn monobit_reference_examples() {
        // Worked examples from the SP 800-22 test descriptions. The
        // 10-bit case bypasses the length floor via the raw formula.
        let s = seq("1011010101");
        let sum: i64 = s.iter().map(|b| if b { 1i64 } else { -1 }).sum();
        let p = erfc((sum.abs() as f64 / (s.len() as f64).sqrt()) / std::f64::consts::SQRT_2);
        assert!((p - 0.527089).abs() < EPS);

        let p = monobit(&seq(SAMPLE_100)).unwrap();
        assert!((p - 0.109599).abs() < EPS);
    }

    #[test]
    fn monobit_balanced_is_one() {
        let s: BitSequence = (0..200).map(|i| i % 2 == 0).collect();
        assert_eq!(monobit(&s).unwrap(), 1.0);
    }

    #[test]
    fn monobit_degenerate_tail() {
        let s: BitSequence = (0..100).map(|_| false).collect();
        let p = monobit(&s).unwrap();
        assert!(p < 1e-20);
        assert!((p - 1.5239706048321186e-23).abs() < 1e-27);
    }

    #[test]
    fn monobit_too_short() {
        let s: BitSequence = (0..99).map(|_| true).collect();
        match monobit(&s) {
            Err(Error::SequenceTooShort { needed, .. }) => assert_eq!(needed, 100),
            other => panic!("expected length error, got {other:?}"),
        }
    }

    #[test]
    fn block_frequency_reference_examples() {
        let p = block_frequency(&seq("0110011010"), 3).unwrap();
        assert!((p - 0.801252).abs() < EPS);
        let p = block_frequency(&seq(SAMPLE_100), 10).unwrap();
        assert!((p - 0.706438).abs() < EPS);
    }

    #[test]
    fn runs_reference_examples() {
        // 10-bit worked example, raw formula (below the length floor).
        let s = seq("1001101011");
        let n = s.len() as f64;
        let pi = s.ones() as f64 / n;
        let mut v = 1u64;
        for k in 0..s.len() - 1 {
            if s.get(k) != s.get(k + 1) {
                v += 1;
            }
        }
        let p = erfc(
            (v as f64 - 2.0 * n * pi * (1.0 - pi)).abs()
                / (2.0 * (2.0 * n).sqrt() * pi * (1.0 - pi)),
        );
        assert!((p - 0.147232).abs() < EPS);

        let p = runs(&seq(SAMPLE_100)).unwrap();
        assert!((p - 0.500798).abs() < EPS);
    }

    #[test]
    fn runs_alternating_fails_hard() {
        let s: BitSequence = (0..1000).map(|i| i % 2 == 0).collect();
        assert!(runs(&s).unwrap() < 1e-12);
    }

    #[test]
    fn longest_run_reference_example() {
        let s = seq("11001100000101010110110001001100111000000000001001\
                     00110101010001000100111101011010000000110101111100\
                     1100111001101101100010110010");
        assert_eq!(s.len(), 128);
        let p = longest_run_of_ones(&s).unwrap();
        assert!((p - 0.180598).abs() < EPS);
    }
}
