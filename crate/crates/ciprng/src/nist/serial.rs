//! Serial and approximate-entropy tests (SP 800-22 sections 2.11, 2.12).
//! Both count overlapping m-bit patterns with wraparound.

use crate::bits::BitSequence;
use crate::error::{Error, Result};

use super::special::igamc;

/// Counts of every overlapping `m`-bit pattern, the sequence treated as
/// circular. Returns a table of length `2^m`.
fn pattern_counts(s: &BitSequence, m: usize) -> Vec<u64> {
    debug_assert!((1..=24).contains(&m));
    let n = s.len();
    let mut counts = vec![0u64; 1 << m];
    let mask = (1usize << m) - 1;
    // Seed the window with the first m-1 bits.
    let mut window = 0usize;
    for i in 0..m - 1 {
        window = (window << 1) | s.get(i % n) as usize;
    }
    for i in m - 1..n + m - 1 {
        window = ((window << 1) | s.get(i % n) as usize) & mask;
        counts[window] += 1;
    }
    counts
}

/// psi-squared statistic for block length `m` (zero when `m == 0`).
fn psi_squared(s: &BitSequence, m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = s.len() as f64;
    let counts = pattern_counts(s, m);
    let sum_sq: f64 = counts.iter().map(|&c| (c as f64) * (c as f64)).sum();
    ((1u64 << m) as f64 / n) * sum_sq - n
}

fn check_length(test: &'static str, s: &BitSequence, m: usize) -> Result<()> {
    // The pattern statistics need n comfortably above 2^m; the usual
    // guidance is m < log2(n) - 2.
    let needed = 1usize << (m + 3);
    if s.len() < needed {
        return Err(Error::SequenceTooShort {
            test,
            needed,
            got: s.len(),
        });
    }
    Ok(())
}

/// Serial test: returns the two p-values (first and second difference).
pub fn serial(s: &BitSequence, m: usize) -> Result<(f64, f64)> {
    assert!(m >= 2, "serial test needs m >= 2");
    check_length("serial", s, m)?;
    let psi_m = psi_squared(s, m);
    let psi_m1 = psi_squared(s, m - 1);
    let psi_m2 = psi_squared(s, m.saturating_sub(2));
    let d1 = psi_m - psi_m1;
    let d2 = psi_m - 2.0 * psi_m1 + psi_m2;
    let p1 = igamc((1u64 << (m - 2)) as f64, d1 / 2.0);
    let p2 = igamc((1u64 << (m - 2)) as f64 / 2.0, d2 / 2.0);
    Ok((p1, p2))
}

/// Approximate entropy test with block length `m`.
pub fn approximate_entropy(s: &BitSequence, m: usize) -> Result<f64> {
    assert!(m >= 1, "approximate entropy needs m >= 1");
    check_length("approximate entropy", s, m + 1)?;
    let n = s.len() as f64;
    let phi = |mm: usize| -> f64 {
        pattern_counts(s, mm)
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let f = c as f64 / n;
                f * f.ln()
            })
            .sum()
    };
    let apen = phi(m) - phi(m + 1);
    let chi2 = 2.0 * n * (std::f64::consts::LN_2 - apen);
    Ok(igamc((1u64 << (m - 1)) as f64, chi2 / 2.0))
}
