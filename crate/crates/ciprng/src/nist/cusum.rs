//! Cumulative sums test, SP 800-22 section 2.13. Both scan directions.

use crate::bits::BitSequence;
use crate::error::{Error, Result};

use super::special::normal_cdf;

pub const CUSUM_MIN_BITS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CusumMode {
    Forward,
    Backward,
}

/// Cumulative sums p-value for one scan direction.
pub fn cumulative_sums(s: &BitSequence, mode: CusumMode) -> Result<f64> {
    let n = s.len();
    if n < CUSUM_MIN_BITS {
        return Err(Error::SequenceTooShort {
            test: "cumulative sums",
            needed: CUSUM_MIN_BITS,
            got: n,
        });
    }
    let mut z: i64 = 0;
    let mut sum: i64 = 0;
    let mut step = |bit: bool| {
        sum += if bit { 1 } else { -1 };
        z = z.max(sum.abs());
    };
    match mode {
        CusumMode::Forward => (0..n).for_each(|i| step(s.get(i))),
        CusumMode::Backward => (0..n).rev().for_each(|i| step(s.get(i))),
    }
    let z = z as f64;
    let n = n as f64;
    let sqrt_n = n.sqrt();

    let lo1 = ((-n / z + 1.0) / 4.0).floor() as i64;
    let hi = ((n / z - 1.0) / 4.0).floor() as i64;
    let mut sum1 = 0.0;
    for k in lo1..=hi {
        let k = k as f64;
        sum1 += normal_cdf((4.0 * k + 1.0) * z / sqrt_n) - normal_cdf((4.0 * k - 1.0) * z / sqrt_n);
    }
    let lo2 = ((-n / z - 3.0) / 4.0).floor() as i64;
    let mut sum2 = 0.0;
    for k in lo2..=hi {
        let k = k as f64;
        sum2 += normal_cdf((4.0 * k + 3.0) * z / sqrt_n) - normal_cdf((4.0 * k + 1.0) * z / sqrt_n);
    }
    Ok((1.0 - sum1 + sum2).clamp(0.0, 1.0))
}
