//! A NIST SP 800-22 subset: monobit, block frequency, runs, longest run
//! of ones, cumulative sums, serial and approximate entropy.
//!
//! The remaining SP 800-22 tests (binary matrix rank, spectral,
//! template matching, universal, linear complexity, random excursions
//! and variant) are not implemented.

pub mod battery;
mod cusum;
mod freq;
mod serial;
pub mod special;

pub use battery::{
    min_pass_proportion, pt_uniformity, run_battery, run_battery_on, run_battery_on_with_jobs,
    TestReport, TestSummary, ALPHA, DEFAULT_BITS, DEFAULT_SEQUENCES, MIN_PT,
};
pub use cusum::{cumulative_sums, CusumMode};
pub use freq::{block_frequency, longest_run_of_ones, monobit, runs};
pub use serial::{approximate_entropy, serial};

use crate::bits::BitSequence;
use crate::error::Result;

/// The implemented tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestKind {
    Monobit,
    BlockFrequency,
    Runs,
    LongestRunOfOnes,
    CumulativeSums,
    Serial,
    ApproximateEntropy,
}

impl TestKind {
    pub const ALL: [TestKind; 7] = [
        TestKind::Monobit,
        TestKind::BlockFrequency,
        TestKind::Runs,
        TestKind::LongestRunOfOnes,
        TestKind::CumulativeSums,
        TestKind::Serial,
        TestKind::ApproximateEntropy,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TestKind::Monobit => "frequency (monobit)",
            TestKind::BlockFrequency => "block frequency",
            TestKind::Runs => "runs",
            TestKind::LongestRunOfOnes => "longest run of ones",
            TestKind::CumulativeSums => "cumulative sums",
            TestKind::Serial => "serial (m=10)",
            TestKind::ApproximateEntropy => "approximate entropy (m=10)",
        }
    }

    pub fn slug(&self) -> &'static str {
        match self {
            TestKind::Monobit => "monobit",
            TestKind::BlockFrequency => "block-frequency",
            TestKind::Runs => "runs",
            TestKind::LongestRunOfOnes => "longest-run",
            TestKind::CumulativeSums => "cusum",
            TestKind::Serial => "serial",
            TestKind::ApproximateEntropy => "approximate-entropy",
        }
    }

    pub fn from_slug(s: &str) -> Option<TestKind> {
        TestKind::ALL.iter().copied().find(|k| k.slug() == s)
    }
}

/// Tunable parameters for the block-shaped tests.
#[derive(Debug, Clone)]
pub struct TestParams {
    /// Block length for the block-frequency test; `None` picks
    /// `max(20, n/100)`.
    pub block_frequency_m: Option<usize>,
    /// Pattern length for the serial test.
    pub serial_m: usize,
    /// Pattern length for the approximate-entropy test.
    pub apen_m: usize,
}

impl Default for TestParams {
    fn default() -> Self {
        Self {
            block_frequency_m: None,
            serial_m: 10,
            apen_m: 10,
        }
    }
}

/// Outcome of one test on one sequence.
#[derive(Debug, Clone, Copy)]
pub struct TestOutcome {
    /// The reported p-value; for two-sided tests, the minimum of the pair.
    pub p_value: f64,
    /// The raw pair in test order (forward/backward, or first/second
    /// difference), when the test produces two p-values. Uniformity is
    /// judged per column; the minimum of a pair is not uniform.
    pub pair: Option<(f64, f64)>,
}

impl TestOutcome {
    fn single(p: f64) -> Self {
        Self {
            p_value: p,
            pair: None,
        }
    }

    fn pair(a: f64, b: f64) -> Self {
        Self {
            p_value: a.min(b),
            pair: Some((a, b)),
        }
    }
}

/// Runs one test on one sequence.
pub fn run_test(kind: TestKind, s: &BitSequence, params: &TestParams) -> Result<TestOutcome> {
    Ok(match kind {
        TestKind::Monobit => TestOutcome::single(monobit(s)?),
        TestKind::BlockFrequency => {
            let m = params
                .block_frequency_m
                .unwrap_or_else(|| (s.len() / 100).max(20));
            TestOutcome::single(block_frequency(s, m)?)
        }
        TestKind::Runs => TestOutcome::single(runs(s)?),
        TestKind::LongestRunOfOnes => TestOutcome::single(longest_run_of_ones(s)?),
        TestKind::CumulativeSums => {
            let f = cumulative_sums(s, CusumMode::Forward)?;
            let b = cumulative_sums(s, CusumMode::Backward)?;
            TestOutcome::pair(f, b)
        }
        TestKind::Serial => {
            let (p1, p2) = serial(s, params.serial_m)?;
            TestOutcome::pair(p1, p2)
        }
        TestKind::ApproximateEntropy => TestOutcome::single(approximate_entropy(s, params.apen_m)?),
    })
}
