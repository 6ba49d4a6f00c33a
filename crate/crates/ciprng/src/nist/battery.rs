//! Battery driver: runs every implemented test over a set of sequences
//! and aggregates pass proportions and p-value uniformity.

use std::fmt;

use crate::bits::BitSequence;
use crate::engines::{stream_bits, BlockGenerator};
use crate::error::{Error, Result};

use super::special::igamc;
use super::TestKind;

/// Significance level for the per-sequence pass verdict.
pub const ALPHA: f64 = 0.01;
/// Uniformity floor below which a test's p-values are declared non-uniform.
pub const MIN_PT: f64 = 0.0001;
/// Default battery shape: sequences x bits per sequence.
pub const DEFAULT_SEQUENCES: usize = 100;
pub const DEFAULT_BITS: usize = 20_000;

/// Chi-square uniformity statistic over ten equal p-value bins, mapped
/// to a p-value. Needs at least ten samples.
pub fn pt_uniformity(p_values: &[f64]) -> Result<f64> {
    if p_values.len() < 10 {
        return Err(Error::TooFewPValues {
            needed: 10,
            got: p_values.len(),
        });
    }
    let mut bins = [0u64; 10];
    for &p in p_values {
        debug_assert!((0.0..=1.0).contains(&p));
        let i = ((p * 10.0) as usize).min(9);
        bins[i] += 1;
    }
    let expected = p_values.len() as f64 / 10.0;
    let chi2: f64 = bins
        .iter()
        .map(|&c| (c as f64 - expected) * (c as f64 - expected) / expected)
        .sum();
    Ok(igamc(4.5, chi2 / 2.0))
}

/// Aggregated outcome for one test across all analyzed sequences.
#[derive(Debug, Clone)]
pub struct TestSummary {
    pub kind: TestKind,
    /// Reported p-value per sequence (minimum of the pair for two-sided
    /// tests); drives the pass proportion.
    pub p_values: Vec<f64>,
    /// Raw p-value columns for tests that produce a pair, in sequence
    /// order. P_T is computed per column, since the minimum of a pair is
    /// not uniform even under the null.
    pub raw_columns: Option<(Vec<f64>, Vec<f64>)>,
    pub pass_proportion: f64,
    /// Uniformity p-value; for paired tests, the smaller of the two
    /// per-column values.
    pub pt: f64,
}

impl TestSummary {
    pub fn passed(&self, min_proportion: f64) -> bool {
        self.pass_proportion >= min_proportion && self.pt > MIN_PT
    }
}

/// Full battery report.
#[derive(Debug, Clone)]
pub struct TestReport {
    pub sequences: usize,
    pub bits_per_sequence: usize,
    pub summaries: Vec<TestSummary>,
    /// Pass-proportion floor used for the per-test verdict.
    pub min_proportion: f64,
}

impl TestReport {
    pub fn tests_passed(&self) -> usize {
        self.summaries
            .iter()
            .filter(|s| s.passed(self.min_proportion))
            .count()
    }

    pub fn summary(&self, kind: TestKind) -> Option<&TestSummary> {
        self.summaries.iter().find(|s| s.kind == kind)
    }

    /// Line-oriented machine format: one `name p_T proportion verdict`
    /// record per test.
    pub fn machine_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.summaries {
            let verdict = if s.passed(self.min_proportion) {
                "PASS"
            } else {
                "FAIL"
            };
            out.push_str(&format!(
                "{} pt={:.6} proportion={:.4} verdict={}\n",
                s.kind.slug(),
                s.pt,
                s.pass_proportion,
                verdict
            ));
        }
        out
    }
}

impl fmt::Display for TestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "battery: {} sequences x {} bits, alpha {}, pass floor {:.2}",
            self.sequences, self.bits_per_sequence, ALPHA, self.min_proportion
        )?;
        writeln!(
            f,
            "{:<28} {:>10} {:>12} {:>8}",
            "test", "P_T", "proportion", "verdict"
        )?;
        for s in &self.summaries {
            writeln!(
                f,
                "{:<28} {:>10.6} {:>12.4} {:>8}",
                s.kind.name(),
                s.pt,
                s.pass_proportion,
                if s.passed(self.min_proportion) {
                    "PASS"
                } else {
                    "FAIL"
                }
            )?;
        }
        write!(f, "passed {}/{}", self.tests_passed(), self.summaries.len())
    }
}

/// Pass-proportion floor: the usual three-sigma binomial bound around
/// `1 - alpha`, floored to two decimals so 96 passing sequences out of
/// 100 count as a pass.
pub fn min_pass_proportion(sequences: usize) -> f64 {
    let p = 1.0 - ALPHA;
    let bound = (p - 3.0 * (p * ALPHA / sequences as f64).sqrt()).max(0.0);
    (bound * 100.0).floor() / 100.0
}

/// Runs every implemented test over `sequences` sequences of
/// `bits_per_sequence` bits drawn from `generator` as one contiguous
/// stream split into consecutive segments.
pub fn run_battery<G: BlockGenerator + ?Sized>(
    generator: &mut G,
    sequences: usize,
    bits_per_sequence: usize,
) -> Result<TestReport> {
    assert!(sequences >= 1 && bits_per_sequence >= 1);
    let seqs: Vec<BitSequence> = (0..sequences)
        .map(|_| stream_bits(generator, bits_per_sequence))
        .collect::<Result<_>>()?;
    run_battery_on(&seqs)
}

/// Same battery over pre-built sequences.
pub fn run_battery_on(seqs: &[BitSequence]) -> Result<TestReport> {
    run_battery_on_with_jobs(seqs, 1)
}

/// Battery over pre-built sequences, analyzing them on up to `jobs`
/// worker threads. Per-sequence analysis is pure; only the final
/// aggregation joins the workers.
pub fn run_battery_on_with_jobs(seqs: &[BitSequence], jobs: usize) -> Result<TestReport> {
    assert!(!seqs.is_empty());
    let bits_per_sequence = seqs[0].len();
    let params = super::TestParams::default();
    let jobs = jobs.clamp(1, seqs.len());
    let chunk = seqs.len().div_ceil(jobs);

    type SeqOutcomes = Result<Vec<super::TestOutcome>>;
    let mut per_seq: Vec<SeqOutcomes> = Vec::with_capacity(seqs.len());
    per_seq.resize_with(seqs.len(), || Ok(Vec::new()));

    std::thread::scope(|scope| {
        for (in_chunk, out_chunk) in seqs.chunks(chunk).zip(per_seq.chunks_mut(chunk)) {
            let params = &params;
            scope.spawn(move || {
                for (s, slot) in in_chunk.iter().zip(out_chunk.iter_mut()) {
                    *slot = TestKind::ALL
                        .iter()
                        .map(|&k| super::run_test(k, s, params))
                        .collect();
                }
            });
        }
    });

    let per_seq: Vec<Vec<super::TestOutcome>> = per_seq.into_iter().collect::<Result<_>>()?;

    let mut summaries = Vec::new();
    for (i, kind) in TestKind::ALL.into_iter().enumerate() {
        let mut p_values = Vec::with_capacity(seqs.len());
        let mut col1 = Vec::with_capacity(seqs.len());
        let mut col2 = Vec::with_capacity(seqs.len());
        let mut has_pair = false;
        for outcomes in &per_seq {
            p_values.push(outcomes[i].p_value);
            if let Some((a, b)) = outcomes[i].pair {
                has_pair = true;
                col1.push(a);
                col2.push(b);
            }
        }
        let passes = p_values.iter().filter(|&&p| p >= ALPHA).count();
        let pt = if has_pair {
            let pt1 = pt_uniformity(&col1).unwrap_or(f64::NAN);
            let pt2 = pt_uniformity(&col2).unwrap_or(f64::NAN);
            pt1.min(pt2)
        } else {
            pt_uniformity(&p_values).unwrap_or(f64::NAN)
        };
        summaries.push(TestSummary {
            kind,
            pass_proportion: passes as f64 / seqs.len() as f64,
            pt,
            p_values,
            raw_columns: has_pair.then_some((col1, col2)),
        });
    }
    Ok(TestReport {
        sequences: seqs.len(),
        bits_per_sequence,
        summaries,
        min_proportion: min_pass_proportion(seqs.len()),
    })
}
