//! The fifteen SP 800-22 statistical tests.
//!
//! Each test consumes a packed bit sequence and yields one [`NistResult`]:
//! the representative p-value reported in table layouts (the arithmetic
//! mean for multi-part tests), the full decision p-value list, and the
//! pass flag at the configured significance level. Undersized inputs yield
//! a skipped-with-reason result instead of an error.

mod basic;
mod complexity;
mod excursions;
mod rank;
mod serial_entropy;
mod spectral;
mod templates;
mod universal;

use crate::bits::BitSequence;
use serde::Serialize;

/// Suite parameters. Block sizes default to the published recommendations
/// and adapt to the input length where the test definitions allow it.
#[derive(Debug, Clone, PartialEq)]
pub struct NistParams {
    pub alpha: f64,
    /// Block length of the frequency-within-block test; auto when `None`.
    pub block_frequency_m: Option<usize>,
    /// Non-overlapping template length.
    pub template_length: usize,
    /// Overlapping-template block length.
    pub overlapping_block_length: usize,
    /// Linear-complexity block length.
    pub linear_complexity_m: usize,
    /// Serial-test pattern length; auto when `None`.
    pub serial_m: Option<usize>,
    /// Approximate-entropy pattern length; auto when `None`.
    pub approximate_entropy_m: Option<usize>,
    /// Binary-matrix-rank matrix dimension.
    pub matrix_size: usize,
}

impl Default for NistParams {
    fn default() -> Self {
        NistParams {
            alpha: 0.01,
            block_frequency_m: None,
            template_length: 9,
            overlapping_block_length: 1032,
            linear_complexity_m: 500,
            serial_m: None,
            approximate_entropy_m: None,
            matrix_size: 32,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TestStatus {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NistResult {
    pub test_name: String,
    /// Representative p-value (mean over parts for multi-part tests).
    pub p_value: f64,
    /// Every decision p-value the test produced.
    pub p_values: Vec<f64>,
    /// True when every decision p-value clears the family-adjusted
    /// significance level (alpha divided by the number of parts, so a
    /// multi-part test keeps the same overall false-rejection rate as a
    /// single-statistic test).
    pub pass: bool,
    /// Reason the test was skipped (undersized input), if it was.
    pub skipped: Option<String>,
    /// Parameterization the test ran with.
    pub parameters: String,
}

impl NistResult {
    fn from_p_values(name: &str, p_values: Vec<f64>, alpha: f64, parameters: String) -> Self {
        debug_assert!(!p_values.is_empty());
        debug_assert!(p_values.iter().all(|p| (0.0..=1.0 + 1e-12).contains(p)), "{name}: {p_values:?}");
        let mean = p_values.iter().sum::<f64>() / p_values.len() as f64;
        let threshold = alpha / p_values.len() as f64;
        let pass = p_values.iter().all(|&p| p >= threshold);
        NistResult {
            test_name: name.to_string(),
            p_value: mean,
            p_values,
            pass,
            skipped: None,
            parameters,
        }
    }

    fn skipped(name: &str, reason: String) -> Self {
        NistResult {
            test_name: name.to_string(),
            p_value: f64::NAN,
            p_values: Vec::new(),
            pass: false,
            skipped: Some(reason),
            parameters: String::new(),
        }
    }

    pub fn status(&self) -> TestStatus {
        if self.skipped.is_some() {
            TestStatus::Skipped
        } else if self.pass {
            TestStatus::Pass
        } else {
            TestStatus::Fail
        }
    }

    /// Smallest decision p-value (NaN when skipped).
    pub fn min_p(&self) -> f64 {
        self.p_values.iter().copied().fold(f64::NAN, f64::min)
    }
}

pub(crate) fn erfc(x: f64) -> f64 {
    statrs::function::erf::erfc(x)
}

/// Regularized upper incomplete gamma Q(a, x).
pub(crate) fn igamc(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    statrs::function::gamma::gamma_ur(a, x)
}

/// Standard normal CDF.
pub(crate) fn phi(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Runs all fifteen tests in table order.
pub fn nist_suite(bits: &BitSequence, params: &NistParams) -> Vec<NistResult> {
    vec![
        basic::monobit(bits, params),
        basic::frequency_within_block(bits, params),
        basic::runs(bits, params),
        basic::longest_run_of_ones(bits, params),
        rank::binary_matrix_rank(bits, params),
        spectral::dft(bits, params),
        templates::non_overlapping(bits, params),
        templates::overlapping(bits, params),
        universal::maurers_universal(bits, params),
        complexity::linear_complexity(bits, params),
        serial_entropy::serial(bits, params),
        serial_entropy::approximate_entropy(bits, params),
        basic::cumulative_sums(bits, params),
        excursions::random_excursions(bits, params),
        excursions::random_excursions_variant(bits, params),
    ]
}
