//! Challenge-response evaluation and PUF quality statistics.

mod evaluator;
mod experiments;
mod latency;
mod scan;

pub use evaluator::{evaluate, LatentSegment};
pub use scan::{scan_chip_population, scan_device_responses};
pub use experiments::{
    aging_experiment, auth_rates, authenticate, evaluation_time, intra_inter_distributions,
    retention_emulation, temperature_sweep, AgingReport, AuthReport, PufTimingKind, PufVariant,
    RetentionOutcome, TemperaturePoint,
};
pub use latency::LatencyPufSegment;

use crate::error::SimError;
use crate::model::{segment_addresses, Address, Segment, ValidatedConfig};
use crate::primitives::PrimitiveTag;
use serde::{Deserialize, Serialize};

/// A challenge is the address of a memory segment plus the primitive used to
/// evaluate it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Challenge {
    pub segment_start: Address,
    pub segment_bytes: u64,
    pub primitive: PrimitiveTag,
}

impl Challenge {
    pub fn new(segment_start: Address, segment_bytes: u64, primitive: PrimitiveTag) -> Self {
        Challenge { segment_start, segment_bytes, primitive }
    }

    /// Challenge over the `index`-th segment of the device.
    pub fn nth_segment(
        cfg: &ValidatedConfig,
        index: usize,
        primitive: PrimitiveTag,
    ) -> Result<Challenge, SimError> {
        let rows_per_segment =
            (8192 / cfg.geometry.row_size_bytes).max(1) as usize;
        let start = cfg.geometry.row_address(index * rows_per_segment);
        Ok(Challenge {
            segment_start: start,
            segment_bytes: rows_per_segment as u64 * cfg.geometry.row_size_bytes,
            primitive,
        })
    }

    pub fn segment(&self, cfg: &ValidatedConfig) -> Result<Segment, SimError> {
        segment_addresses(&self.segment_start, self.segment_bytes, &cfg.geometry)
    }
}

/// The set of unpredictable bit positions produced by one evaluation:
/// positions whose generated bit is the minority '0' value under the
/// all-'1' design bias. Strictly increasing, all below the segment size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct PufResponse {
    positions: Vec<u32>,
}

impl PufResponse {
    /// Builds from a sorted, strictly increasing position list.
    pub fn from_sorted(positions: Vec<u32>) -> Self {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]), "positions must be sorted");
        PufResponse { positions }
    }

    pub fn from_unsorted(mut positions: Vec<u32>) -> Self {
        positions.sort_unstable();
        positions.dedup();
        PufResponse { positions }
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Response filter: evaluate `reads` times and keep the positions present in
/// at least `keep_threshold * reads` of them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterPolicy {
    pub reads: usize,
    pub keep_threshold: f64,
}

impl FilterPolicy {
    pub fn single() -> Self {
        FilterPolicy { reads: 1, keep_threshold: 1.0 }
    }

    pub fn conservative() -> Self {
        FilterPolicy { reads: 10, keep_threshold: 0.9 }
    }

    /// Strict enrollment filter: keep only positions present in every read,
    /// so the stored reference is the positions a single probe read will
    /// reliably reproduce.
    pub fn enrollment() -> Self {
        FilterPolicy { reads: 10, keep_threshold: 1.0 }
    }

    /// Minimum occurrence count a position needs to be kept.
    pub fn min_count(&self) -> usize {
        ((self.keep_threshold * self.reads as f64) - 1e-9).ceil().max(1.0) as usize
    }
}

/// Jaccard index |a intersect b| / |a union b|.
///
/// Two empty responses are indistinguishable, hence fully similar (1.0);
/// exactly one empty response shares nothing (0.0).
pub fn jaccard(a: &PufResponse, b: &PufResponse) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let (mut i, mut j, mut inter) = (0usize, 0usize, 0usize);
    let (pa, pb) = (a.positions(), b.positions());
    while i < pa.len() && j < pb.len() {
        match pa[i].cmp(&pb[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                inter += 1;
                i += 1;
                j += 1;
            }
        }
    }
    let union = pa.len() + pb.len() - inter;
    inter as f64 / union as f64
}

/// Intra/inter Jaccard distributions of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JaccardReport {
    pub intra: Vec<f64>,
    pub inter: Vec<f64>,
    pub pair_count: usize,
}

impl JaccardReport {
    pub fn median_intra(&self) -> f64 {
        median(&self.intra)
    }

    pub fn median_inter(&self) -> f64 {
        median(&self.inter)
    }

    pub fn intra_iqr(&self) -> f64 {
        iqr(&self.intra)
    }
}

pub(crate) fn median(values: &[f64]) -> f64 {
    percentile(values, 0.5)
}

pub(crate) fn iqr(values: &[f64]) -> f64 {
    percentile(values, 0.75) - percentile(values, 0.25)
}

pub(crate) fn percentile(values: &[f64], q: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx]
}
