//! Reduced-timing latency-PUF comparison foil.
//!
//! Accessing DRAM with tRCD pulled down to a few nanoseconds makes some
//! cells fail their reads; the failure set is the PUF response. The foil
//! models each cell with a logit-scale failure strength (a per-segment
//! shift plus per-cell variation) and a strong temperature coupling, which
//! reproduces the qualitative behavior of that PUF class: noisy unfiltered
//! responses spread over the whole Jaccard spectrum, stabilized by a
//! 100-read majority filter, and markedly temperature sensitive. It is a
//! comparison foil, not a validated chip model.

use crate::error::SimError;
use crate::model::{Address, ComponentKind, SeedStream, ValidatedConfig, REFERENCE_TEMP_C};
use crate::puf::{Challenge, FilterPolicy, PufResponse};

#[inline]
fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Per-cell failure probabilities of one segment at one temperature.
#[derive(Debug, Clone)]
pub struct LatencyPufSegment {
    probabilities: Vec<f64>,
    addresses: Vec<Address>,
    master_seed: u64,
}

impl LatencyPufSegment {
    pub fn build(
        cfg: &ValidatedConfig,
        challenge: &Challenge,
        temperature: f64,
    ) -> Result<LatencyPufSegment, SimError> {
        let segment = challenge.segment(cfg)?;
        let p = &cfg.puf;
        let master = cfg.variation.master_seed;
        let mut probabilities = Vec::with_capacity(segment.len_bits());
        let mut addresses = Vec::with_capacity(segment.len_bits());
        let temp_term = p.latency_temp_kappa * (temperature - REFERENCE_TEMP_C);
        for row in &segment.rows {
            let shift = p.latency_segment_shift_sigma
                * crate::model::component_z(master, ComponentKind::LatencySegmentShift, row);
            for c in 0..segment.row_bits {
                let addr = Address { column: c, ..*row };
                let z = crate::model::component_z(master, ComponentKind::LatencyStrength, &addr);
                let strength = p.latency_strength_mean + shift + p.latency_strength_sigma * z;
                probabilities.push(sigmoid(strength + temp_term));
                addresses.push(addr);
            }
        }
        Ok(LatencyPufSegment { probabilities, addresses, master_seed: master })
    }

    /// Failure probability of a cell, monotone in the temperature shift.
    pub fn probability(&self, idx: usize) -> f64 {
        self.probabilities[idx]
    }

    /// One unfiltered read: every cell fails independently with its own
    /// probability.
    pub fn respond(&self, trial: u64) -> PufResponse {
        let mut positions = Vec::new();
        for (i, (&p, addr)) in self.probabilities.iter().zip(&self.addresses).enumerate() {
            let u = SeedStream::for_component(self.master_seed, ComponentKind::LatencyFail, addr, trial)
                .next_f64();
            if u < p {
                positions.push(i as u32);
            }
        }
        PufResponse::from_sorted(positions)
    }

    /// Majority-filtered response over `filter.reads` reads. The reads of
    /// one filtered evaluation share the stream keyed by `trial_base`.
    pub fn respond_filtered(&self, filter: &FilterPolicy, trial_base: u64) -> PufResponse {
        if filter.reads == 1 {
            return self.respond(trial_base);
        }
        let min_count = filter.min_count();
        let mut positions = Vec::new();
        for (i, (&p, addr)) in self.probabilities.iter().zip(&self.addresses).enumerate() {
            let mut stream = SeedStream::for_component(
                self.master_seed,
                ComponentKind::LatencyFail,
                addr,
                trial_base,
            );
            let mut count = 0usize;
            for _ in 0..filter.reads {
                if stream.next_f64() < p {
                    count += 1;
                }
            }
            if count >= min_count {
                positions.push(i as u32);
            }
        }
        PufResponse::from_sorted(positions)
    }
}
