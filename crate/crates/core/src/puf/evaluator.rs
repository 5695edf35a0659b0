//! Fast segment evaluation with latent caching.
//!
//! Evaluating a challenge through the full circuit path touches every cell
//! on every read. The latent value of a cell under fixed conditions never
//! changes, though: only transient noise is resampled per trial, and
//! noise can only flip cells whose latent magnitude is within a few noise
//! sigmas of zero. The evaluator therefore classifies each position once
//! per (temperature, aging) condition as always-unpredictable, borderline,
//! or never, and per-trial work is proportional to the response size.
//!
//! Both paths draw noise from the same substreams, so for any seed the fast
//! response is bit-identical to the circuit response (the borderline window
//! of twelve sigmas makes a disagreement impossible in practice).

use crate::error::SimError;
use crate::model::{Address, EvalCtx, ValidatedConfig};
use crate::primitives::PrimitiveTag;
use crate::puf::{Challenge, FilterPolicy, PufResponse};

/// Width of the borderline classification window in noise sigmas.
const BORDERLINE_SIGMAS: f64 = 12.0;

/// Per-condition latent classification of one segment.
#[derive(Debug, Clone)]
pub struct LatentSegment {
    primitive: PrimitiveTag,
    len_bits: usize,
    /// Positions whose latent is below the borderline window: always in the
    /// response.
    always: Vec<u32>,
    /// Positions within the window: noise decides per trial.
    borderline: Vec<(u32, f64, Address)>,
}

impl LatentSegment {
    /// Classifies every position of the challenge segment under the given
    /// conditions (`ctx.trial` is ignored; trials are chosen per response).
    pub fn build(
        cfg: &ValidatedConfig,
        challenge: &Challenge,
        ctx: &EvalCtx,
    ) -> Result<LatentSegment, SimError> {
        let segment = challenge.segment(cfg)?;
        let model = &cfg.variation;
        let window = BORDERLINE_SIGMAS * model.cell_noise_sigma;
        let row_bits = segment.row_bits;
        let mut always = Vec::new();
        let mut borderline = Vec::new();
        match challenge.primitive {
            PrimitiveTag::UcPla => {
                for (r, row) in segment.rows.iter().enumerate() {
                    // the coupled SA offset is shared by every row of a subarray
                    for c in 0..row_bits {
                        let addr = Address { column: c, ..*row };
                        let latent = model.uc_pla_latent(&addr, ctx);
                        classify(&mut always, &mut borderline, (r * row_bits + c) as u32, latent, addr, window);
                    }
                }
            }
            PrimitiveTag::UeSa => {
                for (r, row) in segment.rows.iter().enumerate() {
                    for c in 0..row_bits {
                        let sa_addr = Address { row: 0, column: c, ..*row };
                        let latent = model.ue_sa_latent(&sa_addr, ctx);
                        classify(&mut always, &mut borderline, (r * row_bits + c) as u32, latent, sa_addr, window);
                    }
                }
            }
            PrimitiveTag::DTran => {
                // deterministic primitive: no unpredictable positions
            }
        }
        Ok(LatentSegment {
            primitive: challenge.primitive,
            len_bits: segment.len_bits(),
            always,
            borderline,
        })
    }

    pub fn len_bits(&self) -> usize {
        self.len_bits
    }

    /// Expected response size ignoring borderline cells.
    pub fn floor_size(&self) -> usize {
        self.always.len()
    }

    /// One read: the always-set plus whichever borderline cells the trial
    /// noise pushes below zero.
    pub fn respond(&self, cfg: &ValidatedConfig, trial: u64) -> PufResponse {
        let model = &cfg.variation;
        if self.borderline.is_empty() {
            return PufResponse::from_sorted(self.always.clone());
        }
        let mut positions = self.always.clone();
        for &(pos, latent, addr) in &self.borderline {
            let noise = match self.primitive {
                PrimitiveTag::UeSa => model.sa_noise(&addr, trial),
                _ => model.cell_noise(&addr, trial),
            };
            if latent + noise <= 0.0 {
                positions.push(pos);
            }
        }
        positions.sort_unstable();
        PufResponse::from_sorted(positions)
    }

    /// Filtered response consuming `filter.reads` consecutive trials
    /// starting at `trial_base`.
    pub fn respond_filtered(
        &self,
        cfg: &ValidatedConfig,
        filter: &FilterPolicy,
        trial_base: u64,
    ) -> PufResponse {
        if filter.reads == 1 {
            return self.respond(cfg, trial_base);
        }
        let min_count = filter.min_count();
        // always-set positions trivially appear in every read
        let mut positions = self.always.clone();
        let model = &cfg.variation;
        for &(pos, latent, addr) in &self.borderline {
            let mut count = 0usize;
            for t in 0..filter.reads as u64 {
                let trial = trial_base + t;
                let noise = match self.primitive {
                    PrimitiveTag::UeSa => model.sa_noise(&addr, trial),
                    _ => model.cell_noise(&addr, trial),
                };
                if latent + noise <= 0.0 {
                    count += 1;
                }
            }
            if count >= min_count {
                positions.push(pos);
            }
        }
        positions.sort_unstable();
        PufResponse::from_sorted(positions)
    }
}

#[inline]
fn classify(
    always: &mut Vec<u32>,
    borderline: &mut Vec<(u32, f64, Address)>,
    pos: u32,
    latent: f64,
    addr: Address,
    window: f64,
) {
    if latent.abs() <= window {
        borderline.push((pos, latent, addr));
    } else if latent < 0.0 {
        always.push(pos);
    }
}

/// Executes one challenge: `filter.reads` primitive evaluations with the
/// filter applied. Device memory is untouched for the activation-class
/// primitive without writeback; the precharge-class primitive destroys the
/// segment content by construction.
pub fn evaluate(
    cfg: &ValidatedConfig,
    challenge: &Challenge,
    filter: &FilterPolicy,
    ctx: &EvalCtx,
) -> Result<PufResponse, SimError> {
    let latent = LatentSegment::build(cfg, challenge, ctx)?;
    Ok(latent.respond_filtered(cfg, filter, ctx.trial))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{SubarrayId, SubarrayState};
    use crate::model::DramConfig;
    use crate::primitives::{uc_pla_arm, ue_sa};

    fn small_cfg(noise: f64) -> ValidatedConfig {
        let mut raw = DramConfig::ddr3_1600_desk();
        raw.geometry.row_size_bytes = 64; // 512 cells per row
        raw.geometry.rows_per_subarray = 4;
        raw.geometry.subarrays_per_bank = 2;
        raw.geometry.banks_per_rank = 2;
        raw.variation.cell_noise_sigma = noise;
        raw.validate().unwrap()
    }

    fn challenge(cfg: &ValidatedConfig, primitive: PrimitiveTag) -> Challenge {
        Challenge {
            segment_start: Address { channel: 0, rank: 0, bank: 0, subarray: 0, row: 0, column: 0 },
            segment_bytes: cfg.geometry.row_size_bytes,
            primitive,
        }
    }

    /// The fast path must agree bit-for-bit with the circuit path.
    #[test]
    fn fast_path_matches_circuit_for_uc_pla() {
        for seed in [1u64, 7, 99] {
            let mut raw = DramConfig::ddr3_1600_desk();
            raw.geometry.row_size_bytes = 64;
            raw.geometry.rows_per_subarray = 4;
            raw.variation.master_seed = seed;
            // realistic-scale noise so borderline cells exist occasionally
            raw.variation.cell_noise_sigma = 1e-4;
            let cfg = raw.validate().unwrap();
            let ch = challenge(&cfg, PrimitiveTag::UcPla);
            for trial in 0..5u64 {
                let ctx = EvalCtx::nominal(trial);
                // circuit route: arm the row, activate, collect zero positions
                let mut st = SubarrayState::new(
                    &cfg,
                    SubarrayId { channel: 0, rank: 0, bank: 0, subarray: 0 },
                );
                uc_pla_arm(&mut st, &cfg, 0).unwrap();
                let bits = st.activate(&cfg, 0, &ctx).unwrap().clone();
                let circuit: Vec<u32> = (0..bits.len())
                    .filter(|&i| !bits.get(i))
                    .map(|i| i as u32)
                    .collect();
                // fast route
                let fast = evaluate(&cfg, &ch, &FilterPolicy::single(), &ctx).unwrap();
                assert_eq!(fast.positions(), &circuit[..], "seed {seed} trial {trial}");
            }
        }
    }

    #[test]
    fn fast_path_matches_circuit_for_ue_sa() {
        let mut raw = DramConfig::ddr3_1600_desk();
        raw.geometry.row_size_bytes = 64;
        raw.geometry.rows_per_subarray = 4;
        raw.variation.master_seed = 31;
        raw.variation.cell_noise_sigma = 1e-4;
        let cfg = raw.validate().unwrap();
        let ch = challenge(&cfg, PrimitiveTag::UeSa);
        for trial in 0..5u64 {
            let ctx = EvalCtx::nominal(trial);
            let mut st =
                SubarrayState::new(&cfg, SubarrayId { channel: 0, rank: 0, bank: 0, subarray: 0 });
            st.precharge(&cfg);
            let receipt = ue_sa(&mut st, &cfg, 0, false, &ctx).unwrap();
            let circuit: Vec<u32> = (0..receipt.generated_bits.len())
                .filter(|&i| !receipt.generated_bits.get(i))
                .map(|i| i as u32)
                .collect();
            let fast = evaluate(&cfg, &ch, &FilterPolicy::single(), &ctx).unwrap();
            assert_eq!(fast.positions(), &circuit[..], "trial {trial}");
        }
    }

    #[test]
    fn noiseless_filtered_equals_single_read() {
        let cfg = small_cfg(0.0);
        let ch = challenge(&cfg, PrimitiveTag::UcPla);
        let one = evaluate(&cfg, &ch, &FilterPolicy::single(), &EvalCtx::nominal(0)).unwrap();
        let ten = evaluate(&cfg, &ch, &FilterPolicy::conservative(), &EvalCtx::nominal(0)).unwrap();
        assert_eq!(one, ten);
    }

    #[test]
    fn raising_threshold_never_adds_positions() {
        let mut raw = DramConfig::ddr3_1600_desk();
        raw.geometry.row_size_bytes = 64;
        raw.variation.cell_noise_sigma = 2e-3; // plenty of borderline cells
        let cfg = raw.validate().unwrap();
        let ch = challenge(&cfg, PrimitiveTag::UcPla);
        let latent = LatentSegment::build(&cfg, &ch, &EvalCtx::nominal(0)).unwrap();
        let mut prev: Option<PufResponse> = None;
        for thr in [0.1, 0.3, 0.5, 0.7, 0.9, 1.0] {
            let filter = FilterPolicy { reads: 10, keep_threshold: thr };
            let resp = latent.respond_filtered(&cfg, &filter, 0);
            if let Some(prev) = &prev {
                let prev_set: std::collections::HashSet<u32> =
                    prev.positions().iter().copied().collect();
                assert!(
                    resp.positions().iter().all(|p| prev_set.contains(p)),
                    "threshold {thr} added positions"
                );
            }
            prev = Some(resp);
        }
    }

    #[test]
    fn dtran_challenge_has_empty_response() {
        let cfg = small_cfg(0.0);
        let ch = challenge(&cfg, PrimitiveTag::DTran);
        let resp = evaluate(&cfg, &ch, &FilterPolicy::single(), &EvalCtx::nominal(0)).unwrap();
        assert!(resp.is_empty());
    }

    #[test]
    fn invalid_segment_is_an_error() {
        let cfg = small_cfg(0.0);
        let ch = Challenge {
            segment_start: Address { channel: 9, rank: 0, bank: 0, subarray: 0, row: 0, column: 0 },
            segment_bytes: 64,
            primitive: PrimitiveTag::UcPla,
        };
        assert!(evaluate(&cfg, &ch, &FilterPolicy::single(), &EvalCtx::nominal(0)).is_err());
    }
}
