//! PUF quality experiments: Jaccard distributions, authentication rates,
//! evaluation-time model, temperature/aging sweeps, and the retention-decay
//! emulation of the precharge-class PUF.

use crate::error::SimError;
use crate::model::{EvalCtx, PufParams, TimingParams, ValidatedConfig, REFERENCE_TEMP_C};
use crate::primitives::PrimitiveTag;
use crate::puf::{
    jaccard, Challenge, FilterPolicy, JaccardReport, LatencyPufSegment, LatentSegment, PufResponse,
};
use rayon::prelude::*;
use serde::Serialize;

/// Which PUF produces the responses of an experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PufVariant {
    Dataplant(PrimitiveTag),
    /// Reduced-timing comparison foil; `None` evaluates single unfiltered
    /// reads.
    LatencyFoil { filter: Option<FilterPolicy> },
}

enum BuiltSegment {
    Dataplant(LatentSegment),
    Latency(LatencyPufSegment),
}

fn build_segments(
    cfg: &ValidatedConfig,
    segment_count: usize,
    variant: PufVariant,
    temperature: f64,
    aging_scale: f64,
) -> Result<Vec<BuiltSegment>, SimError> {
    (0..segment_count)
        .into_par_iter()
        .map(|i| {
            let primitive = match variant {
                PufVariant::Dataplant(p) => p,
                PufVariant::LatencyFoil { .. } => PrimitiveTag::UcPla,
            };
            let ch = Challenge::nth_segment(cfg, i, primitive)?;
            match variant {
                PufVariant::Dataplant(_) => {
                    let ctx = EvalCtx { temperature, aging_scale, trial: 0 };
                    Ok(BuiltSegment::Dataplant(LatentSegment::build(cfg, &ch, &ctx)?))
                }
                PufVariant::LatencyFoil { .. } => {
                    Ok(BuiltSegment::Latency(LatencyPufSegment::build(cfg, &ch, temperature)?))
                }
            }
        })
        .collect()
}

impl BuiltSegment {
    fn respond(&self, cfg: &ValidatedConfig, filter: &FilterPolicy, trial_base: u64) -> PufResponse {
        match self {
            BuiltSegment::Dataplant(seg) => seg.respond_filtered(cfg, filter, trial_base),
            BuiltSegment::Latency(seg) => seg.respond_filtered(filter, trial_base),
        }
    }
}

/// Samples `pairs` intra pairs (two evaluations of one segment) and `pairs`
/// inter pairs (evaluations of two distinct segments); sampling is seeded
/// and reproducible, and pair evaluation is order-free.
pub fn intra_inter_distributions(
    cfg: &ValidatedConfig,
    segment_count: usize,
    pairs: usize,
    filter: &FilterPolicy,
    variant: PufVariant,
) -> Result<JaccardReport, SimError> {
    if segment_count < 2 {
        return Err(SimError::PopulationTooSmall(format!(
            "{segment_count} segments; at least 2 required"
        )));
    }
    let effective_filter = match variant {
        PufVariant::Dataplant(_) => *filter,
        PufVariant::LatencyFoil { filter: f } => f.unwrap_or_else(FilterPolicy::single),
    };
    let segments = build_segments(cfg, segment_count, variant, REFERENCE_TEMP_C, 0.0)?;

    // sample pair descriptors up front so thread count cannot reorder draws
    let mut stream = cfg.experiment_stream(1);
    let span = 2 * effective_filter.reads as u64;
    let intra_desc: Vec<(usize, u64)> = (0..pairs)
        .map(|p| ((stream.next_u64() % segment_count as u64) as usize, p as u64 * span))
        .collect();
    let mut stream = cfg.experiment_stream(2);
    let inter_desc: Vec<(usize, usize, u64)> = (0..pairs)
        .map(|p| {
            let a = (stream.next_u64() % segment_count as u64) as usize;
            let step = 1 + (stream.next_u64() % (segment_count as u64 - 1)) as usize;
            let b = (a + step) % segment_count;
            (a, b, (pairs + p) as u64 * span)
        })
        .collect();

    let intra: Vec<f64> = intra_desc
        .par_iter()
        .map(|&(seg, base)| {
            let a = segments[seg].respond(cfg, &effective_filter, base);
            let b = segments[seg].respond(cfg, &effective_filter, base + effective_filter.reads as u64);
            jaccard(&a, &b)
        })
        .collect();
    let inter: Vec<f64> = inter_desc
        .par_iter()
        .map(|&(sa, sb, base)| {
            let a = segments[sa].respond(cfg, &effective_filter, base);
            let b = segments[sb].respond(cfg, &effective_filter, base + effective_filter.reads as u64);
            jaccard(&a, &b)
        })
        .collect();
    Ok(JaccardReport { intra, inter, pair_count: pairs })
}

/// Exact-match authentication decision.
pub fn authenticate(enrolled: &PufResponse, probe: &PufResponse) -> bool {
    enrolled == probe
}

/// Population authentication rates over seeded trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuthReport {
    pub trials: usize,
    /// Rejections of genuine single-read probes against the filtered
    /// enrollment response.
    pub frr: f64,
    /// Acceptances of probes evaluated on a different segment.
    pub far: f64,
    /// Fraction of consecutive single-read response pairs that match
    /// exactly.
    pub repeatability: f64,
}

/// Estimates FRR/FAR and single-response repeatability.
///
/// Enrollment stores the filtered response of a segment; authentication is
/// a naive exact match of one unfiltered read against it. Repeatability
/// compares two fresh unfiltered reads of the same segment.
pub fn auth_rates(
    cfg: &ValidatedConfig,
    trials: usize,
    enroll_filter: &FilterPolicy,
    primitive: PrimitiveTag,
) -> Result<AuthReport, SimError> {
    let segment_count = segments_on_device(cfg);
    let used = segment_count.min(trials.max(2));
    let segments = build_segments(cfg, used, PufVariant::Dataplant(primitive), REFERENCE_TEMP_C, 0.0)?;
    let filter = *enroll_filter;
    let single = FilterPolicy::single();
    let results: Vec<(bool, bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let seg = t % used;
            let other = (seg + 1) % used;
            let base = t as u64 * 1000;
            let enrolled = segments[seg].respond(cfg, &filter, base);
            let probe = segments[seg].respond(cfg, &single, base + 100);
            let r1 = segments[seg].respond(cfg, &single, base + 200);
            let r2 = segments[seg].respond(cfg, &single, base + 201);
            let far_probe = segments[other].respond(cfg, &single, base + 300);
            (
                !authenticate(&enrolled, &probe),
                authenticate(&enrolled, &far_probe),
                r1 == r2,
            )
        })
        .collect();
    let rejected = results.iter().filter(|r| r.0).count();
    let accepted_foreign = results.iter().filter(|r| r.1).count();
    let repeated = results.iter().filter(|r| r.2).count();
    Ok(AuthReport {
        trials,
        frr: rejected as f64 / trials as f64,
        far: accepted_foreign as f64 / trials as f64,
        repeatability: repeated as f64 / trials as f64,
    })
}

fn segments_on_device(cfg: &ValidatedConfig) -> usize {
    let rows_per_segment = (8192 / cfg.geometry.row_size_bytes).max(1) as usize;
    cfg.rows_total / rows_per_segment
}

/// PUF classes compared in the evaluation-time model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PufTimingKind {
    LatencyPuf,
    PrelatPuf,
    DataplantFiltered,
    DataplantNofilter,
}

/// Evaluation duration in milliseconds: reads times the platform per-read
/// cost plus the row-level primitive latencies (negligible next to the
/// read-out cost, included for completeness).
pub fn evaluation_time(
    kind: PufTimingKind,
    filter: &FilterPolicy,
    timing: &TimingParams,
    puf: &PufParams,
) -> f64 {
    let per_read_ms = puf.per_read_cost_ms;
    match kind {
        PufTimingKind::LatencyPuf => {
            let reads = 100.0;
            reads * (per_read_ms + (puf.reduced_trcd_ns + timing.t_rp) * 1e-6)
        }
        PufTimingKind::PrelatPuf => puf.prelat_eval_ms,
        PufTimingKind::DataplantFiltered => {
            let reads = filter.reads as f64;
            reads * (per_read_ms + (timing.pre_latency + timing.act_latency) * 1e-6)
        }
        PufTimingKind::DataplantNofilter => {
            per_read_ms + (timing.pre_latency + timing.act_latency) * 1e-6
        }
    }
}

/// Intra-Jaccard distribution at one probe temperature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TemperaturePoint {
    pub temperature_c: f64,
    pub indices: Vec<f64>,
}

/// Compares enrollment responses taken at 30C against probes taken at each
/// temperature on the same segments.
pub fn temperature_sweep(
    cfg: &ValidatedConfig,
    segment_count: usize,
    probes_per_segment: usize,
    temps: &[f64],
    filter: &FilterPolicy,
    variant: PufVariant,
) -> Result<Vec<TemperaturePoint>, SimError> {
    for &t in temps {
        if !(20.0..=90.0).contains(&t) {
            return Err(SimError::PopulationTooSmall(format!(
                "temperature {t}C outside the modeled range [20, 90]"
            )));
        }
    }
    let effective_filter = match variant {
        PufVariant::Dataplant(_) => *filter,
        PufVariant::LatencyFoil { filter: f } => f.unwrap_or_else(FilterPolicy::single),
    };
    let enroll_segments = build_segments(cfg, segment_count, variant, REFERENCE_TEMP_C, 0.0)?;
    let span = effective_filter.reads as u64;
    let enrolled: Vec<PufResponse> = enroll_segments
        .par_iter()
        .enumerate()
        .map(|(i, seg)| seg.respond(cfg, &effective_filter, i as u64 * span))
        .collect();

    let mut out = Vec::with_capacity(temps.len());
    for (ti, &temp) in temps.iter().enumerate() {
        let probe_segments = build_segments(cfg, segment_count, variant, temp, 0.0)?;
        let indices: Vec<f64> = (0..segment_count * probes_per_segment)
            .into_par_iter()
            .map(|k| {
                let seg = k / probes_per_segment;
                let probe = k % probes_per_segment;
                let base = 1_000_000 + (((ti * segment_count + seg) * probes_per_segment + probe) as u64) * span;
                let resp = probe_segments[seg].respond(cfg, &effective_filter, base);
                jaccard(&enrolled[seg], &resp)
            })
            .collect();
        out.push(TemperaturePoint { temperature_c: temp, indices });
    }
    Ok(out)
}

/// Before/after intra-Jaccard distribution across an accelerated-aging
/// perturbation of the fabrication offsets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgingReport {
    pub drift_sigma_volts: f64,
    pub indices: Vec<f64>,
}

pub fn aging_experiment(
    cfg: &ValidatedConfig,
    segment_count: usize,
    probes_per_segment: usize,
    drift_sigma_volts: f64,
    filter: &FilterPolicy,
    primitive: PrimitiveTag,
) -> Result<AgingReport, SimError> {
    assert!(drift_sigma_volts >= 0.0);
    let configured = cfg.variation.aging_drift_sigma;
    let scale = if configured > 0.0 { drift_sigma_volts / configured } else { 0.0 };
    let variant = PufVariant::Dataplant(primitive);
    let fresh = build_segments(cfg, segment_count, variant, REFERENCE_TEMP_C, 0.0)?;
    let aged = build_segments(cfg, segment_count, variant, REFERENCE_TEMP_C, scale)?;
    let span = filter.reads as u64;
    let indices: Vec<f64> = (0..segment_count * probes_per_segment)
        .into_par_iter()
        .map(|k| {
            let seg = k / probes_per_segment;
            let probe = k % probes_per_segment;
            let base = (k as u64) * 2 * span;
            let before = fresh[seg].respond(cfg, filter, base);
            let _ = probe;
            let after = aged[seg].respond(cfg, filter, base + span);
            jaccard(&before, &after)
        })
        .collect();
    Ok(AgingReport { drift_sigma_volts, indices })
}

/// Outcome of the refresh-disable emulation of the precharge-class PUF.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RetentionOutcome {
    pub wait_hours: f64,
    pub temperature_c: f64,
    pub total_cells: usize,
    pub covered_cells: usize,
    /// Fraction of cells whose post-activate bit is identical under the
    /// all-zeros and all-ones initializations.
    pub coverage: f64,
    /// Fraction of covered cells generating the minority '0' value.
    pub unpredictable_fraction: f64,
    /// Emulated responses (per segment), computed only over covered cells.
    #[serde(skip)]
    pub responses: Vec<PufResponse>,
}

/// Emulates arming cells by disabling refresh: every cell leaks toward
/// Vdd/2 for `wait_hours`, the device is activated once per initialization
/// pattern, and a cell counts as covered when both runs agree.
pub fn retention_emulation(
    cfg: &ValidatedConfig,
    segment_count: usize,
    wait_hours: f64,
    temperature: f64,
) -> Result<RetentionOutcome, SimError> {
    assert!(wait_hours > 0.0, "wait must be positive");
    let model = &cfg.variation;
    let elec = &cfg.electrical;
    let wait_s = wait_hours * 3600.0;
    let ctx = EvalCtx::at_temperature(temperature, 0);
    let per_segment: Vec<(usize, usize, Vec<u32>)> = (0..segment_count)
        .into_par_iter()
        .map(|i| {
            let ch = Challenge::nth_segment(cfg, i, PrimitiveTag::UcPla)?;
            let segment = ch.segment(cfg)?;
            let mut covered = 0usize;
            let mut positions = Vec::new();
            let mut total = 0usize;
            for (r, row) in segment.rows.iter().enumerate() {
                for c in 0..segment.row_bits {
                    let addr = crate::model::Address { column: c, ..*row };
                    let tau = model.cell_tau(&addr);
                    let tau_eff = tau * ((REFERENCE_TEMP_C - temperature) / 10.0).exp2();
                    let decay = (-wait_s / tau_eff).exp();
                    let ratio = model.cell_capacitance(&addr, elec)
                        / (model.cell_capacitance(&addr, elec) + elec.c_bitline());
                    let latent = model.uc_pla_latent(&addr, &ctx);
                    // residual charge-share deviation under each init
                    let delta_ones = (elec.vdd - elec.precharge_level) * decay * ratio;
                    let delta_zeros = (0.0 - elec.precharge_level) * decay * ratio;
                    let bit_ones =
                        delta_ones + latent + model.cell_noise(&addr, 0) > 0.0;
                    let bit_zeros =
                        delta_zeros + latent + model.cell_noise(&addr, 1) > 0.0;
                    total += 1;
                    if bit_ones == bit_zeros {
                        covered += 1;
                        if !bit_ones {
                            positions.push((r * segment.row_bits + c) as u32);
                        }
                    }
                }
            }
            Ok((covered, total, positions))
        })
        .collect::<Result<_, SimError>>()?;

    let covered_cells: usize = per_segment.iter().map(|s| s.0).sum();
    let total_cells: usize = per_segment.iter().map(|s| s.1).sum();
    let zeros: usize = per_segment.iter().map(|s| s.2.len()).sum();
    let responses = per_segment
        .into_iter()
        .map(|(_, _, positions)| PufResponse::from_sorted(positions))
        .collect();
    Ok(RetentionOutcome {
        wait_hours,
        temperature_c: temperature,
        total_cells,
        covered_cells,
        coverage: covered_cells as f64 / total_cells as f64,
        unpredictable_fraction: if covered_cells > 0 {
            zeros as f64 / covered_cells as f64
        } else {
            0.0
        },
        responses,
    })
}
