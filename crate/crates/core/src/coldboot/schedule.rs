//! Destruction scheduling and energy accounting.
//!
//! Command-based mechanisms walk every row of the device with the row
//! operations issued in bank-round-robin order. The issue interval is
//! throttled by the destruction power constraints: consecutive row
//! operations are at least `tRRD` apart and at most four fall into any
//! rolling `tFAW` window, whichever is stricter than the per-row operation
//! latency itself. Self-destruction runs inside the chip: the self-refresh
//! variant always takes one full refresh window, the burst variant is
//! calibrated by an effective per-row time.

use crate::coldboot::Mechanism;
use crate::model::ValidatedConfig;
use serde::Serialize;

/// Latency and energy of one destruction mechanism over one device.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DestructionReport {
    pub mechanism: Mechanism,
    pub capacity_bytes: u64,
    pub latency_s: f64,
    pub energy_j: f64,
    pub per_row_latency_ns: f64,
    pub per_row_energy_nj: f64,
    pub rows_total: usize,
    /// Profile name the numbers were produced with.
    pub profile: String,
}

/// Per-row operation latency of a mechanism, ns.
pub fn per_row_latency_ns(cfg: &ValidatedConfig, mechanism: Mechanism) -> f64 {
    match mechanism {
        Mechanism::TcgSoftware | Mechanism::CmdBaseline => cfg.destruction.baseline_row_ns,
        Mechanism::CmdLisa => cfg.destruction.lisa_row_ns,
        Mechanism::CmdRowclone => cfg.destruction.rowclone_row_ns,
        Mechanism::CmdDataplantUe => cfg.timing.act_latency,
        Mechanism::CmdDataplantUc => cfg.timing.pre_latency,
        Mechanism::SelfSr => cfg.timing.act_latency,
        Mechanism::SelfBurst => cfg.destruction.burst_row_ns,
    }
}

/// Per-row energy of a mechanism scaled to this device's row size, nJ.
pub fn per_row_energy_nj(cfg: &ValidatedConfig, mechanism: Mechanism) -> f64 {
    let scale = cfg.row_energy_scale();
    let nj_8kb = match mechanism {
        Mechanism::TcgSoftware | Mechanism::CmdBaseline => cfg.energy.baseline_write,
        Mechanism::CmdLisa => cfg.energy.lisa,
        Mechanism::CmdRowclone => cfg.energy.rowclone,
        Mechanism::CmdDataplantUe => cfg.energy.activation,
        // generation and overwrite are indivisible for the precharge-class
        // primitive, and self-destruction refreshes destructively with it
        Mechanism::CmdDataplantUc | Mechanism::SelfSr | Mechanism::SelfBurst => cfg.energy.uc_pla,
    };
    nj_8kb * scale
}

/// Issue interval between consecutive row operations, ns.
fn issue_interval_ns(cfg: &ValidatedConfig, mechanism: Mechanism) -> f64 {
    let d = &cfg.destruction;
    let op = per_row_latency_ns(cfg, mechanism) / d.banks_parallel as f64;
    op.max(d.t_rrd).max(d.t_faw / 4.0)
}

/// Schedules a whole-device destruction and reports its latency and energy.
pub fn schedule_destruction(cfg: &ValidatedConfig, mechanism: Mechanism) -> DestructionReport {
    let rows = cfg.rows_total;
    let latency_ns = match mechanism {
        Mechanism::SelfSr => cfg.t_refw_ms * 1e6,
        Mechanism::SelfBurst => rows as f64 * cfg.destruction.burst_row_ns,
        _ => {
            let interval = issue_interval_ns(cfg, mechanism);
            (rows as f64 - 1.0) * interval + per_row_latency_ns(cfg, mechanism)
        }
    };
    DestructionReport {
        mechanism,
        capacity_bytes: cfg.total_capacity_bytes,
        latency_s: latency_ns * 1e-9,
        energy_j: destruction_energy_joules(cfg, mechanism),
        per_row_latency_ns: per_row_latency_ns(cfg, mechanism),
        per_row_energy_nj: per_row_energy_nj(cfg, mechanism),
        rows_total: rows,
        profile: cfg.profile.clone().unwrap_or_else(|| "custom".to_string()),
    }
}

/// Total destruction energy in joules. Command-based mechanisms add the
/// configured bus energy per command; self-destruction excludes the bus.
pub fn destruction_energy_joules(cfg: &ValidatedConfig, mechanism: Mechanism) -> f64 {
    let rows = cfg.rows_total as f64;
    let mut nj = rows * per_row_energy_nj(cfg, mechanism);
    if mechanism.is_command_based() {
        nj += rows * cfg.energy.bus_energy_per_command;
    }
    nj * 1e-9
}

/// One row operation of a destruction command trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RowOp {
    pub time_ns: f64,
    pub bank: usize,
    pub row_index: usize,
}

/// Command trace of the first `max_rows` row operations, bank round-robin.
pub fn generate_trace(cfg: &ValidatedConfig, mechanism: Mechanism, max_rows: usize) -> Vec<RowOp> {
    let interval = issue_interval_ns(cfg, mechanism);
    let banks = cfg.geometry.banks_per_rank * cfg.geometry.ranks_per_channel * cfg.geometry.channels;
    let rows = cfg.rows_total.min(max_rows);
    (0..rows)
        .map(|i| RowOp { time_ns: i as f64 * interval, bank: i % banks, row_index: i })
        .collect()
}

/// Checks scheduler legality of a trace: same-bank row operations at least
/// `tRRD` apart and no more than four row operations in any rolling `tFAW`
/// window device-wide.
pub fn validate_trace(trace: &[RowOp], t_rrd: f64, t_faw: f64) -> Result<(), String> {
    let mut by_time: Vec<&RowOp> = trace.iter().collect();
    by_time.sort_by(|a, b| a.time_ns.total_cmp(&b.time_ns));
    let mut last_in_bank: std::collections::HashMap<usize, f64> = std::collections::HashMap::new();
    for op in &by_time {
        if let Some(prev) = last_in_bank.get(&op.bank) {
            let gap = op.time_ns - prev;
            if gap < t_rrd - 1e-9 {
                return Err(format!(
                    "bank {} row ops {}ns apart violate tRRD {}ns",
                    op.bank, gap, t_rrd
                ));
            }
        }
        last_in_bank.insert(op.bank, op.time_ns);
    }
    // rolling tFAW window: ops are sorted, count ops in [t_i, t_i + tFAW)
    let times: Vec<f64> = by_time.iter().map(|o| o.time_ns).collect();
    let mut hi = 0usize;
    for lo in 0..times.len() {
        if hi < lo {
            hi = lo;
        }
        while hi < times.len() && times[hi] < times[lo] + t_faw - 1e-9 {
            hi += 1;
        }
        if hi - lo > 4 {
            return Err(format!(
                "{} row ops within one tFAW window of {}ns starting at {}ns",
                hi - lo,
                t_faw,
                times[lo]
            ));
        }
    }
    Ok(())
}

/// Deallocation cost of a byte range at single-deallocation scale (no
/// power-window modeling).
pub fn dealloc_cost(cfg: &ValidatedConfig, bytes: u64, mechanism: Mechanism) -> (f64, f64) {
    assert!(bytes > 0, "deallocation of zero bytes");
    let rows = bytes.div_ceil(cfg.geometry.row_size_bytes) as f64;
    (rows * per_row_latency_ns(cfg, mechanism), rows * per_row_energy_nj(cfg, mechanism))
}

/// Static reference overheads of cipher-based cold-boot defenses, reported
/// alongside the destruction comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CipherReference {
    pub name: &'static str,
    pub runtime_performance_pct: f64,
    pub runtime_power_pct: f64,
    pub area_pct: f64,
}

pub const CIPHER_REFERENCES: [CipherReference; 3] = [
    CipherReference {
        name: "self_destruction",
        runtime_performance_pct: 0.0,
        runtime_power_pct: 0.0,
        area_pct: 0.0,
    },
    CipherReference {
        name: "chacha8",
        runtime_performance_pct: 0.0,
        runtime_power_pct: 17.0,
        area_pct: 0.9,
    },
    CipherReference {
        name: "aes128",
        runtime_performance_pct: 0.0,
        runtime_power_pct: 12.0,
        area_pct: 1.25,
    },
];

/// One report per (capacity, mechanism), using capacity-scaled profiles.
pub fn compare_mechanisms(
    capacities: &[u64],
    lpddr: bool,
) -> Result<Vec<DestructionReport>, crate::error::ConfigError> {
    let mut reports = Vec::new();
    for &bytes in capacities {
        let mut raw = crate::model::DramConfig::scaled_capacity(bytes)?;
        if lpddr {
            raw.family = crate::model::DeviceFamily::Lpddr;
            raw.profile = raw.profile.map(|p| p.replace("ddr4", "lpddr4"));
        }
        let cfg = raw.validate()?;
        for mechanism in Mechanism::ALL {
            reports.push(schedule_destruction(&cfg, mechanism));
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DramConfig;

    fn burst_cfg() -> ValidatedConfig {
        DramConfig::ddr4_4gb_burst().validate().unwrap()
    }

    #[test]
    fn self_sr_is_the_refresh_window_exactly() {
        let cfg = burst_cfg();
        let r = schedule_destruction(&cfg, Mechanism::SelfSr);
        assert_eq!(r.latency_s, 64e-3);
        let lp = DramConfig::lpddr4_4gb().validate().unwrap();
        let r = schedule_destruction(&lp, Mechanism::SelfSr);
        assert_eq!(r.latency_s, 32e-3);
    }

    #[test]
    fn burst_hits_the_9ms_anchor_on_4gb() {
        let cfg = burst_cfg();
        let r = schedule_destruction(&cfg, Mechanism::SelfBurst);
        assert!((r.latency_s - 9e-3).abs() < 1e-12, "burst {}s", r.latency_s);
    }

    #[test]
    fn dataplant_ue_and_uc_are_power_limited_to_the_same_interval() {
        let cfg = burst_cfg();
        let ue = schedule_destruction(&cfg, Mechanism::CmdDataplantUe);
        let uc = schedule_destruction(&cfg, Mechanism::CmdDataplantUc);
        // the tFAW/4 = 35ns power window binds both primitives
        assert!((ue.latency_s - uc.latency_s).abs() / ue.latency_s < 1e-4);
        assert!(uc.latency_s <= ue.latency_s);
    }

    #[test]
    fn latency_ordering_follows_per_row_ordering() {
        let cfg = burst_cfg();
        let l = |m| schedule_destruction(&cfg, m).latency_s;
        let uc = l(Mechanism::CmdDataplantUc);
        let ue = l(Mechanism::CmdDataplantUe);
        let rc = l(Mechanism::CmdRowclone);
        let lisa = l(Mechanism::CmdLisa);
        let base = l(Mechanism::CmdBaseline);
        assert!(uc <= ue && ue < rc && rc < lisa && lisa < base);
    }

    #[test]
    fn cmd_latency_increases_with_capacity_and_self_sr_is_constant() {
        let caps = [64u64 << 20, 1 << 30, 4 << 30];
        let reports = compare_mechanisms(&caps, false).unwrap();
        for m in [Mechanism::CmdBaseline, Mechanism::CmdRowclone, Mechanism::CmdDataplantUe] {
            let lat: Vec<f64> = reports
                .iter()
                .filter(|r| r.mechanism == m)
                .map(|r| r.latency_s)
                .collect();
            assert!(lat.windows(2).all(|w| w[0] < w[1]), "{m} latencies {lat:?}");
        }
        let sr: Vec<f64> =
            reports.iter().filter(|r| r.mechanism == Mechanism::SelfSr).map(|r| r.latency_s).collect();
        assert!(sr.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn energy_is_linear_in_row_count() {
        let a = DramConfig::scaled_capacity(1 << 30).unwrap().validate().unwrap();
        let b = DramConfig::scaled_capacity(2 << 30).unwrap().validate().unwrap();
        for m in Mechanism::ALL {
            let ea = destruction_energy_joules(&a, m);
            let eb = destruction_energy_joules(&b, m);
            assert!((eb / ea - 2.0).abs() < 1e-12, "{m}: {ea} vs {eb}");
        }
    }

    #[test]
    fn per_row_energy_ratio_baseline_over_uc_is_116x() {
        let cfg = burst_cfg();
        let ratio = per_row_energy_nj(&cfg, Mechanism::CmdBaseline)
            / per_row_energy_nj(&cfg, Mechanism::CmdDataplantUc);
        assert_eq!(ratio.round() as i64, 116);
    }

    #[test]
    fn trace_respects_power_constraints() {
        let cfg = burst_cfg();
        for m in [Mechanism::CmdDataplantUc, Mechanism::CmdRowclone, Mechanism::CmdBaseline] {
            let trace = generate_trace(&cfg, m, 5000);
            validate_trace(&trace, cfg.destruction.t_rrd, cfg.destruction.t_faw).unwrap();
        }
    }

    #[test]
    fn validator_rejects_a_too_dense_trace() {
        let trace: Vec<RowOp> =
            (0..10).map(|i| RowOp { time_ns: i as f64 * 5.0, bank: i % 8, row_index: i }).collect();
        assert!(validate_trace(&trace, 10.0, 140.0).is_err());
    }

    #[test]
    fn dealloc_costs_match_per_row_constants() {
        let cfg = DramConfig::ddr3_1600_desk().validate().unwrap();
        let (ue_lat, ue_en) = dealloc_cost(&cfg, 8192, Mechanism::CmdDataplantUe);
        assert_eq!(ue_lat, 35.0);
        assert!((ue_en - 17.3).abs() < 1e-12);
        let (base_lat, base_en) = dealloc_cost(&cfg, 8192, Mechanism::CmdBaseline);
        assert_eq!(base_lat, 546.0);
        assert!((base_en - 2000.0).abs() < 1e-12);
        let (lat16, en16) = dealloc_cost(&cfg, 16384, Mechanism::CmdDataplantUe);
        assert_eq!(lat16, 2.0 * ue_lat);
        assert!((en16 - 2.0 * ue_en).abs() < 1e-12);
    }
}
