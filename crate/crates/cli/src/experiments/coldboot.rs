//! Whole-DRAM destruction comparison: latency and energy per mechanism
//! across capacities, headline ratios at the 4 GB anchor, the cipher
//! reference constants, and a command-trace legality check.

use super::{Context, ExperimentResult};
use crate::output::{fmt_f64, write_json_summary, Table};
use dataplant_core::coldboot::{
    compare_mechanisms, generate_trace, schedule_destruction, validate_trace, Mechanism,
    CIPHER_REFERENCES,
};
use dataplant_core::model::DramConfig;

pub const CAPACITIES: [u64; 6] =
    [64 << 20, 256 << 20, 1 << 30, 4 << 30, 16 << 30, 64 << 30];

pub fn run(ctx: &Context) -> ExperimentResult {
    let reports = compare_mechanisms(&CAPACITIES, false).map_err(|e| format!("capacity sweep: {e}"))?;
    let mut table = Table::new(
        "coldboot_comparison",
        vec![
            "mechanism",
            "capacity_bytes",
            "profile",
            "rows_total",
            "latency_s",
            "energy_j",
            "per_row_latency_ns",
            "per_row_energy_nj",
        ],
    );
    for r in &reports {
        table.push_row(vec![
            r.mechanism.to_string(),
            r.capacity_bytes.to_string(),
            r.profile.clone(),
            r.rows_total.to_string(),
            fmt_f64(r.latency_s),
            fmt_f64(r.energy_j),
            fmt_f64(r.per_row_latency_ns),
            fmt_f64(r.per_row_energy_nj),
        ]);
    }
    // LPDDR reference rows: self-refresh destruction in the 32 ms window
    let lpddr = DramConfig::lpddr4_4gb().validate().map_err(|e| e.to_string())?;
    for mechanism in [Mechanism::SelfSr, Mechanism::SelfBurst] {
        let r = schedule_destruction(&lpddr, mechanism);
        table.push_row(vec![
            r.mechanism.to_string(),
            r.capacity_bytes.to_string(),
            r.profile.clone(),
            r.rows_total.to_string(),
            fmt_f64(r.latency_s),
            fmt_f64(r.energy_j),
            fmt_f64(r.per_row_latency_ns),
            fmt_f64(r.per_row_energy_nj),
        ]);
    }
    let mut paths = vec![table.write(ctx.dir, &ctx.meta, ctx.opts.format).map_err(|e| ctx.io(e))?];

    // headline ratios from the 4 GB anchor profile, printed next to the
    // reference values they are compared against
    let anchor = DramConfig::ddr4_4gb_burst().validate().map_err(|e| e.to_string())?;
    let lat = |m| schedule_destruction(&anchor, m).latency_s;
    let energy = |m| schedule_destruction(&anchor, m).energy_j;
    let burst = lat(Mechanism::SelfBurst);
    let tcg_energy = energy(Mechanism::TcgSoftware);
    let ratios = serde_json::json!({
        "anchor_profile": anchor.profile.clone(),
        "self_burst_latency_s": burst,
        "self_sr_latency_s": lat(Mechanism::SelfSr),
        "self_sr_latency_s_lpddr": schedule_destruction(&lpddr, Mechanism::SelfSr).latency_s,
        "burst_vs_cmd_rowclone": lat(Mechanism::CmdRowclone) / burst,
        "burst_vs_cmd_rowclone_reference": 19.5,
        "burst_vs_cmd_lisa": lat(Mechanism::CmdLisa) / burst,
        "burst_vs_cmd_lisa_reference": 32.6,
        "cmd_dataplant_vs_rowclone": lat(Mechanism::CmdRowclone) / lat(Mechanism::CmdDataplantUe),
        "cmd_dataplant_vs_rowclone_reference": 1.5,
        "cmd_dataplant_vs_lisa": lat(Mechanism::CmdLisa) / lat(Mechanism::CmdDataplantUe),
        "cmd_dataplant_vs_lisa_reference": 2.5,
        "energy_savings_vs_tcg": {
            "cmd_lisa": tcg_energy / energy(Mechanism::CmdLisa),
            "cmd_lisa_reference": 25.0,
            "cmd_rowclone": tcg_energy / energy(Mechanism::CmdRowclone),
            "cmd_rowclone_reference": 45.0,
            "self_dataplant": tcg_energy / energy(Mechanism::SelfBurst),
            "self_dataplant_reference": 114.0,
        },
        "per_row_energy_ratio_baseline_over_uc": anchor.energy.baseline_write / anchor.energy.uc_pla,
        "bus_energy_per_command_nj": anchor.energy.bus_energy_per_command,
    });
    paths.push(write_json_summary(ctx.dir, "coldboot_ratios", &ctx.meta, &ratios).map_err(|e| ctx.io(e))?);

    // static cipher reference overheads
    let mut cipher = Table::new(
        "coldboot_cipher_reference",
        vec!["mechanism", "runtime_performance_pct", "runtime_power_pct", "area_pct"],
    );
    for c in CIPHER_REFERENCES {
        cipher.push_row(vec![
            c.name.to_string(),
            fmt_f64(c.runtime_performance_pct),
            fmt_f64(c.runtime_power_pct),
            fmt_f64(c.area_pct),
        ]);
    }
    paths.push(cipher.write(ctx.dir, &ctx.meta, ctx.opts.format).map_err(|e| ctx.io(e))?);

    // command-trace dump of the anchor profile, validated for legality
    let trace = generate_trace(&anchor, Mechanism::CmdDataplantUc, 4096);
    validate_trace(&trace, anchor.destruction.t_rrd, anchor.destruction.t_faw)
        .map_err(|e| format!("trace legality: {e}"))?;
    let mut trace_table = Table::new("coldboot_trace", vec!["time_ns", "bank", "row_index"]);
    for op in &trace {
        trace_table.push_row(vec![
            fmt_f64(op.time_ns),
            op.bank.to_string(),
            op.row_index.to_string(),
        ]);
    }
    paths.push(trace_table.write(ctx.dir, &ctx.meta, ctx.opts.format).map_err(|e| ctx.io(e))?);
    Ok(paths)
}
