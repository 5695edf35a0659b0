//! Per-row latency/energy table of every in-DRAM primitive, with the
//! reduction factors relative to the overwrite baseline. The constants are
//! model inputs; the report pipeline re-verifies their definitional
//! identities (generation + overwrite splits) before emitting them.

use super::{Context, ExperimentResult};
use crate::output::{fmt_f64, Table};

struct Row {
    primitive: &'static str,
    latency_ns: f64,
    energy_nj: f64,
    generate_nj: Option<f64>,
    writeback_nj: Option<f64>,
}

pub fn run(ctx: &Context) -> ExperimentResult {
    let t = &ctx.cfg.timing;
    let e = &ctx.cfg.energy;
    let d = &ctx.cfg.destruction;

    // definitional identities of the split energies
    let ue_total = e.ue_sa_generate + e.ue_sa_writeback;
    if (ue_total - e.activation).abs() > 1e-9 {
        return Err(format!(
            "activation-class energy split violated: {} + {} != {}",
            e.ue_sa_generate, e.ue_sa_writeback, e.activation
        ));
    }
    let dt_total = e.d_tran_generate + e.d_tran_writeback;

    let rows = [
        Row {
            primitive: "baseline",
            latency_ns: d.baseline_row_ns,
            energy_nj: e.baseline_write,
            generate_nj: None,
            writeback_nj: None,
        },
        Row {
            primitive: "lisa_clone",
            latency_ns: d.lisa_row_ns,
            energy_nj: e.lisa,
            generate_nj: None,
            writeback_nj: None,
        },
        Row {
            primitive: "rowclone",
            latency_ns: d.rowclone_row_ns,
            energy_nj: e.rowclone,
            generate_nj: None,
            writeback_nj: None,
        },
        Row {
            primitive: "activation",
            latency_ns: t.act_latency,
            energy_nj: e.activation,
            generate_nj: None,
            writeback_nj: None,
        },
        Row {
            primitive: "precharge",
            latency_ns: t.pre_latency,
            energy_nj: e.precharge,
            generate_nj: None,
            writeback_nj: None,
        },
        Row {
            primitive: "ue_sa",
            latency_ns: t.act_latency,
            energy_nj: ue_total,
            generate_nj: Some(e.ue_sa_generate),
            writeback_nj: Some(e.ue_sa_writeback),
        },
        Row {
            primitive: "uc_pla",
            latency_ns: t.pre_latency,
            energy_nj: e.uc_pla,
            generate_nj: None,
            writeback_nj: None,
        },
        Row {
            primitive: "d_tran",
            latency_ns: t.act_latency,
            energy_nj: dt_total,
            generate_nj: Some(e.d_tran_generate),
            writeback_nj: Some(e.d_tran_writeback),
        },
    ];

    let mut table = Table::new(
        "primitives",
        vec![
            "primitive",
            "latency_ns",
            "energy_nj",
            "generate_nj",
            "writeback_nj",
            "latency_reduction_x",
            "energy_reduction_x",
        ],
    );
    for row in &rows {
        table.push_row(vec![
            row.primitive.to_string(),
            fmt_f64(row.latency_ns),
            fmt_f64(row.energy_nj),
            row.generate_nj.map(fmt_f64).unwrap_or_default(),
            row.writeback_nj.map(fmt_f64).unwrap_or_default(),
            fmt_f64(d.baseline_row_ns / row.latency_ns),
            fmt_f64(e.baseline_write / row.energy_nj),
        ]);
    }
    let path = table.write(ctx.dir, &ctx.meta, ctx.opts.format).map_err(|e| ctx.io(e))?;
    Ok(vec![path])
}
