//! Before/after intra-Jaccard distribution across an accelerated-aging
//! drift of the fabrication offsets, at several drift magnitudes.

use super::{Context, ExperimentResult};
use crate::output::{fmt_f64, Table};
use dataplant_core::primitives::PrimitiveTag;
use dataplant_core::puf::{aging_experiment, FilterPolicy};

pub fn run(ctx: &Context) -> ExperimentResult {
    let segments = if ctx.opts.full { 32 } else { 16 };
    let probes = 4;
    let base = ctx.cfg.variation.aging_drift_sigma;
    let mut table =
        Table::new("aging", vec!["drift_sigma_volts", "pair_id", "index"]);
    for multiplier in [0.0, 0.5, 1.0, 2.0] {
        let report = aging_experiment(
            ctx.cfg,
            segments,
            probes,
            base * multiplier,
            &FilterPolicy::conservative(),
            PrimitiveTag::UcPla,
        )
        .map_err(|e| format!("aging drift x{multiplier}: {e}"))?;
        for (i, j) in report.indices.iter().enumerate() {
            table.push_row(vec![
                fmt_f64(report.drift_sigma_volts),
                i.to_string(),
                fmt_f64(*j),
            ]);
        }
    }
    let path = table.write(ctx.dir, &ctx.meta, ctx.opts.format).map_err(|e| ctx.io(e))?;
    Ok(vec![path])
}
