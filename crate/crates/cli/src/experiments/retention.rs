//! Refresh-disable emulation: coverage (cells settled at the precharge
//! level) and the unpredictable fraction of the emulated responses.

use super::{Context, ExperimentResult};
use crate::output::{fmt_f64, Table};
use dataplant_core::puf::retention_emulation;

pub fn run(ctx: &Context) -> ExperimentResult {
    let segments = if ctx.opts.full { 128 } else { 32 };
    let scenarios: &[(f64, f64)] = if ctx.opts.full {
        &[(6.0, 30.0), (12.0, 30.0), (24.0, 30.0), (48.0, 30.0), (96.0, 30.0), (4.0, 85.0), (2.0, 85.0)]
    } else {
        &[(12.0, 30.0), (24.0, 30.0), (48.0, 30.0), (4.0, 85.0)]
    };
    let mut table = Table::new(
        "retention",
        vec![
            "wait_hours",
            "temperature_c",
            "total_cells",
            "covered_cells",
            "coverage",
            "unpredictable_fraction",
        ],
    );
    for &(hours, temp) in scenarios {
        let out = retention_emulation(ctx.cfg, segments, hours, temp)
            .map_err(|e| format!("retention {hours}h at {temp}C: {e}"))?;
        table.push_row(vec![
            fmt_f64(out.wait_hours),
            fmt_f64(out.temperature_c),
            out.total_cells.to_string(),
            out.covered_cells.to_string(),
            fmt_f64(out.coverage),
            fmt_f64(out.unpredictable_fraction),
        ]);
    }
    let path = table.write(ctx.dir, &ctx.meta, ctx.opts.format).map_err(|e| ctx.io(e))?;
    Ok(vec![path])
}
