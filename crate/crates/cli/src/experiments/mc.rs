//! Monte Carlo unpredictability per process-variation level and
//! temperature.

use super::{Context, ExperimentResult};
use crate::output::{fmt_f64, Table};
use dataplant_core::montecarlo::sa_unpredictability;

pub const VARIATION_LEVELS: [f64; 4] = [0.02, 0.03, 0.04, 0.05];
pub const TEMPERATURES: [f64; 4] = [30.0, 60.0, 70.0, 85.0];

pub fn run(ctx: &Context) -> ExperimentResult {
    let draws = if ctx.opts.full { 1_000_000 } else { 100_000 };
    let mut table = Table::new(
        "mc_unpredictability",
        vec!["variation_percent", "temperature_c", "draws", "unpredictable", "fraction"],
    );
    let mut points = Vec::new();
    for v in VARIATION_LEVELS {
        points.push(sa_unpredictability(ctx.cfg, v, 30.0, draws));
    }
    for t in TEMPERATURES {
        points.push(sa_unpredictability(ctx.cfg, 0.04, t, draws));
    }
    for p in &points {
        table.push_row(vec![
            fmt_f64(p.variation_percent),
            fmt_f64(p.temperature_c),
            p.draws.to_string(),
            p.unpredictable.to_string(),
            fmt_f64(p.fraction),
        ]);
    }
    let path = table.write(ctx.dir, &ctx.meta, ctx.opts.format).map_err(|e| ctx.io(e))?;
    Ok(vec![path])
}
