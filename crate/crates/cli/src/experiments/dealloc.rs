//! Per-deallocation latency/energy cost model (single-range scale, no
//! power-window effects).

use super::{Context, ExperimentResult};
use crate::output::{fmt_f64, Table};
use dataplant_core::coldboot::{dealloc_cost, Mechanism};

pub const SIZES: [u64; 5] = [4 << 10, 8 << 10, 16 << 10, 64 << 10, 1 << 20];

const MECHANISMS: [Mechanism; 5] = [
    Mechanism::CmdBaseline,
    Mechanism::CmdLisa,
    Mechanism::CmdRowclone,
    Mechanism::CmdDataplantUe,
    Mechanism::CmdDataplantUc,
];

pub fn run(ctx: &Context) -> ExperimentResult {
    let mut table =
        Table::new("dealloc_costs", vec!["bytes", "mechanism", "latency_ns", "energy_nj"]);
    for &bytes in &SIZES {
        for mechanism in MECHANISMS {
            let (latency_ns, energy_nj) = dealloc_cost(ctx.cfg, bytes, mechanism);
            table.push_row(vec![
                bytes.to_string(),
                mechanism.to_string(),
                fmt_f64(latency_ns),
                fmt_f64(energy_nj),
            ]);
        }
    }
    let path = table.write(ctx.dir, &ctx.meta, ctx.opts.format).map_err(|e| ctx.io(e))?;
    Ok(vec![path])
}
