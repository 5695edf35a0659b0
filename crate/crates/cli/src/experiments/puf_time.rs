//! Evaluation-time comparison of the PUF classes, anchored on a single
//! measured per-read platform cost.

use super::{Context, ExperimentResult};
use crate::output::{fmt_f64, Table};
use dataplant_core::puf::{evaluation_time, FilterPolicy, PufTimingKind};

pub fn run(ctx: &Context) -> ExperimentResult {
    let timing = &ctx.cfg.timing;
    let puf = &ctx.cfg.puf;
    let single = FilterPolicy::single();
    let filter5 = FilterPolicy { reads: 5, keep_threshold: 0.9 };
    let rows: [(&str, PufTimingKind, usize, &FilterPolicy); 4] = [
        ("latency_puf", PufTimingKind::LatencyPuf, 100, &single),
        ("prelat_puf", PufTimingKind::PrelatPuf, 1, &single),
        ("dataplant_filtered", PufTimingKind::DataplantFiltered, 5, &filter5),
        ("dataplant_nofilter", PufTimingKind::DataplantNofilter, 1, &single),
    ];
    let nofilter_ms =
        evaluation_time(PufTimingKind::DataplantNofilter, &single, timing, puf);
    let mut table = Table::new(
        "puf_evaluation_time",
        vec!["puf", "reads", "duration_ms", "ratio_vs_dataplant_nofilter"],
    );
    for (label, kind, reads, filter) in rows {
        let ms = evaluation_time(kind, filter, timing, puf);
        table.push_row(vec![
            label.to_string(),
            reads.to_string(),
            fmt_f64(ms),
            fmt_f64(ms / nofilter_ms),
        ]);
    }
    let path = table.write(ctx.dir, &ctx.meta, ctx.opts.format).map_err(|e| ctx.io(e))?;
    Ok(vec![path])
}
