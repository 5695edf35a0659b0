//! Intra-Jaccard similarity between a 30C enrollment and probes taken at
//! higher temperatures, cell-variation PUF versus the latency-PUF foil.

use super::{Context, ExperimentResult};
use crate::output::{fmt_f64, write_json_summary, Table};
use dataplant_core::primitives::PrimitiveTag;
use dataplant_core::puf::{temperature_sweep, FilterPolicy, PufVariant};

pub const TEMPS: [f64; 5] = [30.0, 45.0, 60.0, 70.0, 85.0];

pub fn run(ctx: &Context) -> ExperimentResult {
    let segments = if ctx.opts.full { 16 } else { 8 };
    let probes = 4;
    let filter = FilterPolicy::conservative();
    let variants: [(&str, PufVariant); 2] = [
        ("dataplant_uc_pla", PufVariant::Dataplant(PrimitiveTag::UcPla)),
        (
            "latency_puf_filtered",
            PufVariant::LatencyFoil {
                filter: Some(FilterPolicy { reads: 100, keep_threshold: 0.9 }),
            },
        ),
    ];
    let mut table =
        Table::new("temperature_sweep", vec!["variant", "temperature_c", "pair_id", "index"]);
    let mut summary = serde_json::Map::new();
    for (label, variant) in variants {
        let points = temperature_sweep(ctx.cfg, segments, probes, &TEMPS, &filter, variant)
            .map_err(|e| format!("{label}: {e}"))?;
        let mut medians = serde_json::Map::new();
        for point in &points {
            for (i, j) in point.indices.iter().enumerate() {
                table.push_row(vec![
                    label.to_string(),
                    fmt_f64(point.temperature_c),
                    i.to_string(),
                    fmt_f64(*j),
                ]);
            }
            let mut sorted = point.indices.clone();
            sorted.sort_by(f64::total_cmp);
            medians.insert(
                format!("{}", point.temperature_c),
                serde_json::json!(sorted[sorted.len() / 2]),
            );
        }
        summary.insert(label.to_string(), serde_json::Value::Object(medians));
    }
    let mut paths = vec![table.write(ctx.dir, &ctx.meta, ctx.opts.format).map_err(|e| ctx.io(e))?];
    paths.push(
        write_json_summary(
            ctx.dir,
            "temperature_summary",
            &ctx.meta,
            &serde_json::Value::Object(summary),
        )
        .map_err(|e| ctx.io(e))?,
    );
    Ok(paths)
}
