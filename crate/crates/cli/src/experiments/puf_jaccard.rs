//! Intra/inter Jaccard distributions of the cell-variation PUF against the
//! reduced-timing latency-PUF foil, with and without filtering.

use super::{Context, ExperimentResult};
use crate::output::{fmt_f64, write_json_summary, Table};
use dataplant_core::primitives::PrimitiveTag;
use dataplant_core::puf::{
    auth_rates, intra_inter_distributions, FilterPolicy, JaccardReport, PufVariant,
};

pub const SEGMENTS: usize = 16;

struct VariantRun {
    label: &'static str,
    variant: PufVariant,
    pairs: usize,
}

pub fn run(ctx: &Context) -> ExperimentResult {
    let pairs = if ctx.opts.full { 20_000 } else { 10_000 };
    let foil_pairs = if ctx.opts.full { 10_000 } else { 2_000 };
    let runs = [
        VariantRun {
            label: "dataplant_uc_pla",
            variant: PufVariant::Dataplant(PrimitiveTag::UcPla),
            pairs,
        },
        VariantRun {
            label: "latency_puf_nofilter",
            variant: PufVariant::LatencyFoil { filter: None },
            pairs: foil_pairs,
        },
        VariantRun {
            label: "latency_puf_filtered",
            variant: PufVariant::LatencyFoil {
                filter: Some(FilterPolicy { reads: 100, keep_threshold: 0.9 }),
            },
            pairs: foil_pairs.min(500),
        },
    ];

    let mut table = Table::new("jaccard_pairs", vec!["variant", "kind", "pair_id", "index"]);
    let mut summary = serde_json::Map::new();
    for run in &runs {
        let report = intra_inter_distributions(
            ctx.cfg,
            SEGMENTS,
            run.pairs,
            &FilterPolicy::conservative(),
            run.variant,
        )
        .map_err(|e| format!("{}: {e}", run.label))?;
        for (i, j) in report.intra.iter().enumerate() {
            table.push_row(vec![
                run.label.to_string(),
                "intra".to_string(),
                i.to_string(),
                fmt_f64(*j),
            ]);
        }
        for (i, j) in report.inter.iter().enumerate() {
            table.push_row(vec![
                run.label.to_string(),
                "inter".to_string(),
                i.to_string(),
                fmt_f64(*j),
            ]);
        }
        summary.insert(run.label.to_string(), summarize(&report));
    }

    // exact-match authentication rates over the same device
    let auth_trials = if ctx.opts.full { 20_000 } else { 10_000 };
    let auth = auth_rates(ctx.cfg, auth_trials, &FilterPolicy::enrollment(), PrimitiveTag::UcPla)
        .map_err(|e| format!("authentication rates: {e}"))?;
    summary.insert(
        "authentication".to_string(),
        serde_json::json!({
            "trials": auth.trials,
            "frr": auth.frr,
            "far": auth.far,
            "repeatability": auth.repeatability,
        }),
    );

    let mut paths = vec![table.write(ctx.dir, &ctx.meta, ctx.opts.format).map_err(|e| ctx.io(e))?];
    paths.push(
        write_json_summary(
            ctx.dir,
            "jaccard_summary",
            &ctx.meta,
            &serde_json::Value::Object(summary),
        )
        .map_err(|e| ctx.io(e))?,
    );
    Ok(paths)
}

fn histogram(values: &[f64]) -> Vec<usize> {
    let mut bins = vec![0usize; 10];
    for &v in values {
        let idx = ((v * 10.0).floor() as usize).min(9);
        bins[idx] += 1;
    }
    bins
}

fn summarize(report: &JaccardReport) -> serde_json::Value {
    serde_json::json!({
        "pairs": report.pair_count,
        "median_intra": report.median_intra(),
        "median_inter": report.median_inter(),
        "intra_iqr": report.intra_iqr(),
        "intra_histogram": histogram(&report.intra),
        "inter_histogram": histogram(&report.inter),
    })
}
