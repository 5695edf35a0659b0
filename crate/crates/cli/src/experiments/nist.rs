//! Statistical-suite report: responses pooled across synthetic chip
//! profiles, positions encoded within cache lines, whitened with the
//! pairwise extractor, then run through the fifteen tests.

use super::{Context, ExperimentResult};
use crate::output::{fmt_f64, write_json_summary, Table};
use dataplant_core::model::EvalCtx;
use dataplant_core::puf::scan_chip_population;
use dataplant_core::randomness::{nist_suite, positions_to_bitstream, von_neumann, NistParams, TestStatus};

pub const CACHELINE_BITS: u32 = 512;

pub fn run(ctx: &Context) -> ExperimentResult {
    let chips = if ctx.opts.full { 8 } else { 5 };
    let responses = scan_chip_population(ctx.cfg, chips, &EvalCtx::nominal(0))
        .map_err(|e| format!("device scan: {e}"))?;
    let raw = positions_to_bitstream(&responses, CACHELINE_BITS)
        .map_err(|e| format!("position encoding: {e}"))?;
    let extracted = von_neumann(&raw);
    let results = nist_suite(&extracted, &NistParams::default());

    let mut table = Table::new(
        "nist_results",
        vec!["test", "p_value", "min_p", "parts", "result", "parameters"],
    );
    for r in &results {
        let status = match r.status() {
            TestStatus::Pass => "PASS",
            TestStatus::Fail => "FAIL",
            TestStatus::Skipped => "SKIP",
        };
        table.push_row(vec![
            r.test_name.clone(),
            fmt_f64(r.p_value),
            fmt_f64(r.min_p()),
            r.p_values.len().to_string(),
            status.to_string(),
            r.skipped.clone().unwrap_or_else(|| r.parameters.clone()),
        ]);
    }
    let mut paths = vec![table.write(ctx.dir, &ctx.meta, ctx.opts.format).map_err(|e| ctx.io(e))?];
    let summary = serde_json::json!({
        "chips": chips,
        "segments": responses.len(),
        "positions": responses.iter().map(|r| r.len()).sum::<usize>(),
        "raw_bits": raw.len(),
        "extracted_bits": extracted.len(),
        "extracted_ones_fraction": extracted.count_ones() as f64 / extracted.len().max(1) as f64,
        "all_pass": results.iter().all(|r| r.pass),
    });
    paths.push(write_json_summary(ctx.dir, "nist_stream", &ctx.meta, &summary).map_err(|e| ctx.io(e))?);
    Ok(paths)
}
