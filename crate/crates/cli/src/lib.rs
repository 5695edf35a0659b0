//! Experiment runner: resolves a named experiment against a device
//! configuration and emits its reports deterministically. Output depends
//! only on (configuration, seed, tool version); worker threads never
//! change the bytes produced.

pub mod experiments;
pub mod output;

use dataplant_core::model::DramConfig;
use dataplant_core::ValidatedConfig;
use experiments::{Context, RunOptions};
use output::{OutputFormat, ReportMeta};
use std::path::PathBuf;

/// One experiment invocation.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub name: String,
    pub config_path: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub seed: Option<u64>,
    pub format: OutputFormat,
    pub full: bool,
    pub threads: Option<usize>,
}

#[derive(Debug)]
pub enum RunError {
    /// Bad configuration or unknown experiment (exit code 1).
    Config(String),
    /// Failure inside the experiment (exit code 2).
    Internal(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(m) => write!(f, "config error: {m}"),
            RunError::Internal(m) => write!(f, "experiment failed: {m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 1,
            RunError::Internal(_) => 2,
        }
    }
}

type Runner = fn(&Context) -> experiments::ExperimentResult;

const EXPERIMENTS: [(&str, &str, Runner); 10] = [
    (
        "primitives",
        "per-row latency/energy of every primitive with reduction factors vs the overwrite baseline",
        experiments::primitives::run,
    ),
    (
        "mc-unpredictability",
        "Monte Carlo fraction of zero-generating sense amps per process-variation level and temperature",
        experiments::mc::run,
    ),
    (
        "puf-jaccard",
        "intra/inter Jaccard distributions plus exact-match authentication rates, against the latency-PUF foil",
        experiments::puf_jaccard::run,
    ),
    (
        "puf-temperature",
        "intra-Jaccard similarity of 30C enrollments probed at higher temperatures",
        experiments::puf_temperature::run,
    ),
    (
        "puf-aging",
        "before/after intra-Jaccard distribution under accelerated-aging offset drift",
        experiments::puf_aging::run,
    ),
    (
        "puf-time",
        "evaluation-time comparison of the PUF classes from the calibrated per-read cost",
        experiments::puf_time::run,
    ),
    (
        "retention",
        "refresh-disable emulation: coverage and unpredictable fraction per wait/temperature",
        experiments::retention::run,
    ),
    (
        "nist",
        "statistical test suite over the extracted device-wide response stream",
        experiments::nist::run,
    ),
    (
        "coldboot",
        "whole-DRAM destruction latency/energy per mechanism and capacity, with headline ratios",
        experiments::coldboot::run,
    ),
    (
        "dealloc",
        "per-deallocation latency/energy cost of each mechanism over a range of sizes",
        experiments::dealloc::run,
    ),
];

/// Complete, stable-ordered experiment listing.
pub fn list_experiments() -> Vec<(&'static str, &'static str)> {
    EXPERIMENTS.iter().map(|(name, desc, _)| (*name, *desc)).collect()
}

fn resolve(name: &str) -> Result<Runner, RunError> {
    if let Some((_, _, runner)) = EXPERIMENTS.iter().find(|(n, _, _)| *n == name) {
        return Ok(*runner);
    }
    let suggestion = EXPERIMENTS
        .iter()
        .map(|(n, _, _)| (*n, edit_distance(name, n)))
        .min_by_key(|(_, d)| *d)
        .map(|(n, _)| n)
        .unwrap();
    Err(RunError::Config(format!(
        "unknown experiment '{name}'; did you mean '{suggestion}'? (see `dataplant list`)"
    )))
}

fn edit_distance(a: &str, b: &str) -> usize {
    let (a, b): (Vec<char>, Vec<char>) = (a.chars().collect(), b.chars().collect());
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for i in 1..=a.len() {
        cur[0] = i;
        for j in 1..=b.len() {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Loads, validates, and seed-overrides the device configuration.
pub fn load_config(spec: &ExperimentSpec) -> Result<ValidatedConfig, RunError> {
    let mut raw = match &spec.config_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| RunError::Config(format!("reading {}: {e}", path.display())))?;
            DramConfig::from_json(&text).map_err(|e| RunError::Config(e.to_string()))?
        }
        None => DramConfig::ddr3_1600_desk(),
    };
    if let Some(seed) = spec.seed {
        raw.variation.master_seed = seed;
    }
    raw.validate().map_err(|e| RunError::Config(e.to_string()))
}

/// Runs the experiment; returns the paths of the files written.
pub fn run(spec: &ExperimentSpec) -> Result<Vec<PathBuf>, RunError> {
    let runner = resolve(&spec.name)?;
    let cfg = load_config(spec)?;
    std::fs::create_dir_all(&spec.out_dir)
        .map_err(|e| RunError::Config(format!("creating {}: {e}", spec.out_dir.display())))?;
    let ctx = Context {
        cfg: &cfg,
        meta: ReportMeta::new(&cfg, &spec.name),
        dir: &spec.out_dir,
        opts: RunOptions { full: spec.full, format: spec.format },
    };
    // a local pool keeps repeated runs in one process independent
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.threads.unwrap_or(0))
        .build()
        .map_err(|e| RunError::Internal(format!("thread pool: {e}")))?;
    pool.install(|| runner(&ctx)).map_err(RunError::Internal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_is_complete_and_stable() {
        let list = list_experiments();
        assert_eq!(list.len(), 10);
        assert_eq!(list[0].0, "primitives");
        assert_eq!(list[9].0, "dealloc");
        assert!(list.iter().all(|(_, d)| !d.is_empty()));
    }

    #[test]
    fn unknown_name_suggests_a_close_match() {
        let err = resolve("cold-boot").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("coldboot"), "{msg}");
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn edit_distance_basics() {
        assert_eq!(edit_distance("nist", "nist"), 0);
        assert_eq!(edit_distance("nistt", "nist"), 1);
        assert_eq!(edit_distance("", "abc"), 3);
    }
}
