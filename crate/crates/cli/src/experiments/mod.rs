//! The named experiments. Each one computes deterministically from the
//! validated configuration and writes its table-shaped reports.

pub mod coldboot;
pub mod dealloc;
pub mod mc;
pub mod nist;
pub mod primitives;
pub mod puf_aging;
pub mod puf_jaccard;
pub mod puf_temperature;
pub mod puf_time;
pub mod retention;

use crate::output::{OutputFormat, ReportMeta};
use dataplant_core::ValidatedConfig;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub full: bool,
    pub format: OutputFormat,
}

pub type ExperimentResult = Result<Vec<PathBuf>, String>;

pub struct Context<'a> {
    pub cfg: &'a ValidatedConfig,
    pub meta: ReportMeta,
    pub dir: &'a Path,
    pub opts: RunOptions,
}

impl Context<'_> {
    pub fn io(&self, e: std::io::Error) -> String {
        format!("writing report in {}: {e}", self.dir.display())
    }
}
