//! Report writers. Every primary output embeds the tool version, the
//! SHA-256 of the canonical configuration, the master seed, and a schema
//! version, so identical specs produce byte-identical files.

use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// Report provenance stamped into every output file.
#[derive(Debug, Clone, Serialize)]
pub struct ReportMeta {
    pub tool_version: String,
    pub schema_version: u32,
    pub config_sha256: String,
    pub master_seed: u64,
    pub profile: String,
    pub experiment: String,
}

impl ReportMeta {
    pub fn new(cfg: &dataplant_core::ValidatedConfig, experiment: &str) -> Self {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(cfg.canonical_json().as_bytes());
        let config_sha256 = digest.iter().fold(String::new(), |mut acc, b| {
            let _ = write!(acc, "{b:02x}");
            acc
        });
        ReportMeta {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            schema_version: SCHEMA_VERSION,
            config_sha256,
            master_seed: cfg.variation.master_seed,
            profile: cfg.profile.clone().unwrap_or_else(|| "custom".to_string()),
            experiment: experiment.to_string(),
        }
    }
}

/// A table with a fixed column order plus display-formatted cells.
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: Vec<&'static str>) -> Self {
        Table { name: name.to_string(), columns, rows: Vec::new() }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len(), "table {}", self.name);
        self.rows.push(row);
    }

    fn to_csv(&self, meta: &ReportMeta) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# tool_version={}", meta.tool_version);
        let _ = writeln!(out, "# schema_version={}", meta.schema_version);
        let _ = writeln!(out, "# experiment={}", meta.experiment);
        let _ = writeln!(out, "# profile={}", meta.profile);
        let _ = writeln!(out, "# master_seed={}", meta.master_seed);
        let _ = writeln!(out, "# config_sha256={}", meta.config_sha256);
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    fn to_json(&self, meta: &ReportMeta) -> String {
        #[derive(Serialize)]
        struct JsonReport<'a> {
            meta: &'a ReportMeta,
            table: &'a str,
            columns: &'a [&'static str],
            rows: Vec<serde_json::Map<String, serde_json::Value>>,
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut map = serde_json::Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    // numbers stay numbers when they parse as such
                    let value = cell
                        .parse::<i64>()
                        .map(serde_json::Value::from)
                        .or_else(|_| cell.parse::<f64>().map(serde_json::Value::from))
                        .unwrap_or_else(|_| serde_json::Value::String(cell.clone()));
                    map.insert((*col).to_string(), value);
                }
                map
            })
            .collect();
        let report = JsonReport { meta, table: &self.name, columns: &self.columns, rows };
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        text
    }

    /// Writes the table as `<dir>/<name>.<ext>` and returns the path.
    pub fn write(
        &self,
        dir: &Path,
        meta: &ReportMeta,
        format: OutputFormat,
    ) -> std::io::Result<PathBuf> {
        let (ext, body) = match format {
            OutputFormat::Csv => ("csv", self.to_csv(meta)),
            OutputFormat::Json => ("json", self.to_json(meta)),
        };
        let path = dir.join(format!("{}.{ext}", self.name));
        std::fs::write(&path, body)?;
        Ok(path)
    }
}

/// Shortest-roundtrip float formatting shared by all tables.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v}")
    }
}

/// Writes a free-form JSON value with the standard meta envelope.
pub fn write_json_summary(
    dir: &Path,
    name: &str,
    meta: &ReportMeta,
    value: &serde_json::Value,
) -> std::io::Result<PathBuf> {
    let envelope = serde_json::json!({ "meta": meta, "summary": value });
    let path = dir.join(format!("{name}.json"));
    let mut text = serde_json::to_string_pretty(&envelope).expect("summary serializes");
    text.push('\n');
    std::fs::write(&path, text)?;
    Ok(path)
}
