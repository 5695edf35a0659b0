use thiserror::Error;

/// Configuration validation failure. The message names the first violated
/// invariant so a bad config file can be fixed from the diagnostic alone.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invariant(String),
}

impl ConfigError {
    pub fn invariant(msg: impl Into<String>) -> Self {
        ConfigError::Invariant(msg.into())
    }
}

/// Simulation-time failure (protocol violations, out-of-range requests).
#[derive(Debug, Error)]
pub enum SimError {
    #[error("activate on a non-precharged subarray")]
    NotPrecharged,
    #[error("address out of range: {0}")]
    AddressOutOfRange(String),
    #[error("segment out of range: {0}")]
    SegmentOutOfRange(String),
    #[error("partition index {0} out of range (0..13)")]
    PartitionOutOfRange(usize),
    #[error("unknown command kind: {0}")]
    UnknownCommand(String),
    #[error("unknown mechanism: {0}")]
    UnknownMechanism(String),
    #[error("population too small: {0}")]
    PopulationTooSmall(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
}
