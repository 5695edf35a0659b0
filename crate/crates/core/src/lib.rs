//! Behavioral model of DRAM security primitives.
//!
//! The crate simulates, at desk scale, the three in-DRAM value-generation
//! primitives (`UE-SA`, `UC-PLA`, `D-TRAN`) together with the mechanisms
//! built on top of them:
//!
//! * [`model`] — device configuration, addressing, and the deterministic
//!   process-variation sampler every other module draws from.
//! * [`circuit`] — charge sharing, sense amplification with variation
//!   offsets, retention leakage, and command waveforms.
//! * [`primitives`] — the value-generation primitives with their
//!   latency/energy receipts and the mode-register hybrid selection.
//! * [`puf`] — challenge/response evaluation, Jaccard statistics,
//!   temperature/aging sweeps, retention-decay emulation, and
//!   authentication rates.
//! * [`randomness`] — Von Neumann extraction and the SP 800-22
//!   statistical test suite.
//! * [`coldboot`] — data-destruction scheduling, energy accounting, and
//!   the power-on command-filter state machine.
//!
//! All randomness is derived from a single master seed through
//! [`model::derive_component_seed`], so every result is reproducible
//! bit-for-bit across runs and thread counts.

pub mod bits;
pub mod circuit;
pub mod coldboot;
pub mod error;
pub mod model;
pub mod montecarlo;
pub mod primitives;
pub mod puf;
pub mod randomness;

pub use bits::BitSequence;
pub use error::{ConfigError, SimError};
pub use model::{Address, DramConfig, EvalCtx, ValidatedConfig};
