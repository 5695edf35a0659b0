//! Randomness extraction and statistical testing.

pub mod nist;
mod encode;
mod von_neumann;

pub use encode::positions_to_bitstream;
pub use nist::{nist_suite, NistParams, NistResult, TestStatus};
pub use von_neumann::von_neumann;
