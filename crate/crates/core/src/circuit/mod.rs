//! Behavioral cell/bitline/sense-amp model.
//!
//! Transistor-level transient dynamics are reduced to a sign-decision
//! model: the amplification outcome of a sensing is `sign(deviation +
//! offset + noise)`. Everything downstream (PUF responses, Monte Carlo
//! unpredictability, destruction results) only depends on that decision
//! and on the charge-sharing arithmetic, not on waveform shapes.

mod ops;
mod state;
mod waveform;

pub use ops::{charge_share, leak, sense};
pub use state::{BitlinePair, CellState, Ledger, RowBuffer, SenseAmpInstance, SubarrayId, SubarrayState};
pub use waveform::{waveform_of, Action, CommandKind, CommandWaveform, Signal, WaveformEvent};
