//! Cold-boot destruction mechanisms: scheduling, energy accounting, the
//! power-on command-filter state machine, and deallocation costs.

mod fsm;
mod schedule;

pub use fsm::{
    enumerate_sequences, DramFsm, Disposition, EnumerationOutcome, ExtCommand, FsmEvent, FsmState,
    FsmVariant,
};
pub use schedule::{
    compare_mechanisms, dealloc_cost, destruction_energy_joules, generate_trace,
    schedule_destruction, validate_trace, CipherReference, DestructionReport, RowOp,
    CIPHER_REFERENCES,
};

use crate::error::SimError;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A whole-DRAM destruction mechanism.
///
/// `Self*` mechanisms run inside the DRAM chip and issue no external bus
/// commands; `Cmd*` mechanisms are driven row by row from the memory
/// controller; `TcgSoftware` is the firmware overwrite baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mechanism {
    TcgSoftware,
    CmdBaseline,
    CmdLisa,
    CmdRowclone,
    CmdDataplantUe,
    CmdDataplantUc,
    SelfSr,
    SelfBurst,
}

impl Mechanism {
    pub const ALL: [Mechanism; 8] = [
        Mechanism::TcgSoftware,
        Mechanism::CmdBaseline,
        Mechanism::CmdLisa,
        Mechanism::CmdRowclone,
        Mechanism::CmdDataplantUe,
        Mechanism::CmdDataplantUc,
        Mechanism::SelfSr,
        Mechanism::SelfBurst,
    ];

    /// Issues external bus commands (one per row operation).
    pub fn is_command_based(self) -> bool {
        matches!(
            self,
            Mechanism::TcgSoftware
                | Mechanism::CmdBaseline
                | Mechanism::CmdLisa
                | Mechanism::CmdRowclone
                | Mechanism::CmdDataplantUe
                | Mechanism::CmdDataplantUc
        )
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mechanism::TcgSoftware => "TCG_SOFTWARE",
            Mechanism::CmdBaseline => "CMD_BASELINE",
            Mechanism::CmdLisa => "CMD_LISA",
            Mechanism::CmdRowclone => "CMD_ROWCLONE",
            Mechanism::CmdDataplantUe => "CMD_DATAPLANT_UE",
            Mechanism::CmdDataplantUc => "CMD_DATAPLANT_UC",
            Mechanism::SelfSr => "SELF_SR",
            Mechanism::SelfBurst => "SELF_BURST",
        };
        f.write_str(s)
    }
}

impl FromStr for Mechanism {
    type Err = SimError;
    fn from_str(s: &str) -> Result<Self, SimError> {
        Mechanism::ALL
            .into_iter()
            .find(|m| m.to_string() == s)
            .ok_or_else(|| SimError::UnknownMechanism(s.to_string()))
    }
}
