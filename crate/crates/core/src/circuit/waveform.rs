//! Internal-signal orderings of the standard and value-generation commands.
//!
//! Only the event ordering matters: the activation-class generation fires
//! the sense amps with the wordline still low (so the cell never disturbs
//! the bitline), while the precharge-class generation raises the wordline
//! together with the precharge logic (so the cell is dragged to Vdd/2).

use crate::error::SimError;
use crate::model::TimingParams;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Signal {
    Wordline,
    SenseAmp,
    PrechargeLogic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Raise,
    Lower,
    Trigger,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveformEvent {
    pub signal: Signal,
    pub action: Action,
    pub time_ns: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CommandKind {
    Act,
    Pre,
    UeSa,
    UeSaWriteback,
    UcPla,
    DTran,
}

impl CommandKind {
    pub const ALL: [CommandKind; 6] = [
        CommandKind::Act,
        CommandKind::Pre,
        CommandKind::UeSa,
        CommandKind::UeSaWriteback,
        CommandKind::UcPla,
        CommandKind::DTran,
    ];
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CommandKind::Act => "ACT",
            CommandKind::Pre => "PRE",
            CommandKind::UeSa => "UE_SA",
            CommandKind::UeSaWriteback => "UE_SA_WRITEBACK",
            CommandKind::UcPla => "UC_PLA",
            CommandKind::DTran => "D_TRAN",
        };
        f.write_str(s)
    }
}

impl FromStr for CommandKind {
    type Err = SimError;
    fn from_str(s: &str) -> Result<Self, SimError> {
        match s {
            "ACT" => Ok(CommandKind::Act),
            "PRE" => Ok(CommandKind::Pre),
            "UE_SA" => Ok(CommandKind::UeSa),
            "UE_SA_WRITEBACK" => Ok(CommandKind::UeSaWriteback),
            "UC_PLA" => Ok(CommandKind::UcPla),
            "D_TRAN" => Ok(CommandKind::DTran),
            other => Err(SimError::UnknownCommand(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandWaveform {
    pub kind: CommandKind,
    pub events: Vec<WaveformEvent>,
}

impl CommandWaveform {
    /// CSV dump (`signal,action,time_ns`) for plotting signal traces.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("signal,action,time_ns\n");
        for ev in &self.events {
            let signal = match ev.signal {
                Signal::Wordline => "wordline",
                Signal::SenseAmp => "sense_amp",
                Signal::PrechargeLogic => "precharge_logic",
            };
            let action = match ev.action {
                Action::Raise => "raise",
                Action::Lower => "lower",
                Action::Trigger => "trigger",
            };
            out.push_str(&format!("{signal},{action},{}\n", ev.time_ns));
        }
        out
    }

    fn first_time(&self, signal: Signal, action: Action) -> Option<f64> {
        self.events
            .iter()
            .filter(|e| e.signal == signal && e.action == action)
            .map(|e| e.time_ns)
            .fold(None, |acc, t| Some(acc.map_or(t, |a: f64| a.min(t))))
    }

    /// Checks the ordering invariants of this command class.
    pub fn check_invariants(&self) -> Result<(), SimError> {
        let wl_raise = self.first_time(Signal::Wordline, Action::Raise);
        let sa_trig = self.first_time(Signal::SenseAmp, Action::Trigger);
        let pre_trig = self.first_time(Signal::PrechargeLogic, Action::Trigger);
        let ok = match self.kind {
            CommandKind::Act => match (wl_raise, sa_trig) {
                (Some(wl), Some(sa)) => wl < sa,
                _ => false,
            },
            CommandKind::UeSa => sa_trig.is_some() && wl_raise.is_none(),
            CommandKind::UeSaWriteback | CommandKind::DTran => match (wl_raise, sa_trig) {
                (Some(wl), Some(sa)) => sa < wl,
                (None, Some(_)) => true,
                _ => false,
            },
            CommandKind::UcPla => match (wl_raise, pre_trig) {
                (Some(wl), Some(pre)) => wl == pre,
                _ => false,
            },
            CommandKind::Pre => pre_trig.is_some() && wl_raise.is_none(),
        };
        if ok {
            Ok(())
        } else {
            Err(SimError::UnknownCommand(format!("waveform ordering violated for {}", self.kind)))
        }
    }
}

/// Event list of one command kind under the given timing.
pub fn waveform_of(kind: CommandKind, timing: &TimingParams) -> CommandWaveform {
    use Action::*;
    use Signal::*;
    let ev = |signal, action, time_ns| WaveformEvent { signal, action, time_ns };
    // the charge-share window between wordline raise and sensing
    let share = (timing.t_rcd * 0.25).max(1.0);
    let events = match kind {
        CommandKind::Act => vec![
            ev(Wordline, Raise, 0.0),
            ev(SenseAmp, Trigger, share),
            ev(Wordline, Lower, timing.t_ras),
        ],
        CommandKind::Pre => vec![
            ev(Wordline, Lower, 0.0),
            ev(PrechargeLogic, Trigger, 0.5),
        ],
        CommandKind::UeSa => vec![ev(SenseAmp, Trigger, 0.0)],
        CommandKind::UeSaWriteback => vec![
            ev(SenseAmp, Trigger, 0.0),
            ev(Wordline, Raise, share),
            ev(Wordline, Lower, timing.act_latency),
        ],
        CommandKind::UcPla => vec![
            ev(Wordline, Raise, 0.0),
            ev(PrechargeLogic, Trigger, 0.0),
            ev(Wordline, Lower, timing.pre_latency),
        ],
        CommandKind::DTran => vec![
            ev(SenseAmp, Trigger, 0.0),
            ev(Wordline, Raise, share),
            ev(Wordline, Lower, timing.act_latency),
        ],
    };
    CommandWaveform { kind, events }
}
