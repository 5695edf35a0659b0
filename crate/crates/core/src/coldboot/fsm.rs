//! Power-on destruction state machine.
//!
//! From power-on until the whole device is destroyed, the chip filters out
//! every external command. The self-destruct variant advances on internal
//! refresh ticks; the command-based variant accepts only the sanctioned
//! destruction-sequence command and rejects everything else.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FsmState {
    PoweredOff,
    DestructionInProgress,
    Ready,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FsmVariant {
    SelfDestruct,
    CommandBased,
}

/// External commands as seen by the command filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtCommand {
    Read,
    Write,
    Activate,
    Precharge,
    /// The sanctioned next step of the command-based destruction sequence.
    DestructStep,
}

impl ExtCommand {
    pub fn is_data_command(self) -> bool {
        matches!(self, ExtCommand::Read | ExtCommand::Write)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsmEvent {
    PowerOn,
    External(ExtCommand),
    DestructionTick,
    DestructionComplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Disposition {
    Accepted,
    Rejected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DramFsm {
    pub state: FsmState,
    pub variant: FsmVariant,
    /// Rows destroyed so far in the current power cycle.
    pub progress: usize,
    pub rows_total: usize,
}

impl DramFsm {
    pub fn new(variant: FsmVariant, rows_total: usize) -> Self {
        DramFsm { state: FsmState::PoweredOff, variant, progress: 0, rows_total }
    }

    /// Applies one event; rejection is a return value, not an error.
    pub fn step(&mut self, event: FsmEvent) -> Disposition {
        use Disposition::*;
        use FsmState::*;
        match (self.state, event) {
            (PoweredOff, FsmEvent::PowerOn) => {
                self.state = DestructionInProgress;
                self.progress = 0;
                Accepted
            }
            // redundant power detection while already powered: idempotent
            (_, FsmEvent::PowerOn) => Accepted,
            (PoweredOff, _) => Rejected,
            (DestructionInProgress, FsmEvent::External(cmd)) => match (self.variant, cmd) {
                (FsmVariant::CommandBased, ExtCommand::DestructStep) => {
                    if self.progress < self.rows_total {
                        self.progress += 1;
                    }
                    Accepted
                }
                _ => Rejected,
            },
            (DestructionInProgress, FsmEvent::DestructionTick) => {
                if self.variant == FsmVariant::SelfDestruct && self.progress < self.rows_total {
                    self.progress += 1;
                }
                Accepted
            }
            (DestructionInProgress, FsmEvent::DestructionComplete) => {
                if self.progress >= self.rows_total {
                    self.state = Ready;
                    Accepted
                } else {
                    Rejected
                }
            }
            (Ready, FsmEvent::External(_)) => Accepted,
            (Ready, _) => Accepted,
        }
    }
}

/// Result of the exhaustive event-sequence enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationOutcome {
    pub sequences: u64,
    pub accepted_data_before_ready: u64,
    pub ready_reached: u64,
}

/// Exhaustively enumerates every event sequence of length up to `depth`
/// (power-on, data command, destruction-sequence command, tick, complete)
/// and counts accepted data commands issued before the FSM is READY.
pub fn enumerate_sequences(variant: FsmVariant, rows_total: usize, depth: usize) -> EnumerationOutcome {
    let events = [
        FsmEvent::PowerOn,
        FsmEvent::External(ExtCommand::Read),
        FsmEvent::External(ExtCommand::DestructStep),
        FsmEvent::DestructionTick,
        FsmEvent::DestructionComplete,
    ];
    let mut outcome = EnumerationOutcome { sequences: 0, accepted_data_before_ready: 0, ready_reached: 0 };

    fn dfs(
        fsm: DramFsm,
        remaining: usize,
        events: &[FsmEvent; 5],
        outcome: &mut EnumerationOutcome,
    ) {
        if remaining == 0 {
            outcome.sequences += 1;
            if fsm.state == FsmState::Ready {
                outcome.ready_reached += 1;
            }
            return;
        }
        for &ev in events {
            let mut next = fsm;
            let disp = next.step(ev);
            if disp == Disposition::Accepted
                && fsm.state != FsmState::Ready
                && matches!(ev, FsmEvent::External(cmd) if cmd.is_data_command())
            {
                outcome.accepted_data_before_ready += 1;
            }
            dfs(next, remaining - 1, events, outcome);
        }
    }

    dfs(DramFsm::new(variant, rows_total), depth, &events, &mut outcome);
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn read_rejected_during_destruction() {
        let mut fsm = DramFsm::new(FsmVariant::SelfDestruct, 4);
        assert_eq!(fsm.step(FsmEvent::PowerOn), Disposition::Accepted);
        assert_eq!(fsm.state, FsmState::DestructionInProgress);
        assert_eq!(fsm.step(FsmEvent::External(ExtCommand::Read)), Disposition::Rejected);
        assert_eq!(fsm.step(FsmEvent::External(ExtCommand::Write)), Disposition::Rejected);
    }

    #[test]
    fn power_on_twice_is_idempotent() {
        let mut fsm = DramFsm::new(FsmVariant::SelfDestruct, 4);
        fsm.step(FsmEvent::PowerOn);
        fsm.step(FsmEvent::DestructionTick);
        let before = fsm;
        assert_eq!(fsm.step(FsmEvent::PowerOn), Disposition::Accepted);
        assert_eq!(fsm, before, "second power_on must not restart progress");
    }

    #[test]
    fn full_tick_sequence_reaches_ready_and_accepts_commands() {
        let rows = 5;
        let mut fsm = DramFsm::new(FsmVariant::SelfDestruct, rows);
        fsm.step(FsmEvent::PowerOn);
        for _ in 0..rows {
            assert_eq!(fsm.step(FsmEvent::DestructionTick), Disposition::Accepted);
        }
        assert_eq!(fsm.step(FsmEvent::DestructionComplete), Disposition::Accepted);
        assert_eq!(fsm.state, FsmState::Ready);
        assert_eq!(fsm.step(FsmEvent::External(ExtCommand::Read)), Disposition::Accepted);
        assert_eq!(fsm.step(FsmEvent::External(ExtCommand::Write)), Disposition::Accepted);
    }

    #[test]
    fn early_complete_is_ignored() {
        let mut fsm = DramFsm::new(FsmVariant::SelfDestruct, 4);
        fsm.step(FsmEvent::PowerOn);
        assert_eq!(fsm.step(FsmEvent::DestructionComplete), Disposition::Rejected);
        assert_eq!(fsm.state, FsmState::DestructionInProgress);
    }

    #[test]
    fn command_based_accepts_only_the_destruction_sequence() {
        let mut fsm = DramFsm::new(FsmVariant::CommandBased, 3);
        fsm.step(FsmEvent::PowerOn);
        assert_eq!(fsm.step(FsmEvent::External(ExtCommand::Activate)), Disposition::Rejected);
        assert_eq!(fsm.step(FsmEvent::External(ExtCommand::DestructStep)), Disposition::Accepted);
        // internal ticks do not advance the command-based variant
        fsm.step(FsmEvent::DestructionTick);
        assert_eq!(fsm.progress, 1);
        for _ in 0..2 {
            fsm.step(FsmEvent::External(ExtCommand::DestructStep));
        }
        assert_eq!(fsm.step(FsmEvent::DestructionComplete), Disposition::Accepted);
        assert_eq!(fsm.state, FsmState::Ready);
    }

    #[test]
    fn read_and_write_have_identical_dispositions_in_every_state() {
        for variant in [FsmVariant::SelfDestruct, FsmVariant::CommandBased] {
            let states = [FsmState::PoweredOff, FsmState::DestructionInProgress, FsmState::Ready];
            for state in states {
                let base = DramFsm { state, variant, progress: 1, rows_total: 3 };
                let mut a = base;
                let mut b = base;
                assert_eq!(
                    a.step(FsmEvent::External(ExtCommand::Read)),
                    b.step(FsmEvent::External(ExtCommand::Write))
                );
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn enumeration_at_small_depth_is_safe() {
        for variant in [FsmVariant::SelfDestruct, FsmVariant::CommandBased] {
            let out = enumerate_sequences(variant, 3, 8);
            assert_eq!(out.sequences, 5u64.pow(8));
            assert_eq!(out.accepted_data_before_ready, 0, "{variant:?}");
            assert!(out.ready_reached > 0, "property must not hold vacuously");
        }
    }
}
