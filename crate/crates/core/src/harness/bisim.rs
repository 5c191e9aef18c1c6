use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{run_forced_with, HarnessResult, InputScript, Limits, Outcome};
use crate::compiler::{compile_machine, decode_board_tape};
use crate::tm::{run, MachineConfig, TuringMachineSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divergence {
    pub cycle: u64,
    pub turn: u64,
    pub engine: Option<MachineConfig>,
    pub reference: Option<MachineConfig>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisimReport {
    /// Cycle boundaries compared, the compiled board included.
    pub boundaries: u64,
    pub reference_halted: bool,
    pub outcome: Outcome,
    pub histogram: BTreeMap<usize, u64>,
    pub divergence: Option<Divergence>,
}

impl BisimReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none() && self.histogram.keys().all(|&k| k == 1)
    }
}

/// Run the compiled board for `cycles` machine cycles next to the reference
/// interpreter and compare the decoded configuration at every boundary.
pub fn verify_bisimulation(tm: &TuringMachineSpec, cfg: &MachineConfig, cycles: u64) -> HarnessResult<BisimReport> {
    let reference = run(tm, cfg, cycles + 1)?;
    let state = compile_machine(tm, cfg)?;
    let mut boundaries = 0u64;
    let mut divergence = None;
    let limits = Limits::turns(cycles + 2);
    let verdict = run_forced_with(&state, &InputScript::empty(), &limits, |s| {
        let cycle = boundaries;
        let Some(want) = reference.configs.get(cycle as usize) else {
            return false;
        };
        boundaries += 1;
        match decode_board_tape(s) {
            Ok(got) if got == *want => true,
            Ok(got) => {
                divergence = Some(Divergence {
                    cycle,
                    turn: s.turn_number,
                    engine: Some(got),
                    reference: Some(want.clone()),
                    detail: "configurations differ".into(),
                });
                false
            }
            Err(e) => {
                divergence = Some(Divergence {
                    cycle,
                    turn: s.turn_number,
                    engine: None,
                    reference: Some(want.clone()),
                    detail: e.to_string(),
                });
                false
            }
        }
    })?;
    if divergence.is_none() && reference.halted {
        let last = reference.last().clone();
        let turn = verdict.final_state.turn_number;
        if !verdict.outcome.alice_wins() {
            divergence = Some(Divergence {
                cycle: boundaries,
                turn,
                engine: decode_board_tape(&verdict.final_state).ok(),
                reference: Some(last),
                detail: format!("reference halted but the game ended {:?}", verdict.outcome),
            });
        } else {
            match decode_board_tape(&verdict.final_state) {
                Ok(got) if got == last => {}
                got => {
                    divergence = Some(Divergence {
                        cycle: boundaries,
                        turn,
                        engine: got.as_ref().ok().cloned(),
                        reference: Some(last),
                        detail: got.err().map_or("halted tapes differ".into(), |e| e.to_string()),
                    })
                }
            }
        }
    } else if divergence.is_none() && verdict.outcome.alice_wins() {
        divergence = Some(Divergence {
            cycle: boundaries,
            turn: verdict.final_state.turn_number,
            engine: None,
            reference: Some(reference.last().clone()),
            detail: "engine halted but the reference did not".into(),
        });
    }
    Ok(BisimReport {
        boundaries,
        reference_halted: reference.halted,
        outcome: verdict.outcome,
        histogram: verdict.histogram,
        divergence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::samples;

    #[test]
    fn incrementer_tracks_reference() {
        let tm = samples::unary_incrementer();
        let cfg = MachineConfig::from_cells(0, &[1, 1, 1], tm.blank);
        let r = verify_bisimulation(&tm, &cfg, 50).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.reference_halted);
        assert!(r.outcome.alice_wins());
    }

    #[test]
    fn loop_runs_two_hundred_cycles() {
        let tm = samples::three_state_loop();
        let r = verify_bisimulation(&tm, &MachineConfig::new(tm.initial_state), 200).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.boundaries, 201, "{r:?}");
    }

    #[test]
    fn empty_table_halts_at_once() {
        let tm = samples::empty_table();
        let r = verify_bisimulation(&tm, &MachineConfig::new(tm.initial_state), 5).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.outcome, Outcome::FirstPlayerWin { turn: 1 });
    }
}
