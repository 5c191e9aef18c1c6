use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GameTrace, HarnessError, HarnessResult, InputScript};
use crate::engine::{
    advance_in_place, apply_in_place, decision_point, Action, DecisionKind, GameState, MachineRole, PendingChoice,
    PlayerId, Step,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Last turn number played.
    pub max_turns: u64,
    /// Decision points allowed within a single turn.
    pub step_budget: u64,
    /// Stop once the search machine has moved past x = bound.
    pub x_bound: Option<u64>,
    pub record_trace: bool,
}

impl Limits {
    pub fn turns(max_turns: u64) -> Self {
        Self { max_turns, step_budget: 100_000, x_bound: None, record_trace: false }
    }

    pub fn traced(self) -> Self {
        Self { record_trace: true, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Outcome {
    FirstPlayerWin { turn: u64 },
    SecondPlayerWin { turn: u64 },
    NoWinWithinHorizon { max_turns: u64 },
    /// The search machine tried every x up to the bound without halting.
    SearchBoundReached { bound: u64, turn: u64 },
}

impl Outcome {
    pub fn alice_wins(&self) -> bool {
        matches!(self, Outcome::FirstPlayerWin { .. })
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub outcome: Outcome,
    pub trace: GameTrace,
    /// Legal-action counts at post-activation decision points outside the
    /// designated windows.
    pub histogram: BTreeMap<usize, u64>,
    /// Choices taken at pump and may-cast windows.
    pub windows: u64,
    pub inputs_used: usize,
    pub final_state: GameState,
}

/// Reader phased in: the machine is computing.
pub fn machine_running(s: &GameState) -> bool {
    s.machine.as_ref().is_some_and(|m| !m.halted)
        && s.battlefield.values().any(|p| matches!(p.machine, Some(MachineRole::Reader)) && !p.phased_out)
}

pub fn run_forced(state: &GameState, script: &InputScript, limits: &Limits) -> HarnessResult<Verdict> {
    run_forced_with(state, script, limits, |_| true)
}

fn outcome_of(s: &GameState) -> Option<Outcome> {
    if !s.is_over() {
        return None;
    }
    let turn = s.turn_number;
    Some(if s.player(PlayerId::Bob).lost && !s.player(PlayerId::Alice).lost {
        Outcome::FirstPlayerWin { turn }
    } else {
        Outcome::SecondPlayerWin { turn }
    })
}

/// Like [`run_forced`], calling `at_boundary` at every untap step with
/// nothing outstanding; returning `false` stops the run there.
pub fn run_forced_with(
    state: &GameState,
    script: &InputScript,
    limits: &Limits,
    mut at_boundary: impl FnMut(&GameState) -> bool,
) -> HarnessResult<Verdict> {
    let mut s = state.clone();
    s.ensure_index();
    let mut trace = GameTrace::default();
    let mut histogram = BTreeMap::new();
    let (mut windows, mut used, mut in_turn, mut turn) = (0u64, 0usize, 0u64, s.turn_number);
    let finish = |outcome, s: GameState, trace, histogram, windows, used| {
        Ok(Verdict { outcome, trace, histogram, windows, inputs_used: used, final_state: s })
    };
    loop {
        if let Some(o) = outcome_of(&s) {
            return finish(o, s, trace, histogram, windows, used);
        }
        if s.turn_number > limits.max_turns {
            let o = Outcome::NoWinWithinHorizon { max_turns: limits.max_turns };
            return finish(o, s, trace, histogram, windows, used);
        }
        if let (Some(b), Some(m)) = (limits.x_bound, &s.machine) {
            if m.marker_entries > b {
                let o = Outcome::SearchBoundReached { bound: b, turn: s.turn_number };
                return finish(o, s, trace, histogram, windows, used);
            }
        }
        if s.turn_number != turn {
            (turn, in_turn) = (s.turn_number, 0);
        }
        in_turn += 1;
        if in_turn > limits.step_budget {
            return Err(HarnessError::StepBudget { budget: limits.step_budget, turn: s.turn_number });
        }
        let d = decision_point(&s);
        match d.kind {
            DecisionKind::GameOver => unreachable!("checked above"),
            DecisionKind::Advance => {
                if s.step == Step::Untap && s.stack.is_empty() && s.pending.is_none() && !at_boundary(&s) {
                    let o = Outcome::NoWinWithinHorizon { max_turns: s.turn_number };
                    return finish(o, s, trace, histogram, windows, used);
                }
                if limits.record_trace {
                    trace.push(&s, None, None, 0);
                }
                advance_in_place(&mut s)?;
            }
            DecisionKind::Choice => {
                let running = machine_running(&s);
                let action = match &s.pending {
                    Some(PendingChoice::Pump { .. }) => {
                        let v = *script
                            .values
                            .get(used)
                            .ok_or(HarnessError::ScriptExhausted { turn: s.turn_number })?;
                        used += 1;
                        windows += 1;
                        Action::choose(v)
                    }
                    Some(PendingChoice::MayCast { card, .. }) => {
                        windows += 1;
                        if running {
                            Action::PassPriority
                        } else {
                            Action::Cast { card: card.clone() }
                        }
                    }
                    _ if d.actions.len() == 1 => {
                        if running {
                            *histogram.entry(1).or_insert(0) += 1;
                        }
                        d.actions[0].clone()
                    }
                    _ => {
                        return Err(HarnessError::Unforced {
                            turn: s.turn_number,
                            step: s.step,
                            options: d.actions.len(),
                        })
                    }
                };
                let decider = d.decider.expect("choice has a decider");
                if limits.record_trace {
                    trace.push(&s, Some(decider), Some(action.clone()), d.actions.len());
                }
                apply_in_place(&mut s, decider, &action)?;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EndGame {
    InEndGame,
    NotEndGame { turn: u64, step: Step, options: usize },
    /// No unforced point within the horizon; says nothing beyond it.
    Unknown { horizon: u64 },
}

/// Play forward taking forced moves for up to `horizon` turns, looking for
/// a point where some player has a real choice.
pub fn detect_end_game(state: &GameState, horizon: u64) -> HarnessResult<EndGame> {
    let mut s = state.clone();
    s.ensure_index();
    let last = s.turn_number + horizon;
    loop {
        if s.is_over() {
            return Ok(EndGame::InEndGame);
        }
        if s.turn_number > last {
            return Ok(EndGame::Unknown { horizon });
        }
        let d = decision_point(&s);
        match d.kind {
            DecisionKind::GameOver => return Ok(EndGame::InEndGame),
            DecisionKind::Advance => advance_in_place(&mut s)?,
            DecisionKind::Choice => {
                let open = d.actions.len() > 1 || matches!(s.pending, Some(PendingChoice::Pump { .. }));
                if open {
                    return Ok(EndGame::NotEndGame { turn: s.turn_number, step: s.step, options: d.actions.len() });
                }
                apply_in_place(&mut s, d.decider.expect("choice has a decider"), &d.actions[0])?;
            }
        }
    }
}
