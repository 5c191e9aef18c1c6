use crate::engine::{
    advance_in_place, apply_in_place, decision_point, Action, DecisionKind, EngineError, EngineResult, GameState,
    MachineRole, PendingChoice,
};

/// Turns the chain may take before it counts as stuck.
const MAX_CHAIN_TURNS: u64 = 8;

/// Play the cleanup chain forward from the upkeep in which Human Frailty
/// comes off suspend until Infest has started the machine.
///
/// The final round's pump window falls inside the chain, so its value is
/// passed in; Panoptic Mirror's offer is taken. Any other choice with more
/// than one option is reported as an error.
pub fn cleanup_chain_effects(state: &GameState, last_input: u64) -> EngineResult<GameState> {
    let mut s = state.clone();
    s.ensure_index();
    let limit = s.turn_number + MAX_CHAIN_TURNS;
    loop {
        if machine_running(&s) && s.stack.is_empty() && s.pending.is_none() {
            return Ok(s);
        }
        if s.turn_number > limit {
            return Err(EngineError::Rules("cleanup chain did not start the machine".into()));
        }
        let d = decision_point(&s);
        match d.kind {
            DecisionKind::GameOver => return Ok(s),
            DecisionKind::Advance => advance_in_place(&mut s)?,
            DecisionKind::Choice => {
                let action = match &s.pending {
                    Some(PendingChoice::Pump { .. }) => Action::choose(last_input),
                    Some(PendingChoice::MayCast { card, .. }) => Action::Cast { card: card.clone() },
                    _ if d.actions.len() == 1 => d.actions[0].clone(),
                    _ => {
                        return Err(EngineError::Rules(format!(
                            "unforced choice in the cleanup chain on turn {}: {:?}",
                            s.turn_number, d.actions
                        )))
                    }
                };
                apply_in_place(&mut s, d.decider.expect("choice has a decider"), &action)?;
            }
        }
    }
}

fn machine_running(s: &GameState) -> bool {
    s.machine.is_some()
        && s.battlefield.values().any(|p| matches!(p.machine, Some(MachineRole::Reader)) && !p.phased_out)
}
