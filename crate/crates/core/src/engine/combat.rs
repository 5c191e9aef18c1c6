use super::actions::{apply_in_place, decision_point_of, DecisionKind};
use super::state::{GameState, PendingChoice};
use super::stats::{can_attack, effective_stats, has_keyword};
use super::triggers::settle;
use super::turn::advance_in_place;
use super::types::*;
use super::{EngineError, EngineResult};
use crate::cards::{self, Keyword};

/// Attack subsets offered when nothing forces attacks; beyond this many
/// possible attackers only the all-or-nothing choices are listed.
const MAX_ENUMERATED_ATTACKERS: usize = 8;

pub(crate) fn begin_declare(s: &mut GameState) {
    let ap = s.active_player;
    let able: Vec<ObjId> = if s.count_in_play(crate::cards::names::MOAT) > 0 {
        s.flyer_ids().into_iter().filter(|id| can_attack(s, &s.battlefield[id])).collect()
    } else {
        s.battlefield.values().filter(|p| can_attack(s, p)).map(|p| p.id).collect()
    };
    if able.is_empty() {
        s.combat.declared = true;
        return;
    }
    let forced = cards::must_attack(s, ap);
    let options = if forced {
        vec![able]
    } else if able.len() <= MAX_ENUMERATED_ATTACKERS {
        (0..(1u32 << able.len()))
            .map(|mask| able.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, id)| *id).collect())
            .collect()
    } else {
        vec![Vec::new(), able]
    };
    s.pending = Some(PendingChoice::DeclareAttackers { player: ap, options });
}

pub(crate) fn declare(s: &mut GameState, attackers: Vec<ObjId>) -> EngineResult<()> {
    for &id in &attackers {
        if !has_keyword(s, s.get(id)?, Keyword::Vigilance) {
            s.modify(id, |p| p.tapped = true)?;
        }
    }
    s.combat.attackers = attackers;
    s.combat.declared = true;
    s.pending = None;
    let ap = s.active_player;
    let pumpable = s.combat.attackers.iter().copied().find(|&id| cards::pump_available(s, id));
    if let Some(creature) = pumpable {
        s.pending = Some(PendingChoice::Pump { player: ap, creature });
    }
    settle(s);
    Ok(())
}

/// Apply the pump gadget `k` times to `creature` (+k/+k until end of turn).
pub(crate) fn pump(s: &mut GameState, creature: ObjId, k: u64) -> EngineResult<()> {
    let k = i64::try_from(k).map_err(|_| EngineError::BadInteger(k.to_string()))?;
    s.modify(creature, |p| {
        p.pump.0 += k;
        p.pump.1 += k;
    })?;
    s.combat.pumped = true;
    s.pending = None;
    settle(s);
    Ok(())
}

pub(crate) fn combat_damage(s: &mut GameState) {
    let defender = s.active_player.opponent();
    for id in s.combat.attackers.clone() {
        let Some(p) = s.battlefield.get(&id) else { continue };
        if p.phased_out {
            continue;
        }
        let power = effective_stats(s, p).map(|(pw, _)| pw.max(0) as u64).unwrap_or(0);
        if power == 0 {
            continue;
        }
        let (infect, lifelink, controller) =
            (has_keyword(s, p, Keyword::Infect), has_keyword(s, p, Keyword::Lifelink), p.controller);
        if infect {
            s.player_mut(defender).poison += power;
        } else {
            s.lose_life(defender, power);
        }
        if lifelink {
            s.gain_life(controller, power);
        }
    }
    settle(s);
}

/// Drive one combat phase: starting at or before beginning of combat, play
/// forward passing priority, declaring the forced attack and choosing
/// `pump_count` at the pump window, until combat damage and its triggers
/// have resolved.
pub fn resolve_combat(state: &GameState, pump_count: u64) -> EngineResult<GameState> {
    let mut s = state.clone();
    s.ensure_index();
    if !matches!(s.step, Step::Main1 | Step::BeginCombat | Step::DeclareAttackers) {
        return Err(EngineError::IllegalAction {
            action: "resolve_combat".into(),
            reason: format!("not in a combat phase ({:?})", s.step),
        });
    }
    loop {
        let past = s.step == Step::Main2 || (s.step == Step::CombatDamage && s.stack.is_empty() && s.pending.is_none());
        if past || s.is_over() {
            return Ok(s);
        }
        let d = decision_point_of(&s);
        match d.kind {
            DecisionKind::GameOver => return Ok(s),
            DecisionKind::Advance => advance_in_place(&mut s)?,
            DecisionKind::Choice => {
                let action = if d.actions.iter().any(|a| matches!(a, Action::ChooseInteger { .. })) {
                    Action::choose(pump_count)
                } else if let Some(a @ Action::DeclareAttackers { .. }) = d.actions.iter().max_by_key(|a| match a {
                    Action::DeclareAttackers { attackers } => attackers.len(),
                    _ => 0,
                }) {
                    a.clone()
                } else if d.actions.contains(&Action::PassPriority) {
                    Action::PassPriority
                } else {
                    d.actions[0].clone()
                };
                apply_in_place(&mut s, d.decider.expect("choice has a decider"), &action)?;
            }
        }
    }
}
