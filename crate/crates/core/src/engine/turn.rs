use super::combat;
use super::state::{GameState, Priority};
use super::triggers::{collect_triggers, push_in_place, settle};
use super::types::*;
use super::{EngineError, EngineResult};
use crate::cards::{self, names, Hook};

/// Move to the next step (or the next turn's untap step) and perform its
/// turn-based actions.
pub fn advance_step(state: &GameState) -> EngineResult<GameState> {
    let mut s = state.clone();
    s.ensure_index();
    advance_in_place(&mut s)?;
    Ok(s)
}

pub(crate) fn advance_in_place(s: &mut GameState) -> EngineResult<()> {
    if s.is_over() {
        return Err(EngineError::GameOver);
    }
    if !s.stack.is_empty() {
        return Err(EngineError::CannotAdvance("stack is not empty".into()));
    }
    if s.pending.is_some() {
        return Err(EngineError::CannotAdvance("a choice is pending".into()));
    }
    match s.step.next() {
        Some(next) => {
            s.step = next;
            begin_step(s)
        }
        None => {
            begin_turn(s);
            Ok(())
        }
    }
}

fn begin_turn(s: &mut GameState) {
    for id in std::mem::take(&mut s.combat.attackers) {
        if s.battlefield.contains_key(&id) {
            s.modify(id, |p| p.pump = (0, 0)).expect("present");
        }
    }
    s.combat = Default::default();
    s.turn_number += 1;
    s.active_player = s.active_player.opponent();
    let ap = s.active_player;
    s.turn_controller = match s.control_grants.iter().position(|g| g.player == ap) {
        Some(i) => s.control_grants.remove(i).controller,
        None => ap,
    };
    s.step = Step::Untap;
    s.priority = None;
    untap_step(s);
}

fn untap_step(s: &mut GameState) {
    let ap = s.active_player;
    for id in s.phasing_ids() {
        let p = &s.battlefield[&id];
        if p.controller != ap {
            continue;
        }
        let out = !p.phased_out;
        s.modify(id, |p| p.phased_out = out).expect("present");
        for a in s.attachments_of(id) {
            s.modify(a, |p| p.phased_out = out).expect("present");
        }
    }
    for id in s.tapped_ids() {
        if s.battlefield[&id].controller == ap && !s.battlefield[&id].phased_out {
            s.modify(id, |p| p.tapped = false).expect("present");
        }
    }
    settle(s);
}

fn begin_step(s: &mut GameState) -> EngineResult<()> {
    let ap = s.active_player;
    match s.step {
        Step::Untap => untap_step(s),
        Step::Upkeep => upkeep(s)?,
        Step::Draw => draw_step(s),
        Step::Main1 | Step::Main2 => {}
        Step::BeginCombat => {
            s.emit(GameEvent::StepBegan { step: Step::BeginCombat });
            batch(s, Vec::new());
        }
        Step::DeclareAttackers => combat::begin_declare(s),
        Step::CombatDamage => combat::combat_damage(s),
        Step::End => {
            s.emit(GameEvent::StepBegan { step: Step::End });
            let (due, keep): (Vec<_>, Vec<_>) = std::mem::take(&mut s.delayed).into_iter().partition(|d| d.step == Step::End);
            s.delayed = keep;
            batch(s, due.into_iter().map(|d| d.trigger).collect());
        }
    }
    if s.step != Step::Untap {
        s.priority = Some(Priority { holder: ap, passes: 0 });
    }
    Ok(())
}

/// Collect triggers from queued events, add `extra`, push them as one batch,
/// then settle.
fn batch(s: &mut GameState, mut extra: Vec<TriggerInstance>) {
    super::sba::run_sba(s);
    let mut all = collect_triggers(s);
    all.append(&mut extra);
    push_in_place(s, all);
    settle(s);
}

fn upkeep(s: &mut GameState) -> EngineResult<()> {
    let ap = s.active_player;
    s.emit(GameEvent::StepBegan { step: Step::Upkeep });
    let mut casts = Vec::new();
    let mut i = 0;
    while i < s.exile.len() {
        let e = &mut s.exile[i];
        if e.suspended && e.owner == ap && e.time_counters > 0 {
            e.time_counters -= 1;
            if e.time_counters == 0 {
                let e = s.exile.remove(i);
                let def = cards::definition(&e.card).ok_or_else(|| EngineError::UnknownCard(e.card.clone()))?;
                casts.push(TriggerInstance {
                    controller: e.owner,
                    source: None,
                    card: e.card.clone(),
                    script: def.spell_script().unwrap_or("none").to_string(),
                    payload: TriggerPayload::Card { card: CardRef { card: e.card, owner: e.owner } },
                    priority_index: e.priority_index,
                    is_spell: true,
                });
                continue;
            }
        }
        i += 1;
    }
    for id in s.subscribers(Hook::Vanishing) {
        let p = &s.battlefield[&id];
        if p.controller != ap || p.phased_out || p.counter(CounterKind::VanishingTime) == 0 {
            continue;
        }
        s.remove_counters(id, CounterKind::VanishingTime, 1)?;
        if s.battlefield[&id].counter(CounterKind::VanishingTime) == 0 {
            s.remove_permanent(id, false)?;
        }
    }
    batch(s, casts);
    Ok(())
}

fn draw_step(s: &mut GameState) {
    let ap = s.active_player;
    if s.count_in_play(names::MARALEN) > 0 {
        s.lose_life(ap, 3);
        if s.count_in_play(names::TIMELOCK_ORB) == 0 && !s.player(ap).library.is_empty() {
            let c = s.player_mut(ap).library.remove(0);
            s.player_mut(ap).hand.push(c);
        }
    } else if !s.player(ap).library.is_empty() {
        let c = s.player_mut(ap).library.remove(0);
        s.player_mut(ap).hand.push(c);
    }
    settle(s);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::instantiate;

    fn to_step(s: &mut GameState, step: Step) {
        while s.step != step {
            advance_in_place(s).unwrap();
            s.priority = None;
        }
    }

    #[test]
    fn rejects_nonempty_stack() {
        let mut s = GameState::new();
        s.stack.push(StackEntry {
            id: 1,
            source: StackSource::Ability { source: None, card: "x".into() },
            controller: PlayerId::Alice,
            script: "none".into(),
            targets: vec![],
            pending_choices: vec![],
            payload: TriggerPayload::None,
            priority_index: 0,
        });
        assert!(matches!(advance_step(&s), Err(EngineError::CannotAdvance(_))));
    }

    #[test]
    fn suspended_card_with_one_counter_is_cast() {
        let mut s = GameState::new();
        s.exile.push(ExiledCard {
            card: names::CHOKE.into(),
            owner: PlayerId::Alice,
            time_counters: 1,
            suspended: true,
            imprinted_on: None,
            priority_index: 0,
        });
        let s = advance_step(&s).unwrap();
        assert_eq!(s.step, Step::Upkeep);
        assert!(s.exile.is_empty());
        assert_eq!(s.stack.len(), 1);
        assert!(matches!(&s.stack[0].source, StackSource::Spell { card, .. } if card == names::CHOKE));
    }

    #[test]
    fn phasing_permanent_phases_out_on_controllers_untap() {
        let mut s = GameState::new();
        let mut m = instantiate(names::PANOPTIC_MIRROR, PlayerId::Bob).unwrap();
        m.phasing = true;
        let id = s.insert_permanent(m);
        s.step = Step::End;
        advance_in_place(&mut s).unwrap();
        assert_eq!(s.active_player, PlayerId::Bob);
        assert!(s.battlefield[&id].phased_out);
        let mut flags = vec![];
        for _ in 0..4 {
            s.step = Step::End;
            s.priority = None;
            advance_in_place(&mut s).unwrap();
            flags.push(s.battlefield[&id].phased_out);
        }
        // Alice, Bob, Alice, Bob
        assert_eq!(flags, vec![true, false, false, true]);
    }

    #[test]
    fn draw_lock_costs_three_life_and_keeps_hand_empty() {
        let mut s = GameState::new();
        s.insert_permanent(instantiate(names::MARALEN, PlayerId::Alice).unwrap());
        s.insert_permanent(instantiate(names::TIMELOCK_ORB, PlayerId::Alice).unwrap());
        s.player_mut(PlayerId::Alice).library.push(CardRef { card: names::INFEST.into(), owner: PlayerId::Alice });
        to_step(&mut s, Step::Draw);
        assert!(s.player(PlayerId::Alice).hand.is_empty());
        assert_eq!(s.player(PlayerId::Alice).life, 17);
    }

    #[test]
    fn draw_without_lock_draws_top_card() {
        let mut s = GameState::new();
        s.player_mut(PlayerId::Alice).library.push(CardRef { card: names::INFEST.into(), owner: PlayerId::Alice });
        to_step(&mut s, Step::Draw);
        assert_eq!(s.player(PlayerId::Alice).hand.len(), 1);
        assert_eq!(s.player(PlayerId::Alice).life, 20);
    }
}
