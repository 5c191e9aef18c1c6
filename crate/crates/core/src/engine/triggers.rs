use super::sba::run_sba;
use super::state::{GameState, PendingChoice, TriggerOrder};
use super::types::*;
use crate::cards::{self, Hook};

/// Put one event batch of triggers on the stack: the active player's first
/// (so they resolve last), each controller's group in ascending priority
/// index.
pub fn push_triggers(state: &GameState, triggers: Vec<TriggerInstance>) -> GameState {
    let mut s = state.clone();
    s.ensure_index();
    push_in_place(&mut s, triggers);
    s
}

pub(crate) fn push_in_place(state: &mut GameState, triggers: Vec<TriggerInstance>) {
    let ap = state.active_player;
    for who in [ap, ap.opponent()] {
        let mut group: Vec<TriggerInstance> = triggers.iter().filter(|t| t.controller == who).cloned().collect();
        group.sort_by_key(|t| t.priority_index);
        match state.trigger_order {
            TriggerOrder::Canonical => {}
            TriggerOrder::Reversed => group.reverse(),
            TriggerOrder::Rotated(k) => {
                if !group.is_empty() {
                    let k = k % group.len();
                    group.rotate_left(k);
                }
            }
        }
        for t in group {
            push_one(state, t);
        }
    }
}

fn push_one(state: &mut GameState, t: TriggerInstance) {
    let id = state.next_stack_id;
    state.next_stack_id += 1;
    let source = if t.is_spell {
        StackSource::Spell { card: t.card.clone(), owner: t.controller, copy: false }
    } else {
        StackSource::Ability { source: t.source, card: t.card.clone() }
    };
    let mut entry = StackEntry {
        id,
        source,
        controller: t.controller,
        script: t.script.clone(),
        targets: Vec::new(),
        pending_choices: Vec::new(),
        payload: t.payload,
        priority_index: t.priority_index,
    };
    if let Some(script) = cards::script(&t.script) {
        if let Some(options) = script.targets(state, &entry) {
            match options.len() {
                0 => return,
                1 => entry.targets = options[0].clone(),
                _ => {
                    let flat: Vec<Target> = options.iter().filter_map(|o| o.first().copied()).collect();
                    state.pending = Some(PendingChoice::ChooseTarget {
                        player: state.decider_for(t.controller),
                        entry_id: id,
                        options: flat,
                    });
                }
            }
        }
    }
    state.stack.push(entry);
}

/// Turn queued events into triggers. Drains the queue.
pub(crate) fn collect_triggers(state: &mut GameState) -> Vec<TriggerInstance> {
    let events = std::mem::take(&mut state.queue);
    let mut out = Vec::new();
    for ev in &events {
        match ev {
            GameEvent::Died { dead } => {
                for tag in &dead.creature_types {
                    for w in state.watchers_of(tag) {
                        let Some(p) = state.battlefield.get(&w) else { continue };
                        if p.phased_out || p.id == dead.id {
                            continue;
                        }
                        fire(state, p, Hook::Died, ev, &mut out);
                    }
                }
                for id in state.subscribers(Hook::Died) {
                    fire_by_id(state, id, Hook::Died, ev, &mut out);
                }
            }
            GameEvent::StepBegan { step } => {
                let hook = match step {
                    Step::Upkeep => Hook::Upkeep,
                    Step::BeginCombat => Hook::BeginCombat,
                    Step::End => Hook::EndStep,
                    _ => continue,
                };
                for id in state.subscribers(hook) {
                    fire_by_id(state, id, hook, ev, &mut out);
                }
            }
            GameEvent::LifeGained { .. } => {
                for id in state.subscribers(Hook::LifeGained) {
                    fire_by_id(state, id, Hook::LifeGained, ev, &mut out);
                }
            }
            GameEvent::Entered { .. } => {
                for id in state.subscribers(Hook::Entered) {
                    fire_by_id(state, id, Hook::Entered, ev, &mut out);
                }
            }
            GameEvent::Left { card, controller, .. } => {
                if let Some(def) = cards::definition(card) {
                    for script in def.scripts() {
                        if script.hooks().contains(&Hook::LeftSelf) {
                            if let Some(payload) = script.on_leave(state, ev) {
                                out.push(TriggerInstance {
                                    controller: *controller,
                                    source: None,
                                    card: card.clone(),
                                    script: script.id().to_string(),
                                    payload,
                                    priority_index: 0,
                                    is_spell: false,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn fire_by_id(state: &GameState, id: ObjId, hook: Hook, ev: &GameEvent, out: &mut Vec<TriggerInstance>) {
    if let Some(p) = state.battlefield.get(&id) {
        if !p.phased_out {
            fire(state, p, hook, ev, out);
        }
    }
}

fn fire(state: &GameState, p: &Permanent, hook: Hook, ev: &GameEvent, out: &mut Vec<TriggerInstance>) {
    let Some(def) = cards::definition(&p.card) else { return };
    for script in def.scripts() {
        let listens = script.hooks().contains(&hook) || (hook == Hook::Died && script.watched_tag().is_some());
        if !listens {
            continue;
        }
        if let Some(payload) = script.trigger(state, p, ev) {
            out.push(TriggerInstance::ability(p, script.id(), payload));
        }
    }
}

/// State-based actions, then triggers, repeated until nothing new happens.
pub(crate) fn settle(state: &mut GameState) {
    loop {
        run_sba(state);
        let triggers = collect_triggers(state);
        if triggers.is_empty() {
            if state.queue.is_empty() {
                return;
            }
            continue;
        }
        push_in_place(state, triggers);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trig(controller: PlayerId, idx: u32, name: &str) -> TriggerInstance {
        TriggerInstance {
            controller,
            source: None,
            card: name.into(),
            script: "none".into(),
            payload: TriggerPayload::None,
            priority_index: idx,
            is_spell: false,
        }
    }

    fn order(s: &GameState) -> Vec<String> {
        s.stack.iter().map(|e| match &e.source {
            StackSource::Ability { card, .. } | StackSource::Spell { card, .. } => card.clone(),
        }).collect()
    }

    #[test]
    fn apnap_active_player_first() {
        let s = GameState::new();
        let s = push_triggers(&s, vec![trig(PlayerId::Bob, 0, "T2"), trig(PlayerId::Alice, 0, "T1")]);
        assert_eq!(order(&s), vec!["T1", "T2"]);
        assert_eq!(s.stack.last().unwrap().controller, PlayerId::Bob);
    }

    #[test]
    fn single_trigger() {
        let s = push_triggers(&GameState::new(), vec![trig(PlayerId::Alice, 3, "T")]);
        assert_eq!(order(&s), vec!["T"]);
    }

    #[test]
    fn same_controller_in_index_order() {
        let s = push_triggers(&GameState::new(), vec![trig(PlayerId::Alice, 5, "five"), trig(PlayerId::Alice, 2, "two")]);
        assert_eq!(order(&s), vec!["two", "five"]);
        let mut r = GameState::new();
        r.trigger_order = TriggerOrder::Reversed;
        let r = push_triggers(&r, vec![trig(PlayerId::Alice, 5, "five"), trig(PlayerId::Alice, 2, "two")]);
        assert_eq!(order(&r), vec!["five", "two"]);
    }
}
