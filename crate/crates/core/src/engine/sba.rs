use super::state::GameState;
use super::stats::effective_stats;
use super::types::*;

/// Run state-based actions to a fixed point on a copy of `state`.
pub fn apply_state_based_actions(state: &GameState) -> (GameState, Vec<DeathEvent>) {
    let mut s = state.clone();
    s.ensure_index();
    s.mark_all_dirty();
    let deaths = run_sba(&mut s);
    (s, deaths)
}

/// True when no state-based action applies.
pub fn sba_fixpoint_holds(state: &GameState) -> bool {
    if state.players.iter().any(|p| !p.lost && (p.life <= 0 || p.poison >= 10)) {
        return false;
    }
    state.battlefield.values().filter(|p| !p.phased_out).all(|p| {
        let annihilated = p.counter(CounterKind::PlusOne) == 0 || p.counter(CounterKind::MinusOne) == 0;
        let alive = !p.is_creature() || effective_stats(state, p).map_or(true, |(_, t)| t > 0);
        let attached = !p.card_types.contains(&CardType::Aura)
            || p.attached_to.is_some_and(|h| state.battlefield.contains_key(&h));
        annihilated && alive && attached
    })
}

/// In-place fixed point over the dirty set. Deaths are also queued as events.
pub(crate) fn run_sba(state: &mut GameState) -> Vec<DeathEvent> {
    let mut deaths = Vec::new();
    loop {
        let mut changed = false;
        for p in state.players.iter_mut() {
            if !p.lost && (p.life <= 0 || p.poison >= 10) {
                p.lost = true;
                changed = true;
            }
        }
        let ids: Vec<ObjId> = if state.idx.all_dirty {
            state.idx.all_dirty = false;
            state.idx.dirty.clear();
            state.battlefield.keys().copied().collect()
        } else {
            std::mem::take(&mut state.idx.dirty).into_iter().collect()
        };
        let mut leaving = Vec::new();
        for id in ids {
            let Some(p) = state.battlefield.get(&id) else { continue };
            if p.phased_out {
                continue;
            }
            let (plus, minus) = (p.counter(CounterKind::PlusOne), p.counter(CounterKind::MinusOne));
            if plus > 0 && minus > 0 {
                let k = plus.min(minus);
                state.remove_counters(id, CounterKind::PlusOne, k).expect("present");
                state.remove_counters(id, CounterKind::MinusOne, k).expect("present");
                state.idx.dirty.remove(&id);
                changed = true;
            }
            let p = &state.battlefield[&id];
            if p.is_creature() && effective_stats(state, p).is_ok_and(|(_, t)| t <= 0) {
                leaving.push(id);
            } else if p.card_types.contains(&CardType::Aura)
                && !p.attached_to.is_some_and(|h| state.battlefield.contains_key(&h))
            {
                leaving.push(id);
            }
        }
        for id in leaving {
            let p = state.remove_permanent(id, false).expect("present");
            if p.is_creature() {
                let dead = DeathEvent::of(&p);
                state.emit(GameEvent::Died { dead: dead.clone() });
                deaths.push(dead);
            }
            changed = true;
        }
        if !changed && state.idx.dirty.is_empty() && !state.idx.all_dirty {
            return deaths;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::{instantiate, names};

    fn bear(s: &mut GameState) -> ObjId {
        s.insert_permanent(instantiate(names::ROTLUNG_REANIMATOR, PlayerId::Alice).unwrap())
    }

    #[test]
    fn counters_annihilate_in_pairs() {
        let mut s = GameState::new();
        let id = bear(&mut s);
        s.add_counters(id, CounterKind::PlusOne, 3).unwrap();
        s.add_counters(id, CounterKind::MinusOne, 2).unwrap();
        let (s, deaths) = apply_state_based_actions(&s);
        let p = &s.battlefield[&id];
        assert_eq!(p.counter(CounterKind::PlusOne), 1);
        assert_eq!(p.counter(CounterKind::MinusOne), 0);
        assert!(!p.counters.contains_key(&CounterKind::MinusOne));
        assert!(deaths.is_empty());
    }

    #[test]
    fn nothing_to_do_is_identity() {
        let mut s = GameState::new();
        bear(&mut s);
        let (t, deaths) = apply_state_based_actions(&s);
        assert_eq!(s.to_json(), t.to_json());
        assert!(deaths.is_empty());
    }

    #[test]
    fn dead_token_leaves_no_trace() {
        let mut s = GameState::new();
        let mut p = instantiate(names::ROTLUNG_REANIMATOR, PlayerId::Alice).unwrap();
        p.is_token = true;
        let id = s.insert_permanent(p);
        s.add_counters(id, CounterKind::MinusOne, 2).unwrap();
        let (s, deaths) = apply_state_based_actions(&s);
        assert!(!s.battlefield.contains_key(&id));
        assert!(s.players.iter().all(|p| p.graveyard.is_empty()));
        assert_eq!(deaths.len(), 1);
        assert!(deaths[0].is_token);
    }

    #[test]
    fn nontoken_goes_to_graveyard() {
        let mut s = GameState::new();
        let id = bear(&mut s);
        s.add_counters(id, CounterKind::MinusOne, 2).unwrap();
        let (s, deaths) = apply_state_based_actions(&s);
        assert_eq!(deaths.len(), 1);
        assert_eq!(s.player(PlayerId::Alice).graveyard.len(), 1);
    }

    #[test]
    fn loss_conditions() {
        let mut s = GameState::new();
        assert_eq!(s.player(PlayerId::Alice).life, 20);
        s.player_mut(PlayerId::Bob).poison = 10;
        let (t, _) = apply_state_based_actions(&s);
        assert!(t.player(PlayerId::Bob).lost);
        assert!(!t.player(PlayerId::Alice).lost);
        s.player_mut(PlayerId::Bob).poison = 9;
        s.player_mut(PlayerId::Alice).life = 0;
        let (t, _) = apply_state_based_actions(&s);
        assert!(!t.player(PlayerId::Bob).lost);
        assert!(t.player(PlayerId::Alice).lost);
    }

    #[test]
    fn simultaneous_deaths_in_one_pass() {
        let mut s = GameState::new();
        let a = bear(&mut s);
        let b = bear(&mut s);
        s.add_counters(a, CounterKind::MinusOne, 5).unwrap();
        s.add_counters(b, CounterKind::MinusOne, 2).unwrap();
        let (s, deaths) = apply_state_based_actions(&s);
        assert_eq!(deaths.len(), 2);
        assert!(s.battlefield.is_empty());
        assert!(sba_fixpoint_holds(&s));
    }

    #[test]
    fn aura_falls_off_with_host() {
        let mut s = GameState::new();
        let host = bear(&mut s);
        let mut aura = instantiate(names::CLOAK_OF_MISTS, PlayerId::Alice).unwrap();
        aura.attached_to = Some(host);
        aura.is_token = true;
        let aura = s.insert_permanent(aura);
        s.add_counters(host, CounterKind::MinusOne, 2).unwrap();
        let (s, _) = apply_state_based_actions(&s);
        assert!(!s.battlefield.contains_key(&aura));
    }
}
