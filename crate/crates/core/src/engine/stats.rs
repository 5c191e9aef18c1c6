use std::collections::BTreeSet;

use super::state::GameState;
use super::text::edited_tag;
use super::types::*;
use super::{EngineError, EngineResult};
use crate::cards::{self, names, Keyword};

/// Power and toughness after the fixed layering: base, then global
/// modifiers, then counters, then until-end-of-turn pumps.
pub fn effective_stats(state: &GameState, p: &Permanent) -> EngineResult<(i64, i64)> {
    if !p.is_creature() {
        return Err(EngineError::NotACreature(p.id));
    }
    let (mut pw, mut th) = (p.base_power.unwrap_or(0), p.base_toughness.unwrap_or(0));
    let shrink = state.count_in_play(names::NIGHT_OF_SOULS_BETRAYAL) as i64;
    pw -= shrink;
    th -= shrink;
    let net = p.counter(CounterKind::PlusOne) as i64 - p.counter(CounterKind::MinusOne) as i64;
    pw += net;
    th += net;
    Ok((pw + p.pump.0, th + p.pump.1))
}

/// Colors after color-setting statics.
pub fn effective_colors(state: &GameState, p: &Permanent) -> BTreeSet<Color> {
    if is_colorless_by_static(state, p) {
        return BTreeSet::new();
    }
    p.colors.clone()
}

fn is_colorless_by_static(state: &GameState, p: &Permanent) -> bool {
    state.ids_of_card(names::GHOSTFLAME_SLIVER).into_iter().any(|id| {
        let g = &state.battlefield[&id];
        !g.phased_out && p.has_type(&edited_tag(g, "Sliver"))
    })
}

pub fn is_colorless(state: &GameState, p: &Permanent) -> bool {
    p.colors.is_empty() || is_colorless_by_static(state, p)
}

pub fn has_keyword(state: &GameState, p: &Permanent, kw: Keyword) -> bool {
    if cards::definition(&p.card).is_some_and(|d| d.keywords.contains(&kw)) {
        return true;
    }
    match kw {
        Keyword::Haste => state.controls_in_play(p.controller, names::HELLRAISER_GOBLIN),
        Keyword::Unblockable => state
            .attachments_of(p.id)
            .iter()
            .any(|a| state.battlefield.get(a).is_some_and(|a| a.card == names::CLOAK_OF_MISTS && !a.phased_out)),
        Keyword::Phasing => p.phasing,
        Keyword::Hexproof => {
            p.card != names::PRIVILEGED_POSITION && state.controls_in_play(p.controller, names::PRIVILEGED_POSITION)
        }
        _ => false,
    }
}

/// Whether `p` could be declared as an attacker this turn.
pub fn can_attack(state: &GameState, p: &Permanent) -> bool {
    if !p.is_creature() || p.phased_out || p.tapped || p.controller != state.active_player {
        return false;
    }
    if p.entered_turn >= state.turn_number && !has_keyword(state, p, Keyword::Haste) {
        return false;
    }
    if state.count_in_play(names::MOAT) > 0 && !has_keyword(state, p, Keyword::Flying) {
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::instantiate;

    fn with_night(state: &mut GameState) {
        state.insert_permanent(instantiate(names::NIGHT_OF_SOULS_BETRAYAL, PlayerId::Bob).unwrap());
    }

    #[test]
    fn ageless_entity_token_under_global_shrink_is_three_three() {
        let mut s = GameState::new();
        with_night(&mut s);
        let mut e = instantiate(names::AGELESS_ENTITY, PlayerId::Alice).unwrap();
        e.is_token = true;
        let id = s.insert_permanent(e);
        assert_eq!(effective_stats(&s, &s.battlefield[&id]).unwrap(), (3, 3));
    }

    #[test]
    fn imp_with_counter_under_shrink_is_one_one() {
        let mut s = GameState::new();
        with_night(&mut s);
        let id = s.insert_permanent(instantiate(names::DAGGERDROME_IMP, PlayerId::Alice).unwrap());
        s.add_counters(id, CounterKind::PlusOne, 1).unwrap();
        assert_eq!(effective_stats(&s, &s.battlefield[&id]).unwrap(), (1, 1));
    }

    #[test]
    fn plain_creature_has_base_stats() {
        let mut s = GameState::new();
        let id = s.insert_permanent(instantiate(names::ROTLUNG_REANIMATOR, PlayerId::Alice).unwrap());
        assert_eq!(effective_stats(&s, &s.battlefield[&id]).unwrap(), (2, 2));
    }

    #[test]
    fn non_creature_rejected() {
        let mut s = GameState::new();
        let id = s.insert_permanent(instantiate(names::MOAT, PlayerId::Alice).unwrap());
        assert!(matches!(effective_stats(&s, &s.battlefield[&id]), Err(EngineError::NotACreature(_))));
    }

    #[test]
    fn phased_out_global_effect_does_not_apply() {
        let mut s = GameState::new();
        with_night(&mut s);
        let night = s.ids_of_card(names::NIGHT_OF_SOULS_BETRAYAL)[0];
        s.modify(night, |p| p.phased_out = true).unwrap();
        let id = s.insert_permanent(instantiate(names::ROTLUNG_REANIMATOR, PlayerId::Alice).unwrap());
        assert_eq!(effective_stats(&s, &s.battlefield[&id]).unwrap(), (2, 2));
    }
}
