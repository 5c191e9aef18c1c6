use super::combat;
use super::state::{GameState, PendingChoice, Priority};
use super::triggers::{push_in_place, settle};
use super::turn::advance_in_place;
use super::types::*;
use super::{EngineError, EngineResult};
use crate::cards;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionKind {
    /// A player must pick one of `actions`.
    Choice,
    /// Nobody holds priority; the game moves on by itself.
    Advance,
    GameOver,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub kind: DecisionKind,
    /// Player making the choice (after control changes).
    pub decider: Option<PlayerId>,
    /// Player on whose behalf the choice is made.
    pub player: Option<PlayerId>,
    pub actions: Vec<Action>,
}

pub fn decision_point(state: &GameState) -> Decision {
    decision_point_of(state)
}

pub(crate) fn decision_point_of(s: &GameState) -> Decision {
    if s.is_over() {
        return Decision { kind: DecisionKind::GameOver, decider: None, player: None, actions: Vec::new() };
    }
    if let Some(p) = &s.pending {
        let player = p.player();
        let actions = match p {
            PendingChoice::DeclareAttackers { options, .. } => {
                options.iter().map(|o| Action::DeclareAttackers { attackers: o.clone() }).collect()
            }
            PendingChoice::Pump { .. } => vec![Action::ChooseInteger { value: None }, Action::PassPriority],
            PendingChoice::MayCast { card, .. } => vec![Action::Cast { card: card.clone() }, Action::PassPriority],
            PendingChoice::ChooseTarget { options, .. } => {
                options.iter().map(|t| Action::ChooseTarget { target: *t }).collect()
            }
        };
        return Decision { kind: DecisionKind::Choice, decider: Some(s.decider_for(player)), player: Some(player), actions };
    }
    match s.priority {
        Some(pr) => Decision {
            kind: DecisionKind::Choice,
            decider: Some(s.decider_for(pr.holder)),
            player: Some(pr.holder),
            actions: priority_actions(s, pr.holder),
        },
        None => Decision { kind: DecisionKind::Advance, decider: None, player: None, actions: Vec::new() },
    }
}

fn priority_actions(s: &GameState, holder: PlayerId) -> Vec<Action> {
    let sorcery_speed = holder == s.active_player && s.step.is_main() && s.stack.is_empty();
    if sorcery_speed {
        let hand = &s.player(holder).hand;
        if let Some(c) = hand.iter().find(|c| cards::definition(&c.card).is_some_and(|d| d.forced_cast)) {
            return vec![Action::Cast { card: c.card.clone() }];
        }
    }
    let mut out = Vec::new();
    if sorcery_speed {
        for c in &s.player(holder).hand {
            if cards::definition(&c.card).is_some_and(|d| d.castable_from_hand()) {
                out.push(Action::Cast { card: c.card.clone() });
            }
        }
        out.extend(cards::activated_actions(s, holder));
    }
    out.dedup();
    out.push(Action::PassPriority);
    out
}

/// Legal actions for `decider` at the current decision point; empty when
/// `decider` is not the one to act.
pub fn legal_actions(state: &GameState, decider: PlayerId) -> Vec<Action> {
    let d = decision_point_of(state);
    if d.kind == DecisionKind::Choice && d.decider == Some(decider) {
        d.actions
    } else {
        Vec::new()
    }
}

fn is_offered(legal: &[Action], action: &Action) -> bool {
    legal.iter().any(|a| match (a, action) {
        (Action::ChooseInteger { value: None }, Action::ChooseInteger { value: Some(_) }) => true,
        _ => a == action,
    })
}

pub fn apply_action(state: &GameState, decider: PlayerId, action: &Action) -> EngineResult<GameState> {
    let mut s = state.clone();
    s.ensure_index();
    apply_in_place(&mut s, decider, action)?;
    Ok(s)
}

fn illegal(action: &Action, reason: impl Into<String>) -> EngineError {
    EngineError::IllegalAction { action: format!("{action:?}"), reason: reason.into() }
}

pub(crate) fn apply_in_place(s: &mut GameState, decider: PlayerId, action: &Action) -> EngineResult<()> {
    let d = decision_point_of(s);
    if d.kind != DecisionKind::Choice || d.decider != Some(decider) {
        return Err(illegal(action, format!("{decider} is not the one to act")));
    }
    if !is_offered(&d.actions, action) {
        return Err(illegal(action, "not among the legal actions"));
    }
    let player = d.player.expect("choice has a player");
    if let Some(p) = s.pending.clone() {
        match (p, action) {
            (PendingChoice::DeclareAttackers { .. }, Action::DeclareAttackers { attackers }) => {
                combat::declare(s, attackers.clone())?
            }
            (PendingChoice::Pump { creature, .. }, Action::ChooseInteger { value: Some(v) }) => {
                combat::pump(s, creature, v.to_u64()?)?
            }
            (PendingChoice::Pump { .. }, Action::PassPriority) => s.pending = None,
            (PendingChoice::MayCast { player, card }, Action::Cast { .. }) => {
                s.pending = None;
                cast(s, player, &card, true);
                settle(s);
            }
            (PendingChoice::MayCast { .. }, Action::PassPriority) => s.pending = None,
            (PendingChoice::ChooseTarget { entry_id, .. }, Action::ChooseTarget { target }) => {
                s.pending = None;
                if let Some(e) = s.stack.iter_mut().find(|e| e.id == entry_id) {
                    e.targets = vec![*target];
                }
            }
            _ => return Err(illegal(action, "does not answer the pending choice")),
        }
        return Ok(());
    }
    match action {
        Action::PassPriority => pass(s)?,
        Action::Cast { card } => {
            let hand = &mut s.player_mut(player).hand;
            let i = hand.iter().position(|c| &c.card == card).ok_or_else(|| illegal(action, "not in hand"))?;
            hand.remove(i);
            cast(s, player, card, false);
            settle(s);
            s.priority = Some(Priority { holder: player, passes: 0 });
        }
        Action::ActivateAbility { source, ability, target } => {
            let src = s.get(*source)?.clone();
            let mut t = TriggerInstance::ability(&src, ability, TriggerPayload::None);
            t.controller = player;
            push_in_place(s, vec![t]);
            if let (Some(top), Some(target)) = (s.stack.last_mut(), target) {
                top.targets = vec![Target::Object(*target)];
            }
            settle(s);
            s.priority = Some(Priority { holder: player, passes: 0 });
        }
        _ => return Err(illegal(action, "not answerable at priority")),
    }
    Ok(())
}

/// Put a spell on the stack, choosing its targets.
pub(crate) fn cast(s: &mut GameState, controller: PlayerId, card: &str, copy: bool) {
    let script = cards::definition(card).and_then(|d| d.spell_script()).unwrap_or("none").to_string();
    let t = TriggerInstance {
        controller,
        source: None,
        card: card.to_string(),
        script,
        payload: TriggerPayload::Card { card: CardRef { card: card.to_string(), owner: controller } },
        priority_index: 0,
        is_spell: true,
    };
    push_in_place(s, vec![t]);
    if copy {
        if let Some(StackSource::Spell { copy, .. }) = s.stack.last_mut().map(|e| &mut e.source) {
            *copy = true;
        }
    }
}

fn pass(s: &mut GameState) -> EngineResult<()> {
    let pr = s.priority.expect("priority held");
    if pr.passes == 0 {
        s.priority = Some(Priority { holder: pr.holder.opponent(), passes: 1 });
        return Ok(());
    }
    if s.stack.is_empty() {
        s.priority = None;
        advance_in_place(s)
    } else {
        resolve_top_in_place(s)
    }
}

/// Resolve the top stack entry (both players having passed).
pub fn resolve_top(state: &GameState) -> EngineResult<GameState> {
    let mut s = state.clone();
    s.ensure_index();
    if s.stack.is_empty() {
        return Err(EngineError::Rules("stack is empty".into()));
    }
    resolve_top_in_place(&mut s)?;
    Ok(s)
}

pub(crate) fn resolve_top_in_place(s: &mut GameState) -> EngineResult<()> {
    let entry = s.stack.pop().ok_or_else(|| EngineError::Rules("stack is empty".into()))?;
    let script = cards::script(&entry.script);
    let fizzled = !entry.targets.is_empty()
        && script.is_some_and(|sc| entry.targets.iter().all(|t| !sc.target_legal(s, &entry, t)));
    if !fizzled {
        if let Some(sc) = script {
            sc.resolve(s, &entry)?;
        } else if entry.script != "none" {
            return Err(EngineError::UnknownScript(entry.script.clone()));
        }
    }
    if let StackSource::Spell { card, owner, copy: false } = &entry.source {
        let permanent = cards::definition(card).is_some_and(|d| d.is_permanent_card());
        if fizzled || !permanent {
            s.player_mut(*owner).graveyard.push(CardRef { card: card.clone(), owner: *owner });
        } else {
            let p = cards::instantiate(card, *owner)?;
            s.insert_permanent(p);
        }
    }
    settle(s);
    s.priority = Some(Priority { holder: s.active_player, passes: 0 });
    Ok(())
}
