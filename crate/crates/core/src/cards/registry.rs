use std::collections::BTreeMap;

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::engine::{EngineResult, GameEvent, GameState, Permanent, StackEntry, Target, TriggerPayload};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbilityKind {
    Static,
    Triggered,
    Activated,
    Spell,
}

/// Engine events a triggered script subscribes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hook {
    Upkeep,
    BeginCombat,
    EndStep,
    Died,
    LifeGained,
    Entered,
    /// The permanent carrying the script left the battlefield.
    LeftSelf,
    /// Loses a time counter at its controller's upkeep; sacrificed at zero.
    Vanishing,
}

/// One ability of a card. Scripts hold no state; everything lives in
/// [`GameState`].
pub trait AbilityScript: Send + Sync {
    fn id(&self) -> &'static str;
    fn kind(&self) -> AbilityKind;

    fn hooks(&self) -> &'static [Hook] {
        &[]
    }

    /// Printed creature type whose deaths this ability watches. Text edits
    /// change which type is actually watched.
    fn watched_tag(&self) -> Option<&'static str> {
        None
    }

    /// Whether `source` triggers on `ev`, and with what payload.
    fn trigger(&self, _state: &GameState, _source: &Permanent, _ev: &GameEvent) -> Option<TriggerPayload> {
        None
    }

    /// Leaves-the-battlefield trigger of the departed permanent.
    fn on_leave(&self, _state: &GameState, _ev: &GameEvent) -> Option<TriggerPayload> {
        None
    }

    /// Legal target tuples when put on the stack; `None` means untargeted.
    /// An empty list means it can't be put on the stack.
    fn targets(&self, _state: &GameState, _entry: &StackEntry) -> Option<Vec<Vec<Target>>> {
        None
    }

    fn target_legal(&self, _state: &GameState, _entry: &StackEntry, _target: &Target) -> bool {
        true
    }

    fn resolve(&self, _state: &mut GameState, _entry: &StackEntry) -> EngineResult<()> {
        Ok(())
    }
}

static REGISTRY: Lazy<BTreeMap<&'static str, &'static dyn AbilityScript>> = Lazy::new(|| {
    let mut m = BTreeMap::new();
    for s in super::scripts::all() {
        let prev = m.insert(s.id(), s);
        assert!(prev.is_none(), "script {} registered twice", s.id());
    }
    m
});

pub fn script(id: &str) -> Option<&'static dyn AbilityScript> {
    REGISTRY.get(id).copied()
}

pub fn script_ids() -> impl Iterator<Item = &'static str> {
    REGISTRY.keys().copied()
}

impl std::fmt::Debug for dyn AbilityScript {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}
