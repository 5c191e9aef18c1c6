use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::types::*;
use super::{EngineError, EngineResult};
use crate::cards::{self, Hook};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Priority {
    pub holder: PlayerId,
    /// Consecutive passes since the last action or resolution.
    pub passes: u8,
}

/// `controller` makes `player`'s decisions during `player`'s next turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ControlGrant {
    pub player: PlayerId,
    pub controller: PlayerId,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PendingChoice {
    DeclareAttackers { player: PlayerId, options: Vec<Vec<ObjId>> },
    /// Pump window of the write gadget: any number of activations.
    Pump { player: PlayerId, creature: ObjId },
    /// "You may cast the copy": resolve the entry by casting or declining.
    MayCast { player: PlayerId, card: String },
    ChooseTarget { player: PlayerId, entry_id: u64, options: Vec<Target> },
}

impl PendingChoice {
    pub fn player(&self) -> PlayerId {
        match self {
            PendingChoice::DeclareAttackers { player, .. }
            | PendingChoice::Pump { player, .. }
            | PendingChoice::MayCast { player, .. }
            | PendingChoice::ChooseTarget { player, .. } => *player,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DelayedTrigger {
    pub step: Step,
    pub trigger: TriggerInstance,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CombatState {
    pub attackers: Vec<ObjId>,
    pub declared: bool,
    pub pumped: bool,
}

/// Symbol and state naming of a compiled Turing machine, plus counters the
/// engine keeps while the machine runs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MachineRegistry {
    pub states: Vec<String>,
    pub symbols: Vec<String>,
    /// Creature type standing for each symbol.
    pub tags: Vec<String>,
    pub blank: usize,
    /// Bank phased in when the machine starts.
    #[serde(default)]
    pub start_state: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marker_state: Option<usize>,
    #[serde(default)]
    pub marker_entries: u64,
    #[serde(default)]
    pub reads: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_read_turn: Option<u64>,
    #[serde(default)]
    pub halted: bool,
    /// Sentence a mate board was compiled from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sentence: Option<String>,
}

/// Ordering applied to same-controller trigger groups. Only `Canonical` is
/// used in play; the others exist to check order independence.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriggerOrder {
    #[default]
    Canonical,
    Reversed,
    Rotated(usize),
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Index {
    pub built: bool,
    pub by_card: HashMap<String, BTreeSet<ObjId>>,
    pub watch: HashMap<String, BTreeSet<ObjId>>,
    pub subs: BTreeMap<Hook, BTreeSet<ObjId>>,
    pub tape: BTreeMap<u64, BTreeSet<ObjId>>,
    pub tapped: BTreeSet<ObjId>,
    pub phasing: BTreeSet<ObjId>,
    pub flyers: BTreeSet<ObjId>,
    pub attached: HashMap<ObjId, BTreeSet<ObjId>>,
    pub banks: BTreeMap<usize, BTreeSet<ObjId>>,
    pub tag_symbol: HashMap<String, usize>,
    pub dirty: BTreeSet<ObjId>,
    pub all_dirty: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameState {
    pub players: [PlayerState; 2],
    pub battlefield: BTreeMap<ObjId, Permanent>,
    pub stack: Vec<StackEntry>,
    pub exile: Vec<ExiledCard>,
    pub turn_number: u64,
    pub active_player: PlayerId,
    pub turn_controller: PlayerId,
    pub step: Step,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priority: Option<Priority>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pending: Option<PendingChoice>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub control_grants: Vec<ControlGrant>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub delayed: Vec<DelayedTrigger>,
    #[serde(default)]
    pub combat: CombatState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub machine: Option<MachineRegistry>,
    #[serde(default)]
    pub trigger_order: TriggerOrder,
    pub next_object: u64,
    pub next_stack_id: u64,
    #[serde(skip)]
    pub(crate) queue: Vec<GameEvent>,
    #[serde(skip)]
    pub(crate) idx: Index,
}

impl PartialEq for GameState {
    fn eq(&self, other: &Self) -> bool {
        self.to_json() == other.to_json()
    }
}

impl Default for GameState {
    fn default() -> Self {
        Self::new()
    }
}

impl GameState {
    /// Empty board, turn 1 untap step, Alice active, both players at 20.
    pub fn new() -> Self {
        let mut s = Self {
            players: [PlayerState::default(), PlayerState::default()],
            battlefield: BTreeMap::new(),
            stack: Vec::new(),
            exile: Vec::new(),
            turn_number: 1,
            active_player: PlayerId::Alice,
            turn_controller: PlayerId::Alice,
            step: Step::Untap,
            priority: None,
            pending: None,
            control_grants: Vec::new(),
            delayed: Vec::new(),
            combat: CombatState::default(),
            machine: None,
            trigger_order: TriggerOrder::Canonical,
            next_object: 1,
            next_stack_id: 1,
            queue: Vec::new(),
            idx: Index::default(),
        };
        s.idx.built = true;
        s
    }

    pub fn player(&self, p: PlayerId) -> &PlayerState {
        &self.players[p.index()]
    }

    pub fn player_mut(&mut self, p: PlayerId) -> &mut PlayerState {
        &mut self.players[p.index()]
    }

    /// Who makes `p`'s decisions right now.
    pub fn decider_for(&self, p: PlayerId) -> PlayerId {
        if p == self.active_player {
            self.turn_controller
        } else {
            p
        }
    }

    pub fn is_over(&self) -> bool {
        self.players.iter().any(|p| p.lost)
    }

    pub fn get(&self, id: ObjId) -> EngineResult<&Permanent> {
        self.battlefield.get(&id).ok_or(EngineError::NoSuchObject(id))
    }

    pub fn fresh_id(&mut self) -> ObjId {
        let id = ObjId(self.next_object);
        self.next_object += 1;
        id
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("state serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let mut s: GameState = serde_json::from_str(text)?;
        s.rebuild_index();
        Ok(s)
    }

    /// Hex SHA-256 of the canonical serialization.
    pub fn digest(&self) -> String {
        let h = Sha256::digest(self.to_json().as_bytes());
        h.iter().map(|b| format!("{b:02x}")).collect()
    }

    // ---- indexes -------------------------------------------------------

    pub(crate) fn ensure_index(&mut self) {
        if !self.idx.built {
            self.rebuild_index();
        }
    }

    pub fn rebuild_index(&mut self) {
        let mut idx = Index { built: true, all_dirty: true, ..Index::default() };
        if let Some(m) = &self.machine {
            idx.tag_symbol = m.tags.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        }
        self.idx = idx;
        let perms: Vec<Permanent> = self.battlefield.values().cloned().collect();
        for p in &perms {
            self.index_perm(p);
        }
    }

    pub(crate) fn tape_position(&self, p: &Permanent) -> Option<u64> {
        if !p.is_token || p.machine.is_some() || p.counter(CounterKind::Prey) > 0 || !p.is_creature() {
            return None;
        }
        let plus = p.counter(CounterKind::PlusOne);
        if plus == 0 {
            return None;
        }
        p.creature_types.iter().any(|t| self.idx.tag_symbol.contains_key(t)).then_some(plus - 1)
    }

    fn index_perm(&mut self, p: &Permanent) {
        let idx = &mut self.idx;
        if p.card == cards::names::NIGHT_OF_SOULS_BETRAYAL {
            idx.all_dirty = true;
        }
        idx.by_card.entry(p.card.clone()).or_default().insert(p.id);
        if let Some(def) = cards::definition(&p.card) {
            if p.is_creature() && def.keywords.contains(&cards::Keyword::Flying) {
                idx.flyers.insert(p.id);
            }
            for script in def.scripts() {
                if let Some(base) = script.watched_tag() {
                    idx.watch.entry(super::text::edited_tag(p, base)).or_default().insert(p.id);
                }
                for h in script.hooks() {
                    idx.subs.entry(*h).or_default().insert(p.id);
                }
            }
        }
        if p.tapped {
            idx.tapped.insert(p.id);
        }
        if p.phasing {
            idx.phasing.insert(p.id);
        }
        if let Some(host) = p.attached_to {
            idx.attached.entry(host).or_default().insert(p.id);
        }
        if let Some(MachineRole::Watcher { state, .. }) = p.machine {
            idx.banks.entry(state).or_default().insert(p.id);
        }
        idx.dirty.insert(p.id);
        if let Some(pos) = self.tape_position(p) {
            self.idx.tape.entry(pos).or_default().insert(p.id);
        }
    }

    fn unindex_perm(&mut self, p: &Permanent) {
        fn drop_from<K: std::hash::Hash + Eq>(m: &mut HashMap<K, BTreeSet<ObjId>>, k: &K, id: ObjId) {
            if let Some(set) = m.get_mut(k) {
                set.remove(&id);
                if set.is_empty() {
                    m.remove(k);
                }
            }
        }
        let pos = self.tape_position(p);
        let idx = &mut self.idx;
        if p.card == cards::names::NIGHT_OF_SOULS_BETRAYAL {
            idx.all_dirty = true;
        }
        drop_from(&mut idx.by_card, &p.card, p.id);
        if let Some(def) = cards::definition(&p.card) {
            for script in def.scripts() {
                if let Some(base) = script.watched_tag() {
                    drop_from(&mut idx.watch, &super::text::edited_tag(p, base), p.id);
                }
                for h in script.hooks() {
                    if let Some(set) = idx.subs.get_mut(h) {
                        set.remove(&p.id);
                    }
                }
            }
        }
        idx.tapped.remove(&p.id);
        idx.phasing.remove(&p.id);
        idx.flyers.remove(&p.id);
        if let Some(host) = p.attached_to {
            drop_from(&mut idx.attached, &host, p.id);
        }
        if let Some(MachineRole::Watcher { state, .. }) = p.machine {
            if let Some(set) = idx.banks.get_mut(&state) {
                set.remove(&p.id);
            }
        }
        if let Some(pos) = pos {
            if let Some(set) = idx.tape.get_mut(&pos) {
                set.remove(&p.id);
                if set.is_empty() {
                    idx.tape.remove(&pos);
                }
            }
        }
    }

    /// Put a permanent onto the battlefield, assigning a fresh id when
    /// `p.id` is zero. Emits an `Entered` event.
    pub fn insert_permanent(&mut self, mut p: Permanent) -> ObjId {
        self.ensure_index();
        if p.id.0 == 0 {
            p.id = self.fresh_id();
        } else if p.id.0 >= self.next_object {
            self.next_object = p.id.0 + 1;
        }
        if p.entered_turn == 0 {
            p.entered_turn = self.turn_number;
        }
        let id = p.id;
        self.index_perm(&p);
        self.battlefield.insert(id, p);
        self.queue.push(GameEvent::Entered { id });
        id
    }

    /// Mutate a permanent while keeping every index in step.
    pub fn modify<R>(&mut self, id: ObjId, f: impl FnOnce(&mut Permanent) -> R) -> EngineResult<R> {
        self.ensure_index();
        let mut p = self.battlefield.remove(&id).ok_or(EngineError::NoSuchObject(id))?;
        self.unindex_perm(&p);
        let r = f(&mut p);
        self.index_perm(&p);
        self.battlefield.insert(id, p);
        Ok(r)
    }

    pub fn add_counters(&mut self, id: ObjId, kind: CounterKind, n: u64) -> EngineResult<()> {
        if n == 0 {
            return Ok(());
        }
        self.modify(id, |p| *p.counters.entry(kind).or_insert(0) += n)
    }

    /// Removes up to `n` counters; returns how many were removed.
    pub fn remove_counters(&mut self, id: ObjId, kind: CounterKind, n: u64) -> EngineResult<u64> {
        self.modify(id, |p| {
            let have = p.counter(kind);
            let take = have.min(n);
            if have == take {
                p.counters.remove(&kind);
            } else {
                p.counters.insert(kind, have - take);
            }
            take
        })
    }

    /// Remove a permanent from the battlefield. A nontoken card goes to its
    /// owner's graveyard (or exile); a token ceases to exist. Auras attached
    /// to it are left for state-based actions.
    pub fn remove_permanent(&mut self, id: ObjId, to_exile: bool) -> EngineResult<Permanent> {
        self.ensure_index();
        let p = self.battlefield.remove(&id).ok_or(EngineError::NoSuchObject(id))?;
        self.unindex_perm(&p);
        if let Some(att) = self.idx.attached.get(&id) {
            self.idx.dirty.extend(att.iter().copied());
        }
        if !p.is_token {
            let card = CardRef { card: p.card.clone(), owner: p.owner };
            if to_exile {
                self.exile.push(ExiledCard {
                    card: card.card,
                    owner: card.owner,
                    time_counters: 0,
                    suspended: false,
                    imprinted_on: None,
                    priority_index: p.priority_index,
                });
            } else {
                self.player_mut(p.owner).graveyard.push(card);
            }
        }
        self.queue.push(GameEvent::Left { id, card: p.card.clone(), controller: p.controller, attached_to: p.attached_to });
        Ok(p)
    }

    /// Destroy or sacrifice: leave for the graveyard, reporting a death
    /// when it was a creature.
    pub fn destroy(&mut self, id: ObjId) -> EngineResult<()> {
        let p = self.remove_permanent(id, false)?;
        if p.is_creature() {
            self.queue.push(GameEvent::Died { dead: DeathEvent::of(&p) });
        }
        Ok(())
    }

    pub fn ids_of_card(&self, card: &str) -> Vec<ObjId> {
        self.idx.by_card.get(card).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    /// Phased-in permanents with the given card name.
    pub fn count_in_play(&self, card: &str) -> usize {
        self.idx
            .by_card
            .get(card)
            .map_or(0, |s| s.iter().filter(|id| !self.battlefield[id].phased_out).count())
    }

    pub fn controls_in_play(&self, player: PlayerId, card: &str) -> bool {
        self.idx
            .by_card
            .get(card)
            .is_some_and(|s| s.iter().any(|id| self.battlefield[id].controller == player && !self.battlefield[id].phased_out))
    }

    pub fn attachments_of(&self, id: ObjId) -> Vec<ObjId> {
        self.idx.attached.get(&id).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    pub fn tape_cells_at(&self, pos: u64) -> Vec<ObjId> {
        self.idx.tape.get(&pos).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    /// All tape-cell tokens keyed by position.
    pub fn tape_cells(&self) -> &BTreeMap<u64, BTreeSet<ObjId>> {
        &self.idx.tape
    }

    pub fn bank(&self, state: usize) -> Vec<ObjId> {
        self.idx.banks.get(&state).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    pub fn bank_states(&self) -> Vec<usize> {
        self.idx.banks.iter().filter(|(_, s)| !s.is_empty()).map(|(k, _)| *k).collect()
    }

    pub fn watchers_of(&self, tag: &str) -> Vec<ObjId> {
        self.idx.watch.get(tag).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    pub fn subscribers(&self, hook: Hook) -> Vec<ObjId> {
        self.idx.subs.get(&hook).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    pub fn symbol_of_tag(&self, tag: &str) -> Option<usize> {
        self.idx.tag_symbol.get(tag).copied()
    }

    pub(crate) fn tapped_ids(&self) -> Vec<ObjId> {
        self.idx.tapped.iter().copied().collect()
    }

    pub(crate) fn flyer_ids(&self) -> Vec<ObjId> {
        self.idx.flyers.iter().copied().collect()
    }

    pub(crate) fn phasing_ids(&self) -> Vec<ObjId> {
        self.idx.phasing.iter().copied().collect()
    }

    pub fn set_machine(&mut self, m: MachineRegistry) {
        self.machine = Some(m);
        self.rebuild_index();
    }

    /// Drop queued events, as after placing a board wholesale.
    pub(crate) fn clear_events(&mut self) {
        self.queue.clear();
    }

    pub fn emit(&mut self, e: GameEvent) {
        self.queue.push(e);
    }

    /// Life gain that reports an event for triggers.
    pub fn gain_life(&mut self, p: PlayerId, amount: u64) {
        if amount == 0 {
            return;
        }
        self.player_mut(p).life += amount as i64;
        self.queue.push(GameEvent::LifeGained { player: p, amount });
    }

    pub fn lose_life(&mut self, p: PlayerId, amount: u64) {
        self.player_mut(p).life -= amount as i64;
    }

    pub(crate) fn mark_all_dirty(&mut self) {
        self.idx.all_dirty = true;
    }
}
