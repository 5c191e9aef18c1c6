use std::collections::BTreeSet;

use super::{names, Keyword};
use super::registry::{AbilityKind, AbilityScript, Hook};
use crate::engine::{
    edited_color, edited_tag, effective_stats, has_keyword, is_colorless, Action, CardRef, CardType, Color, CounterKind, DelayedTrigger,
    EngineError, EngineResult, ExiledCard, GameEvent, GameState, MachineRole, ObjId, PendingChoice, Permanent, PlayerId,
    StackEntry, StackSource, Step, Target, TriggerInstance, TriggerPayload, WatcherAction, ControlGrant,
};

/// Scripts with no effect of their own: statics read by the engine by card
/// name, setup-only spells, and activated abilities folded into macros.
struct Passive {
    id: &'static str,
    kind: AbilityKind,
    hooks: &'static [Hook],
}

impl AbilityScript for Passive {
    fn id(&self) -> &'static str {
        self.id
    }
    fn kind(&self) -> AbilityKind {
        self.kind
    }
    fn hooks(&self) -> &'static [Hook] {
        self.hooks
    }
}

const fn passive(id: &'static str, kind: AbilityKind) -> Passive {
    Passive { id, kind, hooks: &[] }
}

static PASSIVE: &[Passive] = &[
    passive("land_mana", AbilityKind::Activated),
    passive("cloak_unblockable", AbilityKind::Static),
    passive("sliver_colorless", AbilityKind::Static),
    passive("grants_phasing", AbilityKind::Static),
    passive("choke", AbilityKind::Static),
    passive("lands_every_type", AbilityKind::Static),
    passive("draw_lock", AbilityKind::Static),
    passive("search_lock", AbilityKind::Static),
    passive("must_attack", AbilityKind::Static),
    passive("moat", AbilityKind::Static),
    passive("pithing_needle", AbilityKind::Static),
    passive("global_shrink", AbilityKind::Static),
    passive("text_edit_setup", AbilityKind::Static),
    passive("mana_loop_part", AbilityKind::Activated),
    passive("shade_pump", AbilityKind::Activated),
    passive("delay", AbilityKind::Static),
    Passive { id: "vanishing", kind: AbilityKind::Static, hooks: &[Hook::Vanishing] },
];

pub(super) fn all() -> Vec<&'static dyn AbilityScript> {
    let mut v: Vec<&'static dyn AbilityScript> = PASSIVE.iter().map(|p| p as &dyn AbilityScript).collect();
    v.extend([
        &ROTLUNG as &dyn AbilityScript,
        &XATHRID,
        &Reader,
        &MachineStart,
        &HaltWin,
        &AgelessEntity,
        &HelmCopy,
        &HelmEquip,
        &TetzimocEnters,
        &GraveBetrayal,
        &GraveBetrayalReturn,
        &HumanFrailty,
        &InfernalReckoning,
        &RealityAcidLeaves,
        &PanopticMirror,
        &CruelEntertainment,
        &Clockspinning,
    ]);
    v
}

fn source_id(entry: &StackEntry) -> Option<ObjId> {
    match entry.source {
        StackSource::Ability { source, .. } => source,
        StackSource::Spell { .. } => None,
    }
}

fn object_target(entry: &StackEntry) -> Option<ObjId> {
    match entry.targets.first() {
        Some(Target::Object(id)) => Some(*id),
        _ => None,
    }
}

fn phased_in(s: &GameState, id: ObjId) -> bool {
    s.battlefield.get(&id).is_some_and(|p| !p.phased_out)
}

/// The controller's opponent loses.
fn win(s: &mut GameState, winner: PlayerId) {
    s.player_mut(winner.opponent()).life = 0;
}

// ---- tokens ---------------------------------------------------------------

/// A creature token as a death trigger would create it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSpec {
    pub tag: String,
    pub color: Color,
    pub power: i64,
    pub toughness: i64,
    pub tapped: bool,
    pub controller: PlayerId,
}

impl TokenSpec {
    pub fn permanent(&self) -> EngineResult<Permanent> {
        let mut p = super::instantiate(names::ZOMBIE_TOKEN, self.controller)?;
        p.creature_types = BTreeSet::from([self.tag.clone()]);
        p.colors = BTreeSet::from([self.color]);
        p.base_power = Some(self.power);
        p.base_toughness = Some(self.toughness);
        p.tapped = self.tapped;
        Ok(p)
    }
}

fn watcher_token(w: &Permanent, tapped: bool) -> TokenSpec {
    TokenSpec {
        tag: edited_tag(w, "Zombie"),
        color: edited_color(w, Color::Black),
        power: 2,
        toughness: 2,
        tapped,
        controller: w.controller,
    }
}

/// Token specs produced by every phased-in death watcher that sees `dead`
/// die, in watcher id order.
pub fn death_trigger_tokens(state: &GameState, dead: &Permanent) -> Vec<TokenSpec> {
    let mut ids = BTreeSet::new();
    for tag in &dead.creature_types {
        ids.extend(state.watchers_of(tag));
    }
    let mut out = Vec::new();
    for id in ids {
        let Some(w) = state.battlefield.get(&id) else { continue };
        if w.phased_out || w.id == dead.id {
            continue;
        }
        let Some(def) = super::definition(&w.card) else { continue };
        for sc in def.scripts() {
            let spec = match sc.id() {
                "rotlung_reanimator" => watcher_token(w, false),
                "xathrid_necromancer" if dead.controller == w.controller => watcher_token(w, true),
                _ => continue,
            };
            if dead.creature_types.contains(&edited_tag(w, sc.watched_tag().unwrap_or_default())) {
                out.push(spec);
            }
        }
    }
    out
}

// ---- death watchers and the machine ---------------------------------------

struct DeathWatcher {
    id: &'static str,
    base: &'static str,
    own_only: bool,
    tapped: bool,
}

static ROTLUNG: DeathWatcher = DeathWatcher { id: "rotlung_reanimator", base: "Cleric", own_only: false, tapped: false };
static XATHRID: DeathWatcher = DeathWatcher { id: "xathrid_necromancer", base: "Human", own_only: true, tapped: true };

impl AbilityScript for DeathWatcher {
    fn id(&self) -> &'static str {
        self.id
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Triggered
    }
    fn watched_tag(&self) -> Option<&'static str> {
        Some(self.base)
    }
    fn trigger(&self, _s: &GameState, src: &Permanent, ev: &GameEvent) -> Option<TriggerPayload> {
        let GameEvent::Died { dead } = ev else { return None };
        let watched = dead.creature_types.contains(&edited_tag(src, self.base));
        (watched && (!self.own_only || dead.controller == src.controller)).then(|| TriggerPayload::Died { dead: dead.clone() })
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        let Some(w) = source_id(entry).and_then(|id| s.battlefield.get(&id)).cloned() else {
            // Gone before resolving: printed text.
            let spec = TokenSpec {
                tag: "Zombie".into(),
                color: Color::Black,
                power: 2,
                toughness: 2,
                tapped: self.tapped,
                controller: entry.controller,
            };
            s.insert_permanent(spec.permanent()?);
            return Ok(());
        };
        match w.machine {
            Some(MachineRole::Watcher { state, action, .. }) => machine_step(s, &w, state, action),
            _ => {
                s.insert_permanent(watcher_token(&w, self.tapped).permanent()?);
                Ok(())
            }
        }
    }
}

fn machine_reader(s: &GameState) -> Option<ObjId> {
    s.ids_of_card(names::WILD_EVOCATION)
        .into_iter()
        .find(|id| matches!(s.battlefield[id].machine, Some(MachineRole::Reader)))
}

/// A watcher of bank `state` resolving: write its token under the head,
/// then move the head and switch banks, or halt.
fn machine_step(s: &mut GameState, w: &Permanent, state: usize, action: WatcherAction) -> EngineResult<()> {
    let reader = machine_reader(s).ok_or_else(|| EngineError::Rules("machine has no reader".into()))?;
    let head = s.battlefield[&reader].counter(CounterKind::Time);
    let mut cell = watcher_token(w, false).permanent()?;
    cell.counters.insert(CounterKind::PlusOne, head + 1);
    s.insert_permanent(cell);
    let WatcherAction::Write { right, next, .. } = action else {
        // A halting watcher puts back what it read.
        if let Some(m) = s.machine.as_mut() {
            m.halted = true;
        }
        win(s, w.controller);
        return Ok(());
    };
    if right {
        s.add_counters(reader, CounterKind::Time, 1)?;
    } else if head == 0 {
        return Err(EngineError::Rules("head moved left of cell 0".into()));
    } else {
        s.remove_counters(reader, CounterKind::Time, 1)?;
    }
    if next != state {
        for id in s.bank(state) {
            s.modify(id, |p| p.phased_out = true)?;
        }
        for id in s.bank(next) {
            s.modify(id, |p| p.phased_out = false)?;
        }
    }
    if let Some(m) = s.machine.as_mut() {
        m.reads += 1;
        if m.marker_state == Some(next) && next != state {
            m.marker_entries += 1;
        }
    }
    Ok(())
}

/// Each upkeep: make sure a cell lies under the head, then kill it.
struct Reader;

impl AbilityScript for Reader {
    fn id(&self) -> &'static str {
        "machine_reader"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Triggered
    }
    fn hooks(&self) -> &'static [Hook] {
        &[Hook::Upkeep]
    }
    fn trigger(&self, s: &GameState, src: &Permanent, _ev: &GameEvent) -> Option<TriggerPayload> {
        let running = s.machine.as_ref().is_some_and(|m| !m.halted);
        (running && matches!(src.machine, Some(MachineRole::Reader))).then_some(TriggerPayload::None)
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        let Some(id) = source_id(entry).filter(|id| phased_in(s, *id)) else { return Ok(()) };
        let Some(m) = s.machine.clone() else { return Ok(()) };
        let reader = &s.battlefield[&id];
        let (head, controller) = (reader.counter(CounterKind::Time), reader.controller);
        let cell = match s.tape_cells_at(head).first() {
            Some(c) => *c,
            None => {
                let spec = TokenSpec {
                    tag: m.tags[m.blank].clone(),
                    color: Color::Black,
                    power: 2,
                    toughness: 2,
                    tapped: false,
                    controller,
                };
                let mut p = spec.permanent()?;
                p.counters.insert(CounterKind::PlusOne, head + 1);
                s.insert_permanent(p)
            }
        };
        if let Some(m) = s.machine.as_mut() {
            m.first_read_turn.get_or_insert(s.turn_number);
        }
        let toughness = effective_stats(s, &s.battlefield[&cell])?.1;
        s.add_counters(cell, CounterKind::MinusOne, toughness.max(1) as u64)
    }
}

/// Infest's resolution: the reader and the start bank phase in.
struct MachineStart;

impl AbilityScript for MachineStart {
    fn id(&self) -> &'static str {
        "machine_start"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Spell
    }
    fn resolve(&self, s: &mut GameState, _entry: &StackEntry) -> EngineResult<()> {
        let Some(start) = s.machine.as_ref().map(|m| m.start_state) else { return Ok(()) };
        let mut ids = s.bank(start);
        ids.extend(machine_reader(s));
        for id in ids {
            s.modify(id, |p| p.phased_out = false)?;
        }
        Ok(())
    }
}

struct HaltWin;

impl AbilityScript for HaltWin {
    fn id(&self) -> &'static str {
        "machine_halt_win"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Spell
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        win(s, entry.controller);
        Ok(())
    }
}

// ---- write gadget -----------------------------------------------------------

struct AgelessEntity;

impl AbilityScript for AgelessEntity {
    fn id(&self) -> &'static str {
        "ageless_entity"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Triggered
    }
    fn hooks(&self) -> &'static [Hook] {
        &[Hook::LifeGained]
    }
    fn trigger(&self, _s: &GameState, src: &Permanent, ev: &GameEvent) -> Option<TriggerPayload> {
        match ev {
            GameEvent::LifeGained { player, amount } if *player == src.controller => {
                Some(TriggerPayload::Amount { amount: *amount })
            }
            _ => None,
        }
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        let (Some(id), TriggerPayload::Amount { amount }) = (source_id(entry), &entry.payload) else { return Ok(()) };
        if s.battlefield.contains_key(&id) {
            s.add_counters(id, CounterKind::PlusOne, *amount)?;
        }
        Ok(())
    }
}

struct HelmCopy;

impl AbilityScript for HelmCopy {
    fn id(&self) -> &'static str {
        "helm_copy"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Triggered
    }
    fn hooks(&self) -> &'static [Hook] {
        &[Hook::BeginCombat]
    }
    fn trigger(&self, s: &GameState, src: &Permanent, _ev: &GameEvent) -> Option<TriggerPayload> {
        let host = src.attached_to.filter(|h| s.battlefield.get(h).is_some_and(|p| p.is_creature() && !p.phased_out))?;
        (s.active_player == src.controller).then_some(TriggerPayload::Object { id: host })
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        let TriggerPayload::Object { id } = entry.payload else { return Ok(()) };
        let Some(orig) = s.battlefield.get(&id).cloned() else { return Ok(()) };
        let mut copy = super::instantiate(&orig.card, entry.controller)?;
        copy.card_types = orig.card_types.clone();
        copy.card_types.remove(&CardType::Legendary);
        copy.base_power = orig.base_power;
        copy.base_toughness = orig.base_toughness;
        copy.creature_types = orig.creature_types.clone();
        copy.colors = orig.colors.clone();
        copy.text_edits = orig.text_edits.clone();
        copy.priority_index = orig.priority_index;
        copy.is_token = true;
        s.insert_permanent(copy);
        Ok(())
    }
}

fn needle_names(s: &GameState, card: &str) -> bool {
    s.ids_of_card(names::PITHING_NEEDLE).into_iter().any(|id| {
        let p = &s.battlefield[&id];
        !p.phased_out && p.named_card.as_deref() == Some(card)
    })
}

struct HelmEquip;

impl AbilityScript for HelmEquip {
    fn id(&self) -> &'static str {
        "helm_equip"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Activated
    }
    fn target_legal(&self, s: &GameState, entry: &StackEntry, t: &Target) -> bool {
        matches!(t, Target::Object(id) if s.battlefield.get(id).is_some_and(|p| p.is_creature() && !p.phased_out && p.controller == entry.controller))
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        if let (Some(helm), Some(t)) = (source_id(entry), object_target(entry)) {
            if s.battlefield.contains_key(&helm) {
                s.modify(helm, |p| p.attached_to = Some(t))?;
            }
        }
        Ok(())
    }
}

/// Activated abilities `holder` may start at sorcery speed.
pub fn activated_actions(s: &GameState, holder: PlayerId) -> Vec<Action> {
    let mut out = Vec::new();
    if needle_names(s, names::HELM_OF_THE_HOST) {
        return out;
    }
    for helm in s.ids_of_card(names::HELM_OF_THE_HOST) {
        let h = &s.battlefield[&helm];
        if h.phased_out || h.controller != holder {
            continue;
        }
        for p in s.battlefield.values() {
            if p.is_creature() && !p.phased_out && p.controller == holder && h.attached_to != Some(p.id) {
                out.push(Action::ActivateAbility { source: helm, ability: "helm_equip".into(), target: Some(p.id) });
            }
        }
    }
    out
}

/// Forced attacks: `player` controls a phased-in Hellraiser Goblin.
pub fn must_attack(s: &GameState, player: PlayerId) -> bool {
    s.controls_in_play(player, names::HELLRAISER_GOBLIN)
}

fn swamp_count(s: &GameState, who: PlayerId) -> usize {
    let mine = |card: &str| {
        s.ids_of_card(card).into_iter().filter(|id| {
            let p = &s.battlefield[id];
            p.controller == who && !p.phased_out
        }).count()
    };
    let omen = if s.controls_in_play(who, names::PRISMATIC_OMEN) { mine(names::ANCIENT_TOMB) } else { 0 };
    mine(names::SWAMP) + omen
}

/// Magus of the Coffers under Umbral Mantle nets `swamps - 5` black mana a
/// cycle, so it is unbounded with six or more Swamps.
fn unbounded_black(s: &GameState, who: PlayerId) -> bool {
    let magus = s.ids_of_card(names::MAGUS_OF_THE_COFFERS).into_iter().any(|m| {
        let p = &s.battlefield[&m];
        p.controller == who
            && !p.phased_out
            && s.attachments_of(m).iter().any(|a| s.battlefield[a].card == names::UMBRAL_MANTLE && !s.battlefield[a].phased_out)
    });
    magus && swamp_count(s, who) >= 6
}

/// Whether `creature` can take the `{B}: +1/+1` pump any number of times.
pub fn pump_available(s: &GameState, creature: ObjId) -> bool {
    let Some(p) = s.battlefield.get(&creature) else { return false };
    let shade = s
        .attachments_of(creature)
        .iter()
        .any(|a| s.battlefield[a].card == names::SHADES_FORM && !s.battlefield[a].phased_out);
    shade && unbounded_black(s, p.controller)
}

// ---- cleanup chain ------------------------------------------------------------

struct TetzimocEnters;

impl AbilityScript for TetzimocEnters {
    fn id(&self) -> &'static str {
        "tetzimoc_enters"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Triggered
    }
    fn hooks(&self) -> &'static [Hook] {
        &[Hook::Entered]
    }
    fn trigger(&self, _s: &GameState, src: &Permanent, ev: &GameEvent) -> Option<TriggerPayload> {
        matches!(ev, GameEvent::Entered { id } if *id == src.id).then_some(TriggerPayload::None)
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        let prey: Vec<ObjId> = s
            .battlefield
            .values()
            .filter(|p| {
                p.is_creature() && !p.phased_out && p.controller != entry.controller && p.counter(CounterKind::Prey) > 0
            })
            .map(|p| p.id)
            .collect();
        for id in prey {
            s.destroy(id)?;
        }
        Ok(())
    }
}

struct GraveBetrayal;

impl AbilityScript for GraveBetrayal {
    fn id(&self) -> &'static str {
        "grave_betrayal"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Triggered
    }
    fn hooks(&self) -> &'static [Hook] {
        &[Hook::Died]
    }
    fn trigger(&self, _s: &GameState, src: &Permanent, ev: &GameEvent) -> Option<TriggerPayload> {
        let GameEvent::Died { dead } = ev else { return None };
        (!dead.is_token && dead.controller != src.controller).then(|| TriggerPayload::Died { dead: dead.clone() })
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        let card = match &entry.source {
            StackSource::Ability { card, .. } | StackSource::Spell { card, .. } => card.clone(),
        };
        s.delayed.push(DelayedTrigger {
            step: Step::End,
            trigger: TriggerInstance {
                controller: entry.controller,
                source: source_id(entry),
                card,
                script: "grave_betrayal_return".into(),
                payload: entry.payload.clone(),
                priority_index: entry.priority_index,
                is_spell: false,
            },
        });
        Ok(())
    }
}

struct GraveBetrayalReturn;

impl AbilityScript for GraveBetrayalReturn {
    fn id(&self) -> &'static str {
        "grave_betrayal_return"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Triggered
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        let TriggerPayload::Died { dead } = &entry.payload else { return Ok(()) };
        let grave = &mut s.player_mut(dead.owner).graveyard;
        let Some(i) = grave.iter().rposition(|c| c.card == dead.card) else { return Ok(()) };
        grave.remove(i);
        let mut p = super::instantiate(&dead.card, dead.owner)?;
        p.controller = entry.controller;
        p.counters.insert(CounterKind::PlusOne, 1);
        p.creature_types.insert("Zombie".into());
        p.colors.insert(Color::Black);
        s.insert_permanent(p);
        Ok(())
    }
}

/// Whether `caster` may target `p`.
fn targetable(s: &GameState, p: &Permanent, caster: PlayerId) -> bool {
    !p.phased_out && (p.controller == caster || !has_keyword(s, p, Keyword::Hexproof))
}

fn creatures_where(
    s: &GameState,
    caster: PlayerId,
    f: impl Fn(&GameState, &Permanent) -> bool,
) -> Vec<Vec<Target>> {
    s.battlefield
        .values()
        .filter(|p| p.is_creature() && targetable(s, p, caster) && f(s, p))
        .map(|p| vec![Target::Object(p.id)])
        .collect()
}

struct HumanFrailty;

impl HumanFrailty {
    fn ok(_s: &GameState, p: &Permanent) -> bool {
        p.has_type("Human")
    }
}

impl AbilityScript for HumanFrailty {
    fn id(&self) -> &'static str {
        "human_frailty"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Spell
    }
    fn targets(&self, s: &GameState, entry: &StackEntry) -> Option<Vec<Vec<Target>>> {
        Some(creatures_where(s, entry.controller, Self::ok))
    }
    fn target_legal(&self, s: &GameState, entry: &StackEntry, t: &Target) -> bool {
        matches!(t, Target::Object(id) if s.battlefield.get(id).is_some_and(|p| p.is_creature() && targetable(s, p, entry.controller) && Self::ok(s, p)))
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        if let Some(id) = object_target(entry) {
            s.destroy(id)?;
        }
        Ok(())
    }
}

struct InfernalReckoning;

impl AbilityScript for InfernalReckoning {
    fn id(&self) -> &'static str {
        "infernal_reckoning"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Spell
    }
    fn targets(&self, s: &GameState, entry: &StackEntry) -> Option<Vec<Vec<Target>>> {
        Some(creatures_where(s, entry.controller, is_colorless))
    }
    fn target_legal(&self, s: &GameState, entry: &StackEntry, t: &Target) -> bool {
        matches!(t, Target::Object(id) if s.battlefield.get(id).is_some_and(|p| p.is_creature() && targetable(s, p, entry.controller) && is_colorless(s, p)))
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        let Some(id) = object_target(entry) else { return Ok(()) };
        let power = effective_stats(s, s.get(id)?)?.0.max(0) as u64;
        s.remove_permanent(id, true)?;
        s.gain_life(entry.controller, power);
        Ok(())
    }
}

struct RealityAcidLeaves;

impl AbilityScript for RealityAcidLeaves {
    fn id(&self) -> &'static str {
        "reality_acid_leaves"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Triggered
    }
    fn hooks(&self) -> &'static [Hook] {
        &[Hook::LeftSelf]
    }
    fn on_leave(&self, _s: &GameState, ev: &GameEvent) -> Option<TriggerPayload> {
        match ev {
            GameEvent::Left { attached_to: Some(host), .. } => Some(TriggerPayload::Object { id: *host }),
            _ => None,
        }
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        if let TriggerPayload::Object { id } = entry.payload {
            if s.battlefield.contains_key(&id) {
                s.destroy(id)?;
            }
        }
        Ok(())
    }
}

// ---- control swap ---------------------------------------------------------

struct PanopticMirror;

impl AbilityScript for PanopticMirror {
    fn id(&self) -> &'static str {
        "panoptic_mirror"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Triggered
    }
    fn hooks(&self) -> &'static [Hook] {
        &[Hook::Upkeep]
    }
    fn trigger(&self, s: &GameState, src: &Permanent, _ev: &GameEvent) -> Option<TriggerPayload> {
        if s.active_player != src.controller {
            return None;
        }
        let e = s.exile.iter().find(|e| e.imprinted_on == Some(src.id))?;
        Some(TriggerPayload::Card { card: CardRef { card: e.card.clone(), owner: e.owner } })
    }
    fn resolve(&self, s: &mut GameState, entry: &StackEntry) -> EngineResult<()> {
        if let TriggerPayload::Card { card } = &entry.payload {
            s.pending = Some(PendingChoice::MayCast { player: entry.controller, card: card.card.clone() });
        }
        Ok(())
    }
}

struct CruelEntertainment;

impl AbilityScript for CruelEntertainment {
    fn id(&self) -> &'static str {
        "cruel_entertainment"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Spell
    }
    fn targets(&self, _s: &GameState, _entry: &StackEntry) -> Option<Vec<Vec<Target>>> {
        // The effect is symmetric, so both orders are the same choice.
        Some(vec![vec![Target::Player(PlayerId::Alice), Target::Player(PlayerId::Bob)]])
    }
    fn resolve(&self, s: &mut GameState, _entry: &StackEntry) -> EngineResult<()> {
        swap_control(s);
        Ok(())
    }
}

fn swap_control(s: &mut GameState) {
    for p in [PlayerId::Alice, PlayerId::Bob] {
        s.control_grants.retain(|g| g.player != p);
        s.control_grants.push(ControlGrant { player: p, controller: p.opponent() });
    }
}

/// Each player's next turn is decided by the other player.
pub fn cruel_entertainment_swap(state: &GameState) -> GameState {
    let mut s = state.clone();
    swap_control(&mut s);
    s
}

// ---- setup helpers ----------------------------------------------------------

struct Clockspinning;

impl AbilityScript for Clockspinning {
    fn id(&self) -> &'static str {
        "clockspinning"
    }
    fn kind(&self) -> AbilityKind {
        AbilityKind::Static
    }
}

/// Remove (or add) one counter of the first kind present on a permanent, or
/// one time counter on a card in exile.
pub fn clockspinning_adjust(state: &GameState, target: Target, add: bool) -> EngineResult<GameState> {
    let mut s = state.clone();
    let none = || EngineError::Rules("no counter to choose".into());
    match target {
        Target::Exiled(i) => {
            let e = s.exile.get_mut(i).ok_or_else(|| EngineError::Rules(format!("no exiled card {i}")))?;
            if e.time_counters == 0 {
                return Err(none());
            }
            if add {
                e.time_counters += 1;
            } else {
                e.time_counters -= 1;
            }
        }
        Target::Object(id) => {
            let kind = *s.get(id)?.counters.keys().next().ok_or_else(none)?;
            if add {
                s.add_counters(id, kind, 1)?;
            } else {
                s.remove_counters(id, kind, 1)?;
            }
        }
        Target::Player(_) => return Err(none()),
    }
    Ok(s)
}

/// Countered by Delay: into exile with three time counters and suspend.
/// Returns the new exile index.
pub fn delay_exile(s: &mut GameState, card: &str, owner: PlayerId) -> EngineResult<usize> {
    if super::definition(card).is_none() {
        return Err(EngineError::UnknownCard(card.to_string()));
    }
    s.exile.push(ExiledCard {
        card: card.to_string(),
        owner,
        time_counters: 3,
        suspended: true,
        imprinted_on: None,
        priority_index: 0,
    });
    Ok(s.exile.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::instantiate;
    use crate::engine::{apply_text_edit, TextEdit};

    fn dead_cleric(s: &mut GameState) -> Permanent {
        let mut p = instantiate(names::ROTLUNG_REANIMATOR, PlayerId::Bob).unwrap();
        p.id = s.fresh_id();
        p
    }

    #[test]
    fn plain_rotlung_makes_black_zombie() {
        let mut s = GameState::new();
        s.insert_permanent(instantiate(names::ROTLUNG_REANIMATOR, PlayerId::Alice).unwrap());
        let dead = dead_cleric(&mut s);
        let specs = death_trigger_tokens(&s, &dead);
        assert_eq!(specs.len(), 1);
        assert_eq!((specs[0].tag.as_str(), specs[0].color, specs[0].power), ("Zombie", Color::Black, 2));
    }

    #[test]
    fn edited_rotlung_makes_edited_token() {
        let mut s = GameState::new();
        let mut w = instantiate(names::ROTLUNG_REANIMATOR, PlayerId::Alice).unwrap();
        for e in [
            TextEdit::replace_type("Cleric", "Aetherborn"),
            TextEdit::replace_type("Zombie", "Sliver"),
            TextEdit::replace_color(Color::Black, Color::White),
        ] {
            w = apply_text_edit(&w, e).unwrap();
        }
        s.insert_permanent(w);
        let mut dead = dead_cleric(&mut s);
        assert!(death_trigger_tokens(&s, &dead).is_empty());
        dead.creature_types = BTreeSet::from(["Aetherborn".to_string()]);
        let specs = death_trigger_tokens(&s, &dead);
        assert_eq!(specs.len(), 1);
        assert_eq!((specs[0].tag.as_str(), specs[0].color), ("Sliver", Color::White));
    }

    #[test]
    fn phased_out_watcher_is_silent() {
        let mut s = GameState::new();
        let mut w = instantiate(names::ROTLUNG_REANIMATOR, PlayerId::Alice).unwrap();
        w.phased_out = true;
        s.insert_permanent(w);
        let dead = dead_cleric(&mut s);
        assert!(death_trigger_tokens(&s, &dead).is_empty());
    }

    #[test]
    fn xathrid_only_sees_own_humans() {
        let mut s = GameState::new();
        s.insert_permanent(instantiate(names::XATHRID_NECROMANCER, PlayerId::Alice).unwrap());
        let mut dead = instantiate(names::MAGUS_OF_THE_COFFERS, PlayerId::Bob).unwrap();
        dead.id = s.fresh_id();
        assert!(death_trigger_tokens(&s, &dead).is_empty());
        dead.controller = PlayerId::Alice;
        let specs = death_trigger_tokens(&s, &dead);
        assert_eq!(specs.len(), 1);
        assert!(specs[0].tapped);
    }

    #[test]
    fn clockspinning_on_suspended_card() {
        let mut s = GameState::new();
        let i = delay_exile(&mut s, names::CHOKE, PlayerId::Bob).unwrap();
        assert_eq!(s.exile[i].time_counters, 3);
        let down = clockspinning_adjust(&s, Target::Exiled(i), false).unwrap();
        assert_eq!(down.exile[i].time_counters, 2);
        let up = clockspinning_adjust(&s, Target::Exiled(i), true).unwrap();
        assert_eq!(up.exile[i].time_counters, 4);
    }

    #[test]
    fn clockspinning_needs_a_counter() {
        let mut s = GameState::new();
        let id = s.insert_permanent(instantiate(names::MOAT, PlayerId::Alice).unwrap());
        assert!(clockspinning_adjust(&s, Target::Object(id), true).is_err());
        s.add_counters(id, CounterKind::Time, 2).unwrap();
        let t = clockspinning_adjust(&s, Target::Object(id), false).unwrap();
        assert_eq!(t.battlefield[&id].counter(CounterKind::Time), 1);
    }

    #[test]
    fn swap_grants_both_turns() {
        let s = cruel_entertainment_swap(&GameState::new());
        assert!(s.control_grants.contains(&ControlGrant { player: PlayerId::Alice, controller: PlayerId::Bob }));
        assert!(s.control_grants.contains(&ControlGrant { player: PlayerId::Bob, controller: PlayerId::Alice }));
        assert!(GameState::new().control_grants.is_empty());
    }

    #[test]
    fn needle_hides_equip() {
        let mut s = GameState::new();
        let helm = s.insert_permanent(instantiate(names::HELM_OF_THE_HOST, PlayerId::Alice).unwrap());
        s.insert_permanent(instantiate(names::AGELESS_ENTITY, PlayerId::Alice).unwrap());
        assert_eq!(activated_actions(&s, PlayerId::Alice).len(), 1);
        let mut needle = instantiate(names::PITHING_NEEDLE, PlayerId::Bob).unwrap();
        needle.named_card = Some(names::HELM_OF_THE_HOST.into());
        s.insert_permanent(needle);
        assert!(activated_actions(&s, PlayerId::Alice).is_empty());
        assert!(s.battlefield.contains_key(&helm));
    }
}
