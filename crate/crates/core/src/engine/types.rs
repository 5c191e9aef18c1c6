use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::EngineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlayerId {
    Alice,
    Bob,
}

impl PlayerId {
    pub fn opponent(self) -> Self {
        match self {
            PlayerId::Alice => PlayerId::Bob,
            PlayerId::Bob => PlayerId::Alice,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlayerId::Alice => "alice",
            PlayerId::Bob => "bob",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjId(pub u64);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CounterKind {
    PlusOne,
    MinusOne,
    Prey,
    Time,
    SuspendTime,
    VanishingTime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    White,
    Blue,
    Black,
    Red,
    Green,
}

impl Color {
    pub const ALL: [Color; 5] = [Color::White, Color::Blue, Color::Black, Color::Red, Color::Green];

    pub fn word(self) -> &'static str {
        match self {
            Color::White => "white",
            Color::Blue => "blue",
            Color::Black => "black",
            Color::Red => "red",
            Color::Green => "green",
        }
    }

    pub fn from_word(w: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.word() == w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CardType {
    Creature,
    Artifact,
    Enchantment,
    Instant,
    Sorcery,
    Land,
    Planeswalker,
    Aura,
    Equipment,
    Legendary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    Untap,
    Upkeep,
    Draw,
    Main1,
    BeginCombat,
    DeclareAttackers,
    CombatDamage,
    Main2,
    End,
}

impl Step {
    pub fn next(self) -> Option<Step> {
        use Step::*;
        Some(match self {
            Untap => Upkeep,
            Upkeep => Draw,
            Draw => Main1,
            Main1 => BeginCombat,
            BeginCombat => DeclareAttackers,
            DeclareAttackers => CombatDamage,
            CombatDamage => Main2,
            Main2 => End,
            End => return None,
        })
    }

    pub fn is_main(self) -> bool {
        matches!(self, Step::Main1 | Step::Main2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TextEditKind {
    ReplaceCreatureType,
    ReplaceColorWord,
    /// `to_tag` is a comma-separated color list; empty means colorless.
    SetColors,
    AddCreatureType,
}

/// A persistent change to a permanent's rules text or type line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TextEdit {
    pub kind: TextEditKind,
    #[serde(default)]
    pub from_tag: String,
    pub to_tag: String,
}

impl TextEdit {
    pub fn replace_type(from: &str, to: &str) -> Self {
        Self { kind: TextEditKind::ReplaceCreatureType, from_tag: from.into(), to_tag: to.into() }
    }

    pub fn replace_color(from: Color, to: Color) -> Self {
        Self { kind: TextEditKind::ReplaceColorWord, from_tag: from.word().into(), to_tag: to.word().into() }
    }

    pub fn add_type(tag: &str) -> Self {
        Self { kind: TextEditKind::AddCreatureType, from_tag: String::new(), to_tag: tag.into() }
    }

    pub fn set_colors(colors: &[Color]) -> Self {
        let list: Vec<&str> = colors.iter().map(|c| c.word()).collect();
        Self { kind: TextEditKind::SetColors, from_tag: String::new(), to_tag: list.join(",") }
    }
}

/// What a watcher does once its read symbol dies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum WatcherAction {
    Write { write: usize, right: bool, next: usize },
    Halt,
}

/// Role of a permanent inside a compiled Turing-machine bank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "role")]
pub enum MachineRole {
    /// Head position is its time-counter count.
    Reader,
    Watcher { state: usize, read: usize, action: WatcherAction },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permanent {
    pub id: ObjId,
    /// Normalized card name; key into the card library.
    pub card: String,
    pub owner: PlayerId,
    pub controller: PlayerId,
    pub card_types: BTreeSet<CardType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_power: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_toughness: Option<i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counters: BTreeMap<CounterKind, u64>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub creature_types: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub colors: BTreeSet<Color>,
    #[serde(default)]
    pub is_token: bool,
    #[serde(default)]
    pub phased_out: bool,
    #[serde(default)]
    pub phasing: bool,
    #[serde(default)]
    pub tapped: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attached_to: Option<ObjId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub text_edits: Vec<TextEdit>,
    /// Card name chosen as it entered (Pithing Needle).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub named_card: Option<String>,
    /// Until-end-of-turn power/toughness modification.
    #[serde(default, skip_serializing_if = "is_zero_pair")]
    pub pump: (i64, i64),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub machine: Option<MachineRole>,
    /// Fixed order among same-controller simultaneous triggers.
    #[serde(default)]
    pub priority_index: u32,
    /// Turn number it came under its controller's control.
    #[serde(default)]
    pub entered_turn: u64,
}

fn is_zero_pair(p: &(i64, i64)) -> bool {
    *p == (0, 0)
}

impl Permanent {
    pub fn is_creature(&self) -> bool {
        self.card_types.contains(&CardType::Creature)
    }

    pub fn counter(&self, kind: CounterKind) -> u64 {
        self.counters.get(&kind).copied().unwrap_or(0)
    }

    pub fn has_type(&self, tag: &str) -> bool {
        self.creature_types.contains(tag)
    }

    pub fn is_colorless_base(&self) -> bool {
        self.colors.is_empty()
    }
}

/// A card outside the battlefield; tokens never become one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CardRef {
    pub card: String,
    pub owner: PlayerId,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlayerState {
    pub life: i64,
    pub poison: u64,
    pub hand: Vec<CardRef>,
    pub library: Vec<CardRef>,
    pub graveyard: Vec<CardRef>,
    pub lost: bool,
}

impl Default for PlayerState {
    fn default() -> Self {
        Self { life: 20, poison: 0, hand: Vec::new(), library: Vec::new(), graveyard: Vec::new(), lost: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExiledCard {
    pub card: String,
    pub owner: PlayerId,
    pub time_counters: u64,
    pub suspended: bool,
    /// Set when the card is imprinted on a permanent (Panoptic Mirror).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imprinted_on: Option<ObjId>,
    #[serde(default)]
    pub priority_index: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "id")]
pub enum Target {
    Player(PlayerId),
    Object(ObjId),
    Exiled(usize),
}

/// Snapshot of a creature as it died.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeathEvent {
    pub id: ObjId,
    pub card: String,
    pub owner: PlayerId,
    pub controller: PlayerId,
    pub is_token: bool,
    pub creature_types: BTreeSet<String>,
}

impl DeathEvent {
    pub fn of(p: &Permanent) -> Self {
        Self {
            id: p.id,
            card: p.card.clone(),
            owner: p.owner,
            controller: p.controller,
            is_token: p.is_token,
            creature_types: p.creature_types.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TriggerPayload {
    None,
    Amount { amount: u64 },
    Died { dead: DeathEvent },
    Object { id: ObjId },
    Exiled { index: usize },
    Card { card: CardRef },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum StackSource {
    Spell { card: String, owner: PlayerId, copy: bool },
    Ability { source: Option<ObjId>, card: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StackEntry {
    pub id: u64,
    pub source: StackSource,
    pub controller: PlayerId,
    /// Script identifier run on resolution.
    pub script: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<Target>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pending_choices: Vec<u64>,
    pub payload: TriggerPayload,
    #[serde(default)]
    pub priority_index: u32,
}

/// A triggered ability waiting to be put on the stack.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriggerInstance {
    pub controller: PlayerId,
    pub source: Option<ObjId>,
    pub card: String,
    pub script: String,
    pub payload: TriggerPayload,
    pub priority_index: u32,
    /// A spell cast as part of the batch (suspend) rather than an ability.
    #[serde(default)]
    pub is_spell: bool,
}

impl TriggerInstance {
    pub fn ability(source: &Permanent, script: &str, payload: TriggerPayload) -> Self {
        Self {
            controller: source.controller,
            source: Some(source.id),
            card: source.card.clone(),
            script: script.to_string(),
            payload,
            priority_index: source.priority_index,
            is_spell: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GameEvent {
    StepBegan { step: Step },
    Died { dead: DeathEvent },
    LifeGained { player: PlayerId, amount: u64 },
    Entered { id: ObjId },
    Left { id: ObjId, card: String, controller: PlayerId, attached_to: Option<ObjId> },
}

/// Natural number written in binary without leading zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BinaryNat(String);

impl BinaryNat {
    pub fn parse(s: &str) -> Result<Self, EngineError> {
        let ok = s == "0" || (s.starts_with('1') && s.bytes().all(|b| b == b'0' || b == b'1'));
        if ok {
            Ok(Self(s.to_string()))
        } else {
            Err(EngineError::BadInteger(s.to_string()))
        }
    }

    pub fn from_u64(v: u64) -> Self {
        Self(format!("{v:b}"))
    }

    pub fn to_u64(&self) -> Result<u64, EngineError> {
        u64::from_str_radix(&self.0, 2).map_err(|_| EngineError::BadInteger(self.0.clone()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for BinaryNat {
    type Error = EngineError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Self::parse(&s)
    }
}

impl From<BinaryNat> for String {
    fn from(b: BinaryNat) -> Self {
        b.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Action {
    Cast {
        card: String,
    },
    ActivateAbility {
        source: ObjId,
        ability: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<ObjId>,
    },
    /// `value: None` only appears in [`legal_actions`](super::legal_actions)
    /// output, standing for every natural number.
    ChooseInteger {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<BinaryNat>,
    },
    ChooseTarget {
        target: Target,
    },
    PassPriority,
    DeclareAttackers {
        attackers: Vec<ObjId>,
    },
    DeclareBlockers {
        blocks: Vec<(ObjId, ObjId)>,
    },
    OrderTriggers {
        order: Vec<usize>,
    },
}

impl Action {
    pub fn choose(v: u64) -> Self {
        Action::ChooseInteger { value: Some(BinaryNat::from_u64(v)) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_literals_are_canonical() {
        assert_eq!(BinaryNat::parse("101").unwrap().to_u64().unwrap(), 5);
        assert_eq!(BinaryNat::parse("0").unwrap().to_u64().unwrap(), 0);
        for bad in ["", "01", "00", "12", "1 0", "-1"] {
            assert!(BinaryNat::parse(bad).is_err(), "{bad:?}");
        }
        assert_eq!(BinaryNat::from_u64(6).as_str(), "110");
    }

    #[test]
    fn binary_literal_rejected_on_deserialize() {
        let r: Result<Action, _> = serde_json::from_str(r#"{"kind":"choose_integer","value":"0011"}"#);
        assert!(r.is_err());
    }
}
