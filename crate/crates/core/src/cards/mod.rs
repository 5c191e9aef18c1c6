//! Card library: one JSON definition per card under `cards/`, and the
//! ability scripts those definitions name. Scripts are registered by id and
//! looked up at runtime.

mod chain;
mod data;
pub mod names;
mod registry;
mod scripts;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::engine::{CardType, Color, EngineError, EngineResult, Permanent, PlayerId};

pub use chain::cleanup_chain_effects;
pub use registry::{script, script_ids, AbilityKind, AbilityScript, Hook};
pub use scripts::{
    activated_actions, clockspinning_adjust, cruel_entertainment_swap, death_trigger_tokens, delay_exile,
    must_attack, pump_available, TokenSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Keyword {
    Flying,
    Lifelink,
    Haste,
    Infect,
    Deathtouch,
    Hexproof,
    Unblockable,
    Vigilance,
    Phasing,
    Trample,
    Devoid,
    Vanishing,
    Suspend,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CardDefinition {
    pub name: String,
    /// Spelling used in the deck list, when it differs or the card is listed.
    #[serde(default)]
    pub table_name: Option<String>,
    #[serde(default)]
    pub in_deck_list: bool,
    #[serde(default)]
    pub legacy_legal: bool,
    #[serde(default)]
    pub token: bool,
    pub types: BTreeSet<CardType>,
    #[serde(default)]
    pub subtypes: BTreeSet<String>,
    #[serde(default)]
    pub colors: BTreeSet<Color>,
    #[serde(default)]
    pub power: Option<i64>,
    #[serde(default)]
    pub toughness: Option<i64>,
    #[serde(default)]
    pub keywords: BTreeSet<Keyword>,
    #[serde(default)]
    pub abilities: Vec<String>,
    pub rules_text: String,
    /// Casting it is the only legal play once it is in hand.
    #[serde(default)]
    pub forced_cast: bool,
    /// Which clauses are scripted and which are left out.
    #[serde(default)]
    pub notes: String,
    #[serde(skip)]
    resolved: Vec<&'static dyn AbilityScript>,
}

impl CardDefinition {
    pub fn scripts(&self) -> &[&'static dyn AbilityScript] {
        &self.resolved
    }

    pub fn is_permanent_card(&self) -> bool {
        !self.types.contains(&CardType::Instant) && !self.types.contains(&CardType::Sorcery)
    }

    /// Script run when this card resolves as a spell.
    pub fn spell_script(&self) -> Option<&'static str> {
        self.resolved.iter().find(|s| s.kind() == AbilityKind::Spell).map(|s| s.id())
    }

    pub fn castable_from_hand(&self) -> bool {
        !self.is_permanent_card() && self.spell_script().is_some()
    }
}

static LIBRARY: Lazy<BTreeMap<String, CardDefinition>> = Lazy::new(|| {
    let mut lib = BTreeMap::new();
    for (file, text) in data::CARD_FILES.iter().chain(data::TOKEN_FILES) {
        let mut def: CardDefinition =
            serde_json::from_str(text).unwrap_or_else(|e| panic!("card file {file}: {e}"));
        def.resolved = def
            .abilities
            .iter()
            .map(|id| script(id).unwrap_or_else(|| panic!("card file {file}: unknown script {id}")))
            .collect();
        let prev = lib.insert(def.name.clone(), def);
        assert!(prev.is_none(), "duplicate card definition in {file}");
    }
    lib
});

static LOOKUP: Lazy<HashMap<String, &'static CardDefinition>> =
    Lazy::new(|| LIBRARY.iter().map(|(k, v)| (k.clone(), v)).collect());

pub fn definition(name: &str) -> Option<&'static CardDefinition> {
    LOOKUP.get(name).copied()
}

/// Every definition, cards and tokens, by normalized name.
pub fn library() -> &'static BTreeMap<String, CardDefinition> {
    &LIBRARY
}

/// Deck-list spellings that differ from the card's printed name.
pub const SPELLING_MAP: &[(&str, &str)] = &[
    ("Priviledged Position", names::PRIVILEGED_POSITION),
    ("Xanthrid Necromancer", names::XATHRID_NECROMANCER),
    ("Choak", names::CHOKE),
    ("Blazing Archeon", names::BLAZING_ARCHON),
    ("Night of Soul's Betrayal", names::NIGHT_OF_SOULS_BETRAYAL),
];

/// Printed name for a raw spelling.
pub fn normalize_name(raw: &str) -> String {
    SPELLING_MAP.iter().find(|(r, _)| *r == raw).map_or_else(|| raw.to_string(), |(_, n)| n.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeckList {
    /// (raw deck-list name, count) in list order.
    pub entries: Vec<(String, u32)>,
}

impl DeckList {
    pub fn total(&self) -> u32 {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn count(&self, raw: &str) -> u32 {
        self.entries.iter().filter(|(n, _)| n == raw).map(|(_, c)| c).sum()
    }
}

/// The 60-card list, verbatim.
pub fn instantiate_deck() -> DeckList {
    DeckList { entries: data::DECK.iter().map(|(n, c)| (n.to_string(), *c)).collect() }
}

/// A fresh battlefield object for `card` (id 0 until inserted).
pub fn instantiate(card: &str, owner: PlayerId) -> EngineResult<Permanent> {
    let def = definition(card).ok_or_else(|| EngineError::UnknownCard(card.to_string()))?;
    Ok(Permanent {
        id: crate::engine::ObjId(0),
        card: def.name.clone(),
        owner,
        controller: owner,
        card_types: def.types.clone(),
        base_power: def.power,
        base_toughness: def.toughness,
        counters: BTreeMap::new(),
        creature_types: def.subtypes.clone(),
        colors: def.colors.clone(),
        is_token: def.token,
        phased_out: false,
        phasing: def.keywords.contains(&Keyword::Phasing),
        tapped: false,
        attached_to: None,
        text_edits: Vec::new(),
        named_card: None,
        pump: (0, 0),
        machine: None,
        priority_index: 0,
        entered_turn: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_deck_entry_resolves() {
        let deck = instantiate_deck();
        assert_eq!(deck.total(), 60);
        assert_eq!(deck.count("Lotus Petal"), 3);
        assert_eq!(deck.count("Rotlung Reanimator"), 1);
        assert_eq!(deck.count("Cruel Entertainment"), 1);
        for (raw, _) in &deck.entries {
            let def = definition(&normalize_name(raw)).unwrap_or_else(|| panic!("{raw}"));
            assert!(def.in_deck_list, "{raw}");
            assert_eq!(def.table_name.as_deref().unwrap_or(&def.name), raw.as_str());
        }
    }

    #[test]
    fn supplements_are_flagged() {
        for n in [names::NIGHT_OF_SOULS_BETRAYAL, names::OLIVIA_VOLDAREN, names::HUMAN_FRAILTY, names::SHADES_FORM] {
            let d = definition(n).unwrap();
            assert!(!d.in_deck_list, "{n}");
        }
    }

    #[test]
    fn spelling_normalization() {
        assert_eq!(normalize_name("Priviledged Position"), "Privileged Position");
        assert_eq!(normalize_name("Choak"), "Choke");
        assert_eq!(normalize_name("Blazing Archeon"), "Blazing Archon");
        assert_eq!(normalize_name("Moat"), "Moat");
    }

    #[test]
    fn instantiate_copies_definition() {
        let p = instantiate(names::ROTLUNG_REANIMATOR, PlayerId::Alice).unwrap();
        assert_eq!((p.base_power, p.base_toughness), (Some(2), Some(2)));
        assert!(p.has_type("Zombie") && p.has_type("Cleric"));
        assert!(instantiate("Black Lotus", PlayerId::Alice).is_err());
    }
}
