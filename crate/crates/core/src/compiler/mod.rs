//! Board compiler: turns a Turing machine into a zero-player board whose
//! forced play runs the machine, and an arithmetic sentence into the full
//! mate-in-n board around a dormant search machine.

mod audit;
mod machine;
mod mate;

use std::collections::{BTreeMap, BTreeSet};

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cards;
use crate::engine::{EngineError, GameState, ObjId, PlayerId};
use crate::tm::{MachineConfig, Quantifier, Symbol, TmError};

pub use audit::{audit, cleanup_problems, report_of};
pub use machine::{build_machine_board, compile_machine, decode_board_tape};
pub use mate::{build_mate_board, compile_mate_in_n, gadget_plan, LIFE_BUFFER, RESIDUE_CARDS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("machine needs {symbols} symbol tags but only {available} creature types are usable")]
    Capacity { symbols: usize, available: usize },
    #[error("board is mid-cycle: {0}")]
    MidCycle(String),
    #[error("machine is dormant: no watcher bank is phased in")]
    Dormant,
    #[error("unrecognizable bank: {0}")]
    Unrecognized(String),
    #[error(transparent)]
    Tm(#[from] TmError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

pub type CompileResult<T> = Result<T, CompileError>;

/// Tag of the blank symbol.
pub const BLANK_TAG: &str = "Aetherborn";
/// Tag of the divider symbol; Ageless Entity copies carry it.
pub const DIVIDER_TAG: &str = "Elemental";

const CANDIDATE_TAGS: &[&str] = &[
    "Advisor", "Ally", "Angel", "Antelope", "Ape", "Archer", "Assassin", "Avatar", "Badger", "Barbarian", "Basilisk",
    "Bat", "Bear", "Bird", "Boar", "Camel", "Cat", "Centaur", "Chimera", "Cockatrice", "Construct", "Crab", "Crocodile",
    "Cyclops", "Demon", "Devil", "Djinn", "Dog", "Dragon", "Drake", "Dryad", "Dwarf", "Efreet", "Elephant", "Faerie",
    "Ferret", "Fish", "Fox", "Frog", "Gargoyle", "Giant", "Gnome", "Goat", "Gorgon", "Griffin", "Hag", "Harpy", "Hippo",
    "Homunculus", "Horror", "Horse", "Hound", "Hydra", "Hyena", "Illusion", "Insect", "Jackal", "Jellyfish", "Kavu",
    "Kirin", "Kithkin", "Knight", "Kobold", "Kraken", "Lizard", "Manticore", "Merfolk", "Minotaur", "Mole", "Monk",
    "Moonfolk", "Mouse", "Mutant", "Naga", "Nightmare", "Ninja", "Noggle", "Octopus", "Ogre", "Ooze", "Orc", "Otter",
    "Ox", "Pegasus", "Phoenix", "Pirate", "Plant", "Rabbit", "Rat", "Rhino", "Rogue", "Salamander", "Samurai", "Satyr",
    "Scarecrow", "Scorpion", "Scout", "Serpent", "Shapeshifter", "Sheep", "Siren", "Skeleton", "Snake", "Soldier",
    "Specter", "Sphinx", "Spider", "Spirit", "Squid", "Squirrel", "Starfish", "Thopter", "Thrull", "Treefolk", "Troll",
    "Turtle", "Unicorn", "Warrior", "Weird", "Whale", "Wolf", "Wolverine", "Wombat", "Worm", "Wraith", "Wurm", "Yeti",
];

/// Creature types free for ordinary symbols: every candidate that no card in
/// the library already uses, and none the setup edits produce.
pub static SYMBOL_TAGS: Lazy<Vec<&'static str>> = Lazy::new(|| {
    let mut taken: BTreeSet<&str> = ["Wall", "Human", "Dinosaur", "Spellshaper", "Zombie", "Cleric"].into();
    for def in cards::library().values() {
        taken.extend(def.subtypes.iter().map(String::as_str));
    }
    CANDIDATE_TAGS.iter().copied().filter(|t| !taken.contains(t)).collect()
});

/// Number of symbols the encoding can name.
pub fn tag_capacity() -> usize {
    SYMBOL_TAGS.len() + 2
}

/// Creature type for every symbol of `alphabet`: blank and divider get their
/// fixed tags, the rest take free tags in order.
pub fn assign_tags(alphabet_len: usize, blank: Symbol, divider: Option<Symbol>) -> CompileResult<Vec<String>> {
    let ordinary = alphabet_len - 1 - usize::from(divider.is_some());
    if ordinary > SYMBOL_TAGS.len() {
        return Err(CompileError::Capacity { symbols: alphabet_len, available: tag_capacity() });
    }
    let mut free = SYMBOL_TAGS.iter();
    Ok((0..alphabet_len)
        .map(|s| {
            if s == blank {
                BLANK_TAG.to_string()
            } else if Some(s) == divider {
                DIVIDER_TAG.to_string()
            } else {
                free.next().expect("checked capacity").to_string()
            }
        })
        .collect())
}

/// One tape token as placed by the compiler.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    pub tag: String,
    /// +1/+1 counters; the cell index is one less.
    pub plus_counters: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardLayout {
    pub tape_permanents: BTreeMap<u64, CellSpec>,
    /// Reader, watchers and the global effects the machine needs.
    pub machine_permanents: Vec<ObjId>,
    /// Everything placed for the setup turns.
    pub gadget_permanents: Vec<ObjId>,
    /// (card, time counters) for each suspended card.
    pub exile_schedule: Vec<(String, u64)>,
    pub tags: Vec<String>,
    pub blank: Symbol,
    pub head: u64,
    pub state: usize,
}

impl BoardLayout {
    /// The configuration this layout encodes.
    pub fn decode(&self) -> MachineConfig {
        let mut cfg = MachineConfig::new(self.state);
        cfg.head = self.head;
        for (pos, cell) in &self.tape_permanents {
            if let Some(sym) = self.tags.iter().position(|t| *t == cell.tag).filter(|s| *s != self.blank) {
                cfg.tape.insert(*pos, sym);
            }
        }
        cfg
    }
}

/// Who decides what in one round of the setup turns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundPlan {
    pub round: usize,
    pub quantifier: Quantifier,
    pub alice_turn: u64,
    pub bob_turn: u64,
    /// Player choosing the round's integer (the decider of Alice's turn).
    pub chooser: PlayerId,
    /// Panoptic Mirror is phased in on this round's Bob turn.
    pub mirror_phased_in: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountdownZone {
    Exile,
    Battlefield,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Countdown {
    pub card: String,
    pub counters: u64,
    pub zone: CountdownZone,
    /// Whose upkeep removes a counter.
    pub ticks_on: PlayerId,
    /// Turn on which the last counter comes off.
    pub fires_on_turn: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetPlan {
    pub n: usize,
    pub swap_schedule: Vec<RoundPlan>,
    pub countdown: Vec<Countdown>,
    /// Round in which the machine first reads its tape.
    pub activation_round: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompilationReport {
    pub permanents: usize,
    pub by_card: BTreeMap<String, usize>,
    pub watchers: usize,
    pub tape_length: usize,
    /// Time or vanishing counters per countdown card.
    pub countdowns: BTreeMap<String, u64>,
    pub swap_schedule: Vec<RoundPlan>,
    /// Cards used that are not on the deck list.
    pub outside_deck_list: Vec<String>,
    /// Cards with no definition in the library.
    pub foreign_cards: Vec<String>,
    pub problems: Vec<String>,
}

impl CompilationReport {
    pub fn passed(&self) -> bool {
        self.foreign_cards.is_empty() && self.problems.is_empty()
    }
}

/// A compiled board with everything the compiler knows about it.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub state: GameState,
    pub layout: BoardLayout,
    pub plan: Option<GadgetPlan>,
    pub report: CompilationReport,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_avoid_library_types() {
        for t in SYMBOL_TAGS.iter() {
            assert!(cards::library().values().all(|d| !d.subtypes.contains(*t)), "{t}");
        }
        assert!(SYMBOL_TAGS.len() >= 60);
    }

    #[test]
    fn assignment_is_injective() {
        let tags = assign_tags(10, 0, Some(1)).unwrap();
        assert_eq!(tags[0], BLANK_TAG);
        assert_eq!(tags[1], DIVIDER_TAG);
        assert_eq!(tags.iter().collect::<BTreeSet<_>>().len(), 10);
    }

    #[test]
    fn oversized_alphabet_is_rejected() {
        let n = tag_capacity() + 1;
        assert!(matches!(assign_tags(n, 0, None), Err(CompileError::Capacity { .. })));
        assert!(assign_tags(tag_capacity() - 1, 0, None).is_ok());
    }
}
