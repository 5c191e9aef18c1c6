//! Printed card names used by the engine and compiler.

pub const ANCIENT_TOMB: &str = "Ancient Tomb";
pub const AGELESS_ENTITY: &str = "Ageless Entity";
pub const BLAZING_ARCHON: &str = "Blazing Archon";
pub const CHOKE: &str = "Choke";
pub const CLOAK_OF_MISTS: &str = "Cloak of Mists";
pub const CLOCKSPINNING: &str = "Clockspinning";
pub const COALITION_VICTORY: &str = "Coalition Victory";
pub const CRUEL_ENTERTAINMENT: &str = "Cruel Entertainment";
pub const DAGGERDROME_IMP: &str = "Daggerdrome Imp";
pub const DELAY: &str = "Delay";
pub const GHOSTFLAME_SLIVER: &str = "Ghostflame Sliver";
pub const GRAVE_BETRAYAL: &str = "Grave Betrayal";
pub const HELLRAISER_GOBLIN: &str = "Hellraiser Goblin";
pub const HELM_OF_THE_HOST: &str = "Helm of the Host";
pub const HUMAN_FRAILTY: &str = "Human Frailty";
pub const INFERNAL_RECKONING: &str = "Infernal Reckoning";
pub const INFEST: &str = "Infest";
pub const MAGUS_OF_THE_COFFERS: &str = "Magus of the Coffers";
pub const MARALEN: &str = "Maralen of the Mornsong";
pub const MOAT: &str = "Moat";
pub const NIGHT_OF_SOULS_BETRAYAL: &str = "Night of Souls' Betrayal";
pub const OLIVIA_VOLDAREN: &str = "Olivia Voldaren";
pub const PANOPTIC_MIRROR: &str = "Panoptic Mirror";
pub const PITHING_NEEDLE: &str = "Pithing Needle";
pub const PRISMATIC_OMEN: &str = "Prismatic Omen";
pub const PRIVILEGED_POSITION: &str = "Privileged Position";
pub const REALITY_ACID: &str = "Reality Acid";
pub const ROTLUNG_REANIMATOR: &str = "Rotlung Reanimator";
pub const SHADES_FORM: &str = "Shade's Form";
pub const SWAMP: &str = "Swamp";
pub const TEFERIS_CURSE: &str = "Teferi's Curse";
pub const TETZIMOC: &str = "Tetzimoc, Primal Death";
pub const TIMELOCK_ORB: &str = "Timelock Orb";
pub const UMBRAL_MANTLE: &str = "Umbral Mantle";
pub const WILD_EVOCATION: &str = "Wild Evocation";
pub const XATHRID_NECROMANCER: &str = "Xathrid Necromancer";
pub const ZOMBIE_TOKEN: &str = "Zombie Token";
