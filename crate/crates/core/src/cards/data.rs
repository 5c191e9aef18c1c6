// Card data files compiled into the binary, and the deck list.

pub(super) const CARD_FILES: &[(&str, &str)] = &[
    ("ageless_entity.json", include_str!("../../cards/ageless_entity.json")),
    ("ancient_tomb.json", include_str!("../../cards/ancient_tomb.json")),
    ("artificial_evolution.json", include_str!("../../cards/artificial_evolution.json")),
    ("blazing_archon.json", include_str!("../../cards/blazing_archon.json")),
    ("capsize.json", include_str!("../../cards/capsize.json")),
    ("choke.json", include_str!("../../cards/choke.json")),
    ("cleansing_beam.json", include_str!("../../cards/cleansing_beam.json")),
    ("cloak_of_invisibility.json", include_str!("../../cards/cloak_of_invisibility.json")),
    ("cloak_of_mists.json", include_str!("../../cards/cloak_of_mists.json")),
    ("clockspinning.json", include_str!("../../cards/clockspinning.json")),
    ("coalition_victory.json", include_str!("../../cards/coalition_victory.json")),
    ("cruel_entertainment.json", include_str!("../../cards/cruel_entertainment.json")),
    ("daggerdrome_imp.json", include_str!("../../cards/daggerdrome_imp.json")),
    ("delay.json", include_str!("../../cards/delay.json")),
    ("donate.json", include_str!("../../cards/donate.json")),
    ("dread_of_night.json", include_str!("../../cards/dread_of_night.json")),
    ("fathom_feeder.json", include_str!("../../cards/fathom_feeder.json")),
    ("fungus_sliver.json", include_str!("../../cards/fungus_sliver.json")),
    ("gemstone_array.json", include_str!("../../cards/gemstone_array.json")),
    ("ghostflame_sliver.json", include_str!("../../cards/ghostflame_sliver.json")),
    ("glamerdye.json", include_str!("../../cards/glamerdye.json")),
    ("grave_betrayal.json", include_str!("../../cards/grave_betrayal.json")),
    ("grim_monolith.json", include_str!("../../cards/grim_monolith.json")),
    ("hellraiser_goblin.json", include_str!("../../cards/hellraiser_goblin.json")),
    ("helm_of_the_host.json", include_str!("../../cards/helm_of_the_host.json")),
    ("human_frailty.json", include_str!("../../cards/human_frailty.json")),
    ("illusionary_gains.json", include_str!("../../cards/illusionary_gains.json")),
    ("infernal_reckoning.json", include_str!("../../cards/infernal_reckoning.json")),
    ("infest.json", include_str!("../../cards/infest.json")),
    ("karn_liberated.json", include_str!("../../cards/karn_liberated.json")),
    ("lotus_petal.json", include_str!("../../cards/lotus_petal.json")),
    ("magus_of_the_coffers.json", include_str!("../../cards/magus_of_the_coffers.json")),
    ("maralen_of_the_mornsong.json", include_str!("../../cards/maralen_of_the_mornsong.json")),
    ("memnarch.json", include_str!("../../cards/memnarch.json")),
    ("mesmeric_orb.json", include_str!("../../cards/mesmeric_orb.json")),
    ("moat.json", include_str!("../../cards/moat.json")),
    ("night_of_souls_betrayal.json", include_str!("../../cards/night_of_souls_betrayal.json")),
    ("olivia_voldaren.json", include_str!("../../cards/olivia_voldaren.json")),
    ("panoptic_mirror.json", include_str!("../../cards/panoptic_mirror.json")),
    ("pithing_needle.json", include_str!("../../cards/pithing_needle.json")),
    ("power_artifact.json", include_str!("../../cards/power_artifact.json")),
    ("prismatic_lace.json", include_str!("../../cards/prismatic_lace.json")),
    ("prismatic_omen.json", include_str!("../../cards/prismatic_omen.json")),
    ("privileged_position.json", include_str!("../../cards/privileged_position.json")),
    ("reality_acid.json", include_str!("../../cards/reality_acid.json")),
    ("reality_ripple.json", include_str!("../../cards/reality_ripple.json")),
    ("rings_of_brighthearth.json", include_str!("../../cards/rings_of_brighthearth.json")),
    ("riptide_replicator.json", include_str!("../../cards/riptide_replicator.json")),
    ("rotlung_reanimator.json", include_str!("../../cards/rotlung_reanimator.json")),
    ("shade_s_form.json", include_str!("../../cards/shade_s_form.json")),
    ("shared_triumph.json", include_str!("../../cards/shared_triumph.json")),
    ("soul_snuffers.json", include_str!("../../cards/soul_snuffers.json")),
    ("staff_of_domination.json", include_str!("../../cards/staff_of_domination.json")),
    ("steely_resolve.json", include_str!("../../cards/steely_resolve.json")),
    ("stolen_identity.json", include_str!("../../cards/stolen_identity.json")),
    ("swamp.json", include_str!("../../cards/swamp.json")),
    ("teferi_s_curse.json", include_str!("../../cards/teferi_s_curse.json")),
    ("tetzimoc_primal_death.json", include_str!("../../cards/tetzimoc_primal_death.json")),
    ("timelock_orb.json", include_str!("../../cards/timelock_orb.json")),
    ("umbral_mantle.json", include_str!("../../cards/umbral_mantle.json")),
    ("vigor.json", include_str!("../../cards/vigor.json")),
    ("wheel_of_sun_and_moon.json", include_str!("../../cards/wheel_of_sun_and_moon.json")),
    ("wild_evocation.json", include_str!("../../cards/wild_evocation.json")),
    ("xathrid_necromancer.json", include_str!("../../cards/xathrid_necromancer.json")),
];

pub(super) const TOKEN_FILES: &[(&str, &str)] = &[
    ("tokens/zombie_token.json", include_str!("../../cards/tokens/zombie_token.json")),
];

/// Deck list as printed, column by column.
pub(super) const DECK: &[(&str, u32)] = &[
    ("Ancient Tomb", 1),
    ("Grim Monolith", 1),
    ("Power Artifact", 1),
    ("Gemstone Array", 1),
    ("Staff of Domination", 1),
    ("Karn Liberated", 1),
    ("Fathom Feeder", 1),
    ("Cloak of Mists", 1),
    ("Lotus Petal", 3),
    ("Ghostflame Sliver", 1),
    ("Infernal Reckoning", 1),
    ("Reality Acid", 1),
    ("Cloak of Invisibility", 1),
    ("Rings of Brighthearth", 1),
    ("Memnarch", 1),
    ("Artificial Evolution", 1),
    ("Dread of Night", 1),
    ("Glamerdye", 1),
    ("Prismatic Lace", 1),
    ("Donate", 1),
    ("Reality Ripple", 1),
    ("Riptide Replicator", 1),
    ("Stolen Identity", 1),
    ("Capsize", 1),
    ("Clockspinning", 1),
    ("Delay", 1),
    ("Wheel of Sun and Moon", 1),
    ("Teferi's Curse", 1),
    ("Fungus Sliver", 1),
    ("Rotlung Reanimator", 1),
    ("Infest", 1),
    ("Cleansing Beam", 1),
    ("Soul Snuffers", 1),
    ("Illusionary Gains", 1),
    ("Priviledged Position", 1),
    ("Steely Resolve", 1),
    ("Wild Evocation", 1),
    ("Shared Triumph", 1),
    ("Xanthrid Necromancer", 1),
    ("Mesmeric Orb", 1),
    ("Coalition Victory", 1),
    ("Choke", 1),
    ("Vigor", 1),
    ("Prismatic Omen", 1),
    ("Tetzimoc, Primal Death", 1),
    ("Grave Betrayal", 1),
    ("Maralen of the Mornsong", 1),
    ("Timelock Orb", 1),
    ("Ageless Entity", 1),
    ("Helm of the Host", 1),
    ("Daggerdrome Imp", 1),
    ("Umbral Mantle", 1),
    ("Hellraiser Goblin", 1),
    ("Magus of the Coffers", 1),
    ("Moat", 1),
    ("Cruel Entertainment", 1),
    ("Panoptic Mirror", 1),
    ("Pithing Needle", 1),
];
