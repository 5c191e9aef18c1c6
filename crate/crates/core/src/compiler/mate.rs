use super::machine::{build_machine_board, place_machine, put};
use super::{report_of, CompileResult, Compiled, Countdown, CountdownZone, GadgetPlan, RoundPlan};
use crate::cards::{self, clockspinning_adjust, delay_exile, names};
use crate::engine::{
    apply_text_edit, CardRef, CardType, CounterKind, ExiledCard, GameState, ObjId, Permanent, PlayerId, Target, TextEdit,
};
use crate::tm::{build_search_machine, ArithmeticSentence, InputAssignment, MachineConfig, Quantifier};

/// Starting life for both players. The write gadget deals unbounded damage
/// and Maralen drains every draw step, so twenty would end the game early.
pub const LIFE_BUFFER: i64 = 1 << 40;

/// Non-machine permanents allowed to outlive the cleanup chain.
pub const RESIDUE_CARDS: &[&str] = &[
    names::PANOPTIC_MIRROR,
    names::TEFERIS_CURSE,
    names::GHOSTFLAME_SLIVER,
    names::PRIVILEGED_POSITION,
    names::HELM_OF_THE_HOST,
    names::UMBRAL_MANTLE,
    names::PITHING_NEEDLE,
    names::TIMELOCK_ORB,
];

const ANCIENT_TOMBS: usize = 6;

/// Round schedule and countdowns for an `n`-round board. Alice's turn in
/// round `r` is turn `2r - 1`, Bob's is `2r`.
pub fn gadget_plan(n: usize) -> GadgetPlan {
    let swap_schedule = (1..=n)
        .map(|r| {
            let q = Quantifier::for_round(r);
            RoundPlan {
                round: r,
                quantifier: q,
                alice_turn: 2 * r as u64 - 1,
                bob_turn: 2 * r as u64,
                chooser: if q == Quantifier::Exists { PlayerId::Alice } else { PlayerId::Bob },
                mirror_phased_in: r % 2 == 1,
            }
        })
        .collect();
    let n64 = n as u64;
    let countdown = if n == 0 {
        Vec::new()
    } else {
        let c = |card: &str, zone, ticks_on, fires_on_turn| Countdown {
            card: card.to_string(),
            counters: n64,
            zone,
            ticks_on,
            fires_on_turn,
        };
        vec![
            c(names::HUMAN_FRAILTY, CountdownZone::Exile, PlayerId::Alice, 2 * n64 - 1),
            c(names::CHOKE, CountdownZone::Exile, PlayerId::Bob, 2 * n64),
            c(names::INFERNAL_RECKONING, CountdownZone::Exile, PlayerId::Bob, 2 * n64),
            c(names::REALITY_ACID, CountdownZone::Battlefield, PlayerId::Bob, 2 * n64),
        ]
    };
    GadgetPlan { n, swap_schedule, countdown, activation_round: n64 + 1 }
}

pub fn compile_mate_in_n(sentence: &ArithmeticSentence) -> CompileResult<GameState> {
    Ok(build_mate_board(sentence)?.state)
}

fn token(card: &str, owner: PlayerId) -> CompileResult<Permanent> {
    let mut p = cards::instantiate(card, owner)?;
    p.is_token = true;
    Ok(p)
}

fn prey(mut p: Permanent) -> Permanent {
    p.counters.insert(CounterKind::Prey, 1);
    p
}

fn attached(mut p: Permanent, host: ObjId) -> Permanent {
    p.attached_to = Some(host);
    p
}

/// Exile `card` through Delay, then Clockspinning to `n` counters.
fn suspend(s: &mut GameState, card: &str, owner: PlayerId, n: u64) -> CompileResult<()> {
    let i = delay_exile(s, card, owner)?;
    while s.exile[i].time_counters != n {
        let add = s.exile[i].time_counters < n;
        *s = clockspinning_adjust(s, Target::Exiled(i), add)?;
    }
    s.exile[i].priority_index = i as u32 + 1;
    Ok(())
}

/// The mate-in-n board for `sentence`. With no quantified variables the
/// search machine is compiled already running.
pub fn build_mate_board(sentence: &ArithmeticSentence) -> CompileResult<Compiled> {
    sentence.validate()?;
    let (tm, search) = build_search_machine(sentence)?;
    let n = sentence.n();
    let plan = gadget_plan(n);
    if n == 0 {
        let mut c = build_machine_board(&tm, &search.initial_config(&tm, &InputAssignment(Vec::new())))?;
        if let Some(m) = c.state.machine.as_mut() {
            m.sentence = Some(sentence.to_string());
        }
        c.plan = Some(plan);
        return Ok(c);
    }
    let n64 = n as u64;
    let (alice, bob) = (PlayerId::Alice, PlayerId::Bob);
    let mut s = GameState::new();
    let mut layout = place_machine(&mut s, &tm, &MachineConfig::new(tm.initial_state), true)?;
    if let Some(m) = s.machine.as_mut() {
        m.sentence = Some(sentence.to_string());
    }
    for p in &mut s.players {
        p.life = LIFE_BUFFER;
    }
    layout.machine_permanents.push(put(&mut s, cards::instantiate(names::PRISMATIC_OMEN, alice)?));

    let mut gadgets = Vec::new();
    let mut add = |s: &mut GameState, p: Permanent| {
        let id = put(s, p);
        gadgets.push(id);
        id
    };

    // Countdown and cleanup.
    add(&mut s, cards::instantiate(names::PRIVILEGED_POSITION, alice)?);
    let ghostflame = token(names::GHOSTFLAME_SLIVER, alice)?;
    add(&mut s, apply_text_edit(&ghostflame, TextEdit::replace_type("Sliver", "Dinosaur"))?);
    let tetzimoc = cards::instantiate(names::TETZIMOC, alice)?;
    add(&mut s, apply_text_edit(&tetzimoc, TextEdit::replace_type("Dinosaur", "Human"))?);
    let betrayal = add(&mut s, cards::instantiate(names::GRAVE_BETRAYAL, bob)?);
    let mut acid = attached(cards::instantiate(names::REALITY_ACID, bob)?, betrayal);
    acid.counters.insert(CounterKind::VanishingTime, n64);
    add(&mut s, acid);
    suspend(&mut s, names::HUMAN_FRAILTY, alice, n64)?;
    suspend(&mut s, names::CHOKE, bob, n64)?;
    suspend(&mut s, names::INFERNAL_RECKONING, bob, n64)?;

    // Control swap.
    let mut mirror = cards::instantiate(names::PANOPTIC_MIRROR, bob)?;
    mirror.phasing = true;
    mirror.phased_out = true;
    let mirror = add(&mut s, mirror);
    let mut curse = attached(cards::instantiate(names::TEFERIS_CURSE, bob)?, mirror);
    curse.phased_out = true;
    add(&mut s, curse);
    s.exile.push(ExiledCard {
        card: names::CRUEL_ENTERTAINMENT.to_string(),
        owner: bob,
        time_counters: 0,
        suspended: false,
        imprinted_on: Some(mirror),
        priority_index: s.exile.len() as u32 + 1,
    });

    // Write gadget.
    let entity = add(&mut s, prey(token(names::AGELESS_ENTITY, alice)?));
    add(&mut s, attached(cards::instantiate(names::HELM_OF_THE_HOST, alice)?, entity));
    let mut needle = cards::instantiate(names::PITHING_NEEDLE, alice)?;
    needle.named_card = Some(names::HELM_OF_THE_HOST.to_string());
    add(&mut s, needle);
    let mut imp = prey(token(names::DAGGERDROME_IMP, alice)?);
    imp.counters.insert(CounterKind::PlusOne, 1);
    let imp = add(&mut s, imp);
    add(&mut s, attached(token(names::SHADES_FORM, alice)?, imp));
    add(&mut s, attached(token(names::CLOAK_OF_MISTS, alice)?, imp));
    add(&mut s, prey(token(names::HELLRAISER_GOBLIN, alice)?));
    let magus = token(names::MAGUS_OF_THE_COFFERS, alice)?;
    let magus = add(&mut s, prey(apply_text_edit(&magus, TextEdit::replace_type("Human", "Spellshaper"))?));
    add(&mut s, attached(cards::instantiate(names::UMBRAL_MANTLE, alice)?, magus));
    for _ in 0..ANCIENT_TOMBS {
        let mut tomb = prey(token(names::ANCIENT_TOMB, alice)?);
        tomb.card_types.insert(CardType::Creature);
        tomb.base_power = Some(2);
        tomb.base_toughness = Some(2);
        add(&mut s, tomb);
    }

    // Lock.
    add(&mut s, prey(token(names::MARALEN, alice)?));
    add(&mut s, cards::instantiate(names::TIMELOCK_ORB, alice)?);

    s.player_mut(alice).library.push(CardRef { card: names::INFEST.to_string(), owner: alice });
    s.clear_events();
    layout.gadget_permanents = gadgets;
    layout.exile_schedule = s.exile.iter().filter(|e| e.suspended).map(|e| (e.card.clone(), e.time_counters)).collect();
    let report = report_of(&s, &plan.swap_schedule);
    Ok(Compiled { state: s, layout, plan: Some(plan), report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::parse_sentence;

    fn board(text: &str) -> Compiled {
        build_mate_board(&parse_sentence(text).unwrap()).unwrap()
    }

    #[test]
    fn human_frailty_carries_n_counters() {
        let c = board("E y1 A y2 : (y1*y2 - y2 = 0)");
        let hf = c.state.exile.iter().find(|e| e.card == names::HUMAN_FRAILTY).unwrap();
        assert_eq!(hf.time_counters, 2);
        assert!(hf.suspended);
    }

    #[test]
    fn schedule_follows_quantifiers() {
        let plan = gadget_plan(4);
        let choosers: Vec<PlayerId> = plan.swap_schedule.iter().map(|r| r.chooser).collect();
        assert_eq!(choosers, [PlayerId::Alice, PlayerId::Bob, PlayerId::Alice, PlayerId::Bob]);
        assert_eq!(plan.activation_round, 5);
        assert!(plan.countdown.iter().all(|c| c.counters == 4));
    }

    #[test]
    fn machine_starts_dormant() {
        let c = board("E y1 : (y1 - 2 = 0)");
        assert!(c.state.battlefield.values().filter(|p| p.machine.is_some()).all(|p| p.phased_out));
        assert_eq!(c.state.player(PlayerId::Alice).library.len(), 1);
    }

    #[test]
    fn gadget_tokens_are_prey() {
        let c = board("E y1 : (y1 - 2 = 0)");
        for id in &c.layout.gadget_permanents {
            let p = &c.state.battlefield[id];
            if p.is_token && p.is_creature() && p.card != names::GHOSTFLAME_SLIVER {
                assert_eq!(p.counter(CounterKind::Prey), 1, "{}", p.card);
            }
        }
    }
}
