use std::collections::{BTreeMap, BTreeSet};

use super::{CompilationReport, RoundPlan};
use crate::cards::{self, names};
use crate::engine::{CounterKind, GameState, MachineRole};

/// Describe `state` as the compiler would have reported it.
pub fn report_of(state: &GameState, swap_schedule: &[RoundPlan]) -> CompilationReport {
    let mut s = state.clone();
    s.ensure_index();
    let mut by_card = BTreeMap::new();
    for p in s.battlefield.values() {
        *by_card.entry(p.card.clone()).or_insert(0) += 1;
    }
    let mut countdowns = BTreeMap::new();
    for e in s.exile.iter().filter(|e| e.suspended) {
        countdowns.insert(e.card.clone(), e.time_counters);
    }
    for p in s.battlefield.values() {
        let v = p.counter(CounterKind::VanishingTime);
        if v > 0 {
            countdowns.insert(p.card.clone(), v);
        }
    }
    let mut used: BTreeSet<&str> = s.battlefield.values().map(|p| p.card.as_str()).collect();
    used.extend(s.exile.iter().map(|e| e.card.as_str()));
    for pl in &s.players {
        used.extend(pl.hand.iter().chain(&pl.library).chain(&pl.graveyard).map(|c| c.card.as_str()));
    }
    let mut outside = Vec::new();
    let mut foreign = Vec::new();
    for card in used {
        match cards::definition(card) {
            None => foreign.push(card.to_string()),
            Some(d) if !d.in_deck_list && !d.token => outside.push(card.to_string()),
            Some(_) => {}
        }
    }
    CompilationReport {
        permanents: s.battlefield.len(),
        by_card,
        watchers: s.battlefield.values().filter(|p| matches!(p.machine, Some(MachineRole::Watcher { .. }))).count(),
        tape_length: s.tape_cells().len(),
        countdowns,
        swap_schedule: swap_schedule.to_vec(),
        outside_deck_list: outside,
        foreign_cards: foreign,
        problems: Vec::new(),
    }
}

/// Check a board against what the compiler reported for it. The returned
/// report describes the board; its `problems` list every disagreement.
pub fn audit(state: &GameState, expected: &CompilationReport) -> CompilationReport {
    let mut r = report_of(state, &expected.swap_schedule);
    let mut problems = Vec::new();
    for card in &r.foreign_cards {
        problems.push(format!("foreign card {card}"));
    }
    let cards: BTreeSet<&String> = r.by_card.keys().chain(expected.by_card.keys()).collect();
    for card in cards {
        let (want, got) = (expected.by_card.get(card).copied().unwrap_or(0), r.by_card.get(card).copied().unwrap_or(0));
        if want != got {
            problems.push(format!("{card}: expected {want} on the battlefield, found {got}"));
        }
    }
    if r.watchers != expected.watchers {
        problems.push(format!("expected {} watchers, found {}", expected.watchers, r.watchers));
    }
    if r.tape_length != expected.tape_length {
        problems.push(format!("expected {} tape cells, found {}", expected.tape_length, r.tape_length));
    }
    if r.countdowns != expected.countdowns {
        problems.push(format!("countdowns {:?} differ from plan {:?}", r.countdowns, expected.countdowns));
    }
    let rounds = expected.swap_schedule.len();
    if !r.countdowns.values().all(|&c| c == rounds as u64) {
        problems.push(format!("countdowns {:?} do not all equal {rounds}", r.countdowns));
    }
    for p in state.battlefield.values() {
        let tape = p.machine.is_none() && p.counter(CounterKind::Prey) == 0 && p.counter(CounterKind::PlusOne) > 0;
        let exempt = p.machine.is_some() || tape || p.card == names::GHOSTFLAME_SLIVER;
        if p.is_token && p.is_creature() && !exempt && p.counter(CounterKind::Prey) == 0 {
            problems.push(format!("gadget token {} ({}) has no prey counter", p.card, p.id));
        }
    }
    r.problems = problems;
    r
}

/// Cards allowed on the battlefield once the machine runs, besides the
/// machine roles and tape cells.
const MACHINE_SUPPORT: &[&str] = &[
    names::NIGHT_OF_SOULS_BETRAYAL,
    names::MOAT,
    names::PRISMATIC_OMEN,
    names::CHOKE,
    names::WILD_EVOCATION,
];

/// Check that the gadget has cleaned up after itself: `after` holds only
/// machine permanents and known residue, no prey counters, and graveyards
/// hold only cards that were on `compiled`.
pub fn cleanup_problems(compiled: &GameState, after: &GameState) -> Vec<String> {
    let mut after = after.clone();
    after.ensure_index();
    let cells: BTreeSet<_> = after.tape_cells().values().flatten().copied().collect();
    let mut problems = Vec::new();
    for p in after.battlefield.values() {
        let allowed = p.machine.is_some()
            || cells.contains(&p.id)
            || MACHINE_SUPPORT.contains(&p.card.as_str())
            || super::RESIDUE_CARDS.contains(&p.card.as_str());
        if !allowed {
            problems.push(format!("{} ({}) left on the battlefield", p.card, p.id));
        }
        if p.counter(CounterKind::Prey) > 0 {
            problems.push(format!("{} ({}) still has a prey counter", p.card, p.id));
        }
    }
    let mut known: BTreeSet<&str> = compiled.battlefield.values().filter(|p| !p.is_token).map(|p| p.card.as_str()).collect();
    known.extend(compiled.exile.iter().map(|e| e.card.as_str()));
    for pl in &compiled.players {
        known.extend(pl.hand.iter().chain(&pl.library).chain(&pl.graveyard).map(|c| c.card.as_str()));
    }
    for pl in &after.players {
        for c in &pl.graveyard {
            if !known.contains(c.card.as_str()) {
                problems.push(format!("{} in a graveyard was never part of the board", c.card));
            }
        }
    }
    problems
}
