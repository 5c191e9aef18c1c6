use std::collections::BTreeSet;

use super::{assign_tags, report_of, BoardLayout, CellSpec, CompileError, CompileResult, Compiled};
use crate::cards::{self, names};
use crate::engine::{
    apply_text_edit, CounterKind, GameState, MachineRegistry, MachineRole, ObjId, Permanent, PlayerId, Step,
    TextEdit, WatcherAction,
};
use crate::tm::{Direction, MachineConfig, TuringMachineSpec, NEXT_X_STATE};

/// Zero-player board running `tm` from `cfg`, Alice to start turn 1.
pub fn compile_machine(tm: &TuringMachineSpec, cfg: &MachineConfig) -> CompileResult<GameState> {
    Ok(build_machine_board(tm, cfg)?.state)
}

pub fn build_machine_board(tm: &TuringMachineSpec, cfg: &MachineConfig) -> CompileResult<Compiled> {
    tm.validate()?;
    let mut s = GameState::new();
    let layout = place_machine(&mut s, tm, cfg, false)?;
    s.clear_events();
    let report = report_of(&s, &[]);
    Ok(Compiled { state: s, layout, plan: None, report })
}

fn next_index(s: &GameState) -> u32 {
    s.battlefield.len() as u32 + 1
}

pub(super) fn put(s: &mut GameState, mut p: Permanent) -> ObjId {
    p.priority_index = next_index(s);
    s.insert_permanent(p)
}

/// Lay out reader, watcher banks and tape for `tm` at `cfg`. A dormant
/// machine has reader and every bank phased out.
pub(super) fn place_machine(
    s: &mut GameState,
    tm: &TuringMachineSpec,
    cfg: &MachineConfig,
    dormant: bool,
) -> CompileResult<BoardLayout> {
    let tags = assign_tags(tm.alphabet.len(), tm.blank, tm.divider)?;
    s.set_machine(MachineRegistry {
        states: tm.states.clone(),
        symbols: tm.alphabet.clone(),
        tags: tags.clone(),
        blank: tm.blank,
        start_state: cfg.state,
        marker_state: tm.state_id(NEXT_X_STATE),
        marker_entries: 0,
        reads: cfg.steps_taken,
        first_read_turn: None,
        halted: false,
        sentence: None,
    });
    let me = PlayerId::Alice;
    let mut machine = Vec::new();
    for card in [names::NIGHT_OF_SOULS_BETRAYAL, names::MOAT] {
        machine.push(put(s, cards::instantiate(card, me)?));
    }
    let mut reader = cards::instantiate(names::WILD_EVOCATION, me)?;
    reader.machine = Some(MachineRole::Reader);
    reader.phased_out = dormant;
    if cfg.head > 0 {
        reader.counters.insert(CounterKind::Time, cfg.head);
    }
    machine.push(put(s, reader));
    for q in 0..tm.states.len() {
        for read in 0..tm.alphabet.len() {
            let action = match tm.transition(q, read) {
                Some(t) => WatcherAction::Write { write: t.write, right: t.direction == Direction::R, next: t.next },
                None => WatcherAction::Halt,
            };
            let write = match action {
                WatcherAction::Write { write, .. } => write,
                WatcherAction::Halt => read,
            };
            let mut w = cards::instantiate(names::ROTLUNG_REANIMATOR, me)?;
            w.is_token = true;
            w = apply_text_edit(&w, TextEdit::replace_type("Cleric", &tags[read]))?;
            w = apply_text_edit(&w, TextEdit::replace_type("Zombie", &tags[write]))?;
            w.machine = Some(MachineRole::Watcher { state: q, read, action });
            w.phased_out = dormant || q != cfg.state;
            machine.push(put(s, w));
        }
    }
    let mut tape = std::collections::BTreeMap::new();
    for (&pos, &sym) in &cfg.tape {
        if sym == tm.blank {
            continue;
        }
        let spec = CellSpec { tag: tags[sym].clone(), plus_counters: pos + 1 };
        let mut cell = cards::instantiate(names::ZOMBIE_TOKEN, me)?;
        cell.creature_types = BTreeSet::from([spec.tag.clone()]);
        cell.counters.insert(CounterKind::PlusOne, spec.plus_counters);
        put(s, cell);
        tape.insert(pos, spec);
    }
    Ok(BoardLayout {
        tape_permanents: tape,
        machine_permanents: machine,
        gadget_permanents: Vec::new(),
        exile_schedule: Vec::new(),
        tags,
        blank: tm.blank,
        head: cfg.head,
        state: cfg.state,
    })
}

/// Read the machine configuration off a board at a cycle boundary (an
/// untap step with nothing pending) or after a halt.
pub fn decode_board_tape(state: &GameState) -> CompileResult<MachineConfig> {
    let mut s = state.clone();
    s.ensure_index();
    let m = s.machine.clone().ok_or_else(|| CompileError::Unrecognized("board has no machine".into()))?;
    if !m.halted {
        if s.step != Step::Untap {
            return Err(CompileError::MidCycle(format!("turn {} is at {:?}", s.turn_number, s.step)));
        }
        if !s.stack.is_empty() || s.pending.is_some() {
            return Err(CompileError::MidCycle(format!("turn {} has work outstanding", s.turn_number)));
        }
    }
    let readers: Vec<&Permanent> =
        s.battlefield.values().filter(|p| matches!(p.machine, Some(MachineRole::Reader))).collect();
    let [reader] = readers[..] else {
        return Err(CompileError::Unrecognized(format!("{} readers on the battlefield", readers.len())));
    };
    let live: BTreeSet<usize> = s
        .battlefield
        .values()
        .filter_map(|p| match p.machine {
            Some(MachineRole::Watcher { state, .. }) if !p.phased_out => Some(state),
            _ => None,
        })
        .collect();
    if reader.phased_out || live.is_empty() {
        return Err(CompileError::Dormant);
    }
    if live.len() > 1 {
        return Err(CompileError::Unrecognized(format!("banks {live:?} are all phased in")));
    }
    let mut cfg = MachineConfig::new(*live.first().expect("one bank"));
    cfg.head = reader.counter(CounterKind::Time);
    cfg.steps_taken = m.reads;
    for (&pos, ids) in s.tape_cells() {
        let syms: BTreeSet<usize> = ids
            .iter()
            .filter_map(|id| s.battlefield[id].creature_types.iter().find_map(|t| s.symbol_of_tag(t)))
            .collect();
        let sym = match syms.len() {
            1 => *syms.first().expect("one symbol"),
            _ => return Err(CompileError::Unrecognized(format!("cell {pos} holds {} tokens", ids.len()))),
        };
        if ids.len() > 1 {
            return Err(CompileError::Unrecognized(format!("cell {pos} holds {} tokens", ids.len())));
        }
        if sym != m.blank {
            cfg.tape.insert(pos, sym);
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::samples;

    #[test]
    fn roundtrip_on_samples() {
        let tm = samples::parity_marker();
        let cfg = MachineConfig::from_cells(tm.initial_state, &[1, 1, 2, 1], tm.blank);
        let c = build_machine_board(&tm, &cfg).unwrap();
        assert_eq!(decode_board_tape(&c.state).unwrap(), cfg);
        assert_eq!(c.layout.decode(), cfg);
    }

    #[test]
    fn one_watcher_per_state_and_symbol() {
        let tm = samples::three_state_loop();
        let s = compile_machine(&tm, &MachineConfig::new(tm.initial_state)).unwrap();
        let n = s.battlefield.values().filter(|p| matches!(p.machine, Some(MachineRole::Watcher { .. }))).count();
        assert_eq!(n, tm.states.len() * tm.alphabet.len());
    }

    #[test]
    fn only_the_current_bank_is_phased_in() {
        let tm = samples::three_state_loop();
        let s = compile_machine(&tm, &MachineConfig::new(1)).unwrap();
        for p in s.battlefield.values() {
            if let Some(MachineRole::Watcher { state, .. }) = p.machine {
                assert_eq!(p.phased_out, state != 1);
            }
        }
    }

    #[test]
    fn mid_cycle_boards_do_not_decode() {
        let tm = samples::unary_incrementer();
        let mut s = compile_machine(&tm, &MachineConfig::new(0)).unwrap();
        s.step = Step::Upkeep;
        assert!(matches!(decode_board_tape(&s), Err(CompileError::MidCycle(_))));
    }

    #[test]
    fn duplicate_cells_are_rejected() {
        let tm = samples::unary_incrementer();
        let cfg = MachineConfig::from_cells(0, &[1], tm.blank);
        let mut s = compile_machine(&tm, &cfg).unwrap();
        let dup = s.tape_cells_at(0)[0];
        let mut p = s.battlefield[&dup].clone();
        p.id = ObjId(0);
        s.insert_permanent(p);
        assert!(matches!(decode_board_tape(&s), Err(CompileError::Unrecognized(_))));
    }
}
