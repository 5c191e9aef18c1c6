use std::collections::BTreeMap;

use proptest::prelude::*;

use mtg_mate::compiler::{audit, build_machine_board, compile_machine, decode_board_tape, CompileError};
use mtg_mate::engine::GameState;
use mtg_mate::harness::verify_bisimulation;
use mtg_mate::tm::{run, samples, Direction, MachineConfig, Transition, TuringMachineSpec};

fn spec(states: usize, symbols: usize, rows: Vec<(usize, usize, usize, usize, bool)>) -> TuringMachineSpec {
    let transitions: BTreeMap<_, _> = rows
        .into_iter()
        .map(|(q, s, nq, w, left)| {
            let direction = if left { Direction::L } else { Direction::R };
            ((q % states, s % symbols), Transition { next: nq % states, write: w % symbols, direction })
        })
        .collect();
    TuringMachineSpec {
        states: (0..states).map(|i| format!("q{i}")).collect(),
        alphabet: (0..symbols).map(|i| if i == 0 { "_".into() } else { format!("s{i}") }).collect(),
        blank: 0,
        divider: None,
        initial_state: 0,
        transitions,
    }
}

fn machine() -> impl Strategy<Value = (TuringMachineSpec, MachineConfig)> {
    (1usize..=3, 2usize..=4).prop_flat_map(|(states, symbols)| {
        let rows = prop::collection::vec((0..states, 0..symbols, 0..states, 0..symbols, any::<bool>()), 0..8);
        let tape = prop::collection::vec(0..symbols, 0..10);
        (rows, tape, 0u64..4, 0..states).prop_map(move |(rows, tape, head, state)| {
            let tm = spec(states, symbols, rows);
            let mut cfg = MachineConfig::from_cells(state, &tape, tm.blank);
            cfg.head = head;
            (tm, cfg)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn board_decodes_to_compiled_config((tm, cfg) in machine()) {
        let state = compile_machine(&tm, &cfg).unwrap();
        prop_assert_eq!(decode_board_tape(&state).unwrap(), cfg);
    }

    #[test]
    fn board_json_roundtrips((tm, cfg) in machine()) {
        let state = compile_machine(&tm, &cfg).unwrap();
        let text = state.to_json();
        let back = GameState::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(decode_board_tape(&back).unwrap(), cfg);
    }

    #[test]
    fn compiled_board_passes_its_own_audit((tm, cfg) in machine()) {
        let c = build_machine_board(&tm, &cfg).unwrap();
        let r = audit(&c.state, &c.report);
        prop_assert!(r.passed(), "{:?}", r.problems);
        prop_assert_eq!(r.watchers, tm.states.len() * tm.alphabet.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_machines_track_reference((tm, cfg) in machine()) {
        prop_assume!(run(&tm, &cfg, 26).is_ok());
        let r = verify_bisimulation(&tm, &cfg, 25).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
    }
}

#[test]
fn bouncer_moves_both_ways() {
    let tm = samples::bouncer();
    let r = verify_bisimulation(&tm, &MachineConfig::new(tm.initial_state), 120).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(!r.reference_halted);
    assert_eq!(r.boundaries, 121);
}

#[test]
fn parity_halts_with_marker() {
    let tm = samples::parity_marker();
    let cfg = MachineConfig::from_cells(0, &[2, 1, 2, 2], tm.blank);
    let r = verify_bisimulation(&tm, &cfg, 20).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(r.reference_halted && r.outcome.alice_wins());
}

#[test]
fn too_many_symbols_is_a_capacity_error() {
    let tm = spec(1, 400, vec![]);
    match compile_machine(&tm, &MachineConfig::new(0)) {
        Err(CompileError::Capacity { symbols, available }) => assert!(symbols > available),
        other => panic!("{other:?}"),
    }
}
