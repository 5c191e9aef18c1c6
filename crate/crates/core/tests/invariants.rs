use proptest::prelude::*;

use mtg_mate::cards::{instantiate, names};
use mtg_mate::compiler::{build_mate_board, compile_machine, decode_board_tape};
use mtg_mate::engine::{apply_state_based_actions, sba_fixpoint_holds, CounterKind, GameState, PlayerId, TriggerOrder};
use mtg_mate::harness::{run_forced, run_forced_with, InputScript, Limits};
use mtg_mate::tm::{parse_sentence, run, samples, MachineConfig};

fn board_with_counters(counters: &[(u64, u64, bool)]) -> GameState {
    let mut s = GameState::new();
    for &(plus, minus, token) in counters {
        let mut p = instantiate(names::ROTLUNG_REANIMATOR, PlayerId::Alice).unwrap();
        p.is_token = token;
        let id = s.insert_permanent(p);
        s.add_counters(id, CounterKind::PlusOne, plus).unwrap();
        s.add_counters(id, CounterKind::MinusOne, minus).unwrap();
    }
    s
}

proptest! {
    #[test]
    fn sba_reaches_fixpoint(counters in prop::collection::vec((0u64..5, 0u64..5, any::<bool>()), 0..6), life in -3i64..25, poison in 0u64..12) {
        let mut s = board_with_counters(&counters);
        s.player_mut(PlayerId::Bob).life = life;
        s.player_mut(PlayerId::Bob).poison = poison;
        let (t, deaths) = apply_state_based_actions(&s);
        prop_assert!(sba_fixpoint_holds(&t));
        let (u, again) = apply_state_based_actions(&t);
        prop_assert_eq!(u.to_json(), t.to_json());
        prop_assert!(again.is_empty());
        prop_assert_eq!(t.player(PlayerId::Bob).lost, life <= 0 || poison >= 10);
        let survivors = t.battlefield.len();
        prop_assert_eq!(survivors + deaths.len(), counters.len());
        let graveyard = t.player(PlayerId::Alice).graveyard.len();
        prop_assert_eq!(graveyard, deaths.iter().filter(|d| !d.is_token).count());
    }

    #[test]
    fn counters_never_coexist(plus in 0u64..10, minus in 0u64..10) {
        let (t, _) = apply_state_based_actions(&board_with_counters(&[(plus, minus, false)]));
        for p in t.battlefield.values() {
            prop_assert!(p.counter(CounterKind::PlusOne) == 0 || p.counter(CounterKind::MinusOne) == 0);
            prop_assert_eq!(p.counter(CounterKind::PlusOne), plus.saturating_sub(minus));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn trigger_order_does_not_change_the_tape(ones in 0usize..6, order in 0u8..3, k in 0usize..4) {
        let tm = samples::unary_incrementer();
        let cfg = MachineConfig::from_cells(0, &vec![1; ones], tm.blank);
        let want = run(&tm, &cfg, 50).unwrap().last().clone();
        let mut state = compile_machine(&tm, &cfg).unwrap();
        state.trigger_order = match order {
            0 => TriggerOrder::Canonical,
            1 => TriggerOrder::Reversed,
            _ => TriggerOrder::Rotated(k),
        };
        let v = run_forced(&state, &InputScript::empty(), &Limits::turns(20)).unwrap();
        prop_assert!(v.outcome.alice_wins());
        prop_assert_eq!(decode_board_tape(&v.final_state).unwrap(), want);
    }

    #[test]
    fn mate_runs_are_forced_and_replayable(y in 0u64..4) {
        let c = build_mate_board(&parse_sentence("E y1 : (y1 - 2 = 0)").unwrap()).unwrap();
        let limits = Limits::turns(40).traced();
        let a = run_forced(&c.state, &InputScript::scripted(&[y]), &limits).unwrap();
        let b = run_forced(&c.state, &InputScript::scripted(&[y]), &limits).unwrap();
        prop_assert_eq!(a.trace.to_jsonl(), b.trace.to_jsonl());
        prop_assert!(a.histogram.keys().all(|&k| k == 1));
        prop_assert_eq!(a.inputs_used, 1);
    }

    #[test]
    fn every_boundary_decodes(steps in 1u64..30) {
        let tm = samples::bouncer();
        let state = compile_machine(&tm, &MachineConfig::new(0)).unwrap();
        let mut seen = 0;
        run_forced_with(&state, &InputScript::empty(), &Limits::turns(steps + 1), |s| {
            seen += 1;
            decode_board_tape(s).is_ok()
        })
        .unwrap();
        prop_assert_eq!(seen, steps + 1);
    }
}
