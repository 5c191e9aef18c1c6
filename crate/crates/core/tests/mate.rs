use mtg_mate::compiler::{build_machine_board, build_mate_board, cleanup_problems, gadget_plan, Compiled};
use mtg_mate::engine::{PlayerId, Step};
use mtg_mate::harness::{
    detect_end_game, machine_running, run_forced, solve_game, EndGame, HarnessError, InputScript, Limits, Outcome,
};
use mtg_mate::tm::{parse_sentence, samples, MachineConfig, Quantifier};

fn mate(text: &str) -> Compiled {
    build_mate_board(&parse_sentence(text).unwrap()).unwrap()
}

#[test]
fn witness_two_wins() {
    let c = mate("E y1 : (y1 - 2 = 0)");
    let v = run_forced(&c.state, &InputScript::scripted(&[2]), &Limits::turns(500)).unwrap();
    assert_eq!(v.outcome, Outcome::FirstPlayerWin { turn: 73 });
    assert_eq!(v.final_state.machine.as_ref().unwrap().first_read_turn, Some(4));
    assert!(v.histogram.keys().all(|&k| k == 1));
    assert_eq!(v.inputs_used, 1);
}

#[test]
fn wrong_witness_never_wins() {
    let c = mate("E y1 : (y1 - 2 = 0)");
    let v = run_forced(&c.state, &InputScript::scripted(&[3]), &Limits::turns(400)).unwrap();
    assert_eq!(v.outcome, Outcome::NoWinWithinHorizon { max_turns: 400 });
    assert!(machine_running(&v.final_state));
}

#[test]
fn bounded_leaf_gives_up() {
    let c = mate("E y1 : (y1 - 2 = 0)");
    let limits = Limits { x_bound: Some(3), ..Limits::turns(100_000) };
    let v = run_forced(&c.state, &InputScript::scripted(&[3]), &limits).unwrap();
    assert!(matches!(v.outcome, Outcome::SearchBoundReached { bound: 3, .. }), "{:?}", v.outcome);
}

#[test]
fn missing_input_is_reported() {
    let c = mate("E y1 A y2 : (y1 - y2 = 0)");
    let err = run_forced(&c.state, &InputScript::scripted(&[1]), &Limits::turns(50)).unwrap_err();
    assert!(matches!(err, HarnessError::ScriptExhausted { turn: 3 }), "{err:?}");
}

#[test]
fn universal_round_is_chosen_by_bob() {
    let c = mate("E y1 A y2 : (y1*y2 - y2 = 0)");
    let v = run_forced(&c.state, &InputScript::scripted(&[1, 3]), &Limits::turns(6).traced()).unwrap();
    let alice: Vec<_> = v.trace.alice_turns().map(|r| (r.turn, r.turn_controller)).collect();
    assert_eq!(alice[..2], [(1, PlayerId::Alice), (3, PlayerId::Bob)]);
}

#[test]
fn plan_matches_timeline() {
    for n in 1..=5 {
        let p = gadget_plan(n);
        assert_eq!(p.swap_schedule.len(), n);
        assert_eq!(p.activation_round, n as u64 + 1);
        for (i, r) in p.swap_schedule.iter().enumerate() {
            let round = i + 1;
            assert_eq!(r.alice_turn, 2 * round as u64 - 1);
            assert_eq!(r.bob_turn, 2 * round as u64);
            assert_eq!(r.quantifier, Quantifier::for_round(round));
            let chooser = if round % 2 == 1 { PlayerId::Alice } else { PlayerId::Bob };
            assert_eq!(r.chooser, chooser);
        }
        assert!(p.countdown.iter().all(|c| c.counters == n as u64));
    }
}

#[test]
fn solver_agrees_on_small_sentences() {
    for (text, bound, truth) in [
        ("E y1 A y2 : (y1*y2 - y2 = 0)", 3, true),
        ("E y1 A y2 : (y2 - 2 = 0)", 2, false),
        ("E y1 : (x - y1 - 1 = 0)", 2, true),
        ("E y1 : (y1 + 1 = 0)", 2, false),
    ] {
        let r = solve_game(&mate(text).state, bound).unwrap();
        assert_eq!(r.oracle_truth, truth, "{text}");
        assert!(r.agreement, "{text}: {r:?}");
    }
}

#[test]
fn principal_line_wins_true_sentence() {
    let c = mate("E y1 A y2 : (y1*y2 - y2 = 0)");
    let r = solve_game(&c.state, 3).unwrap();
    let inputs = r.strategy.principal_inputs();
    assert_eq!(inputs[0], 1);
    let v = run_forced(&c.state, &InputScript::scripted(&inputs), &Limits::turns(2_000)).unwrap();
    assert!(v.outcome.alice_wins(), "{:?}", v.outcome);
    assert!(cleanup_problems(&c.state, &v.final_state).is_empty());
}

#[test]
fn compiled_mate_board_is_not_end_game() {
    let c = mate("E y1 : (y1 - 2 = 0)");
    match detect_end_game(&c.state, 10).unwrap() {
        EndGame::NotEndGame { turn, .. } => assert_eq!(turn, 1),
        other => panic!("{other:?}"),
    }
}

#[test]
fn halting_machine_board_is_end_game() {
    let tm = samples::unary_incrementer();
    let c = build_machine_board(&tm, &MachineConfig::from_cells(0, &[1, 1], tm.blank)).unwrap();
    assert_eq!(detect_end_game(&c.state, 20).unwrap(), EndGame::InEndGame);
}

#[test]
fn looping_machine_board_is_unknown() {
    let tm = samples::three_state_loop();
    let c = build_machine_board(&tm, &MachineConfig::new(0)).unwrap();
    assert_eq!(detect_end_game(&c.state, 12).unwrap(), EndGame::Unknown { horizon: 12 });
}

#[test]
fn mirror_offer_stays_open_after_activation() {
    let c = mate("E y1 : (y1 - 2 = 0)");
    let v = run_forced(&c.state, &InputScript::scripted(&[3]), &Limits::turns(6)).unwrap();
    assert!(machine_running(&v.final_state));
    assert_eq!(v.final_state.step, Step::Untap);
    // Bob's upkeep with the Mirror phased in still offers a cast.
    assert_eq!(
        detect_end_game(&v.final_state, 30).unwrap(),
        EndGame::NotEndGame { turn: 10, step: Step::Upkeep, options: 2 }
    );
}
