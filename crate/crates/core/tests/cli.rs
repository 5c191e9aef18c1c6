use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use mtg_mate::tm::{samples, MachineConfig, MachineFile};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtg-mate")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn incrementer_file(dir: &Path) -> String {
    let tm = samples::unary_incrementer();
    let cfg = MachineConfig::from_cells(0, &[1, 1, 1], tm.blank);
    let path = dir.join("inc.json");
    fs::write(&path, serde_json::to_string(&MachineFile::from_spec(&tm, Some(&cfg))).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_passes_on_incrementer() {
    let dir = tempfile::tempdir().unwrap();
    let m = incrementer_file(dir.path());
    let out = bin(&["verify", "--machine", &m, "--cycles", "10"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["divergence"], Value::Null);
    assert_eq!(v["reference_halted"], Value::Bool(true));
}

#[test]
fn simulate_writes_trace_lines() {
    let dir = tempfile::tempdir().unwrap();
    let m = incrementer_file(dir.path());
    let trace = dir.path().join("t.jsonl");
    let out = bin(&["simulate", "--machine", &m, "--steps", "3", "--trace", trace.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&trace).unwrap();
    assert!(!text.is_empty());
    for line in text.lines() {
        let r: Value = serde_json::from_str(line).unwrap();
        for key in ["turn", "decider", "action", "digest", "active_player", "turn_controller"] {
            assert!(r.get(key).is_some(), "{key} missing in {line}");
        }
    }
    assert_eq!(json(&out)["cycles"], 3);
}

#[test]
fn compile_run_and_solve_sentence() {
    let dir = tempfile::tempdir().unwrap();
    let board = dir.path().join("board.json");
    let b = board.to_str().unwrap();
    let out = bin(&["compile", "--sentence", "E y1 : (y1 - 2 = 0)", "--out", b]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["plan"]["activation_round"], 2);

    let out = bin(&["run", "--state", b, "--inputs", "2", "--max-turns", "500"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["outcome"]["kind"], "first_player_win");
    assert_eq!(v["first_read_turn"], 4);

    let out = bin(&["solve", "--state", b, "--bound", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["mate_exists"], true);
}

#[test]
fn compiled_board_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = bin(&["compile", "--sentence", "E y1 A y2 : (y1*y2 - y2 = 0)", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn compile_machine_file() {
    let dir = tempfile::tempdir().unwrap();
    let m = incrementer_file(dir.path());
    let board = dir.path().join("board.json");
    let out = bin(&["compile", "--machine", &m, "--out", board.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["report"]["watchers"], 4);
}

#[test]
fn errors_exit_nonzero() {
    let out = bin(&["verify", "--machine", "/nonexistent/machine.json", "--cycles", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let m = incrementer_file(dir.path());
    let board = dir.path().join("board.json");
    bin(&["compile", "--machine", &m, "--out", board.to_str().unwrap()]);
    let out = bin(&["solve", "--state", board.to_str().unwrap(), "--bound", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&["compile", "--out", "x.json"]);
    assert!(!out.status.success());
}
