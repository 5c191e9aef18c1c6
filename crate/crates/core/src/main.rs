use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;

use mtg_mate::compiler::{build_machine_board, build_mate_board, decode_board_tape};
use mtg_mate::engine::GameState;
use mtg_mate::harness::{run_forced, run_forced_with, solve_game, verify_bisimulation, InputScript, Limits};
use mtg_mate::tm::{parse_sentence, MachineConfig, MachineFile, TuringMachineSpec};

#[derive(Parser)]
#[command(name = "mtg-mate", about = "Compile Turing machines and sentences to boards and check them")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Play a compiled machine for K cycles and write the trace.
    Simulate {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        steps: u64,
        #[arg(long)]
        trace: PathBuf,
    },
    /// Compile a sentence or a machine file to a board.
    #[command(group(ArgGroup::new("source").required(true).args(["sentence", "machine"])))]
    Compile {
        #[arg(long)]
        sentence: Option<String>,
        #[arg(long)]
        machine: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Play a board forward with the given round inputs.
    Run {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_delimiter = ',')]
        inputs: Vec<u64>,
        #[arg(long)]
        max_turns: u64,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Search the board's game tree and compare with the sentence's truth.
    Solve {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        bound: u64,
    },
    /// Check the compiled machine against the reference interpreter.
    Verify {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        cycles: u64,
    },
}

type CliResult = Result<bool, Box<dyn std::error::Error>>;

fn load_machine(path: &Path) -> Result<(TuringMachineSpec, MachineConfig), Box<dyn std::error::Error>> {
    let file: MachineFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    Ok(file.into_spec()?)
}

fn load_state(path: &Path) -> Result<GameState, Box<dyn std::error::Error>> {
    Ok(GameState::from_json(&fs::read_to_string(path)?)?)
}

fn print(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn simulate(machine: &Path, steps: u64, trace: &Path) -> CliResult {
    let (tm, cfg) = load_machine(machine)?;
    let board = build_machine_board(&tm, &cfg)?;
    let mut cycles = 0;
    let limits = Limits::turns(steps + 2).traced();
    let v = run_forced_with(&board.state, &InputScript::empty(), &limits, |_| {
        cycles += 1;
        cycles <= steps + 1
    })?;
    fs::write(trace, v.trace.to_jsonl())?;
    let tape = decode_board_tape(&v.final_state).ok();
    print(&json!({ "outcome": v.outcome, "cycles": cycles.min(steps + 1) - 1, "records": v.trace.records.len(), "config": tape }));
    Ok(true)
}

fn compile(sentence: Option<&str>, machine: Option<&Path>, out: &Path) -> CliResult {
    let compiled = match (sentence, machine) {
        (Some(text), _) => build_mate_board(&parse_sentence(text)?)?,
        (None, Some(path)) => {
            let (tm, cfg) = load_machine(path)?;
            build_machine_board(&tm, &cfg)?
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    fs::write(out, compiled.state.to_json())?;
    print(&json!({ "report": compiled.report, "plan": compiled.plan }));
    Ok(compiled.report.passed())
}

fn run(state: &Path, inputs: &[u64], max_turns: u64, trace: Option<&Path>) -> CliResult {
    let s = load_state(state)?;
    let mut limits = Limits::turns(max_turns);
    limits.record_trace = trace.is_some();
    let v = run_forced(&s, &InputScript::scripted(inputs), &limits)?;
    if let Some(path) = trace {
        fs::write(path, v.trace.to_jsonl())?;
    }
    print(&json!({
        "outcome": v.outcome,
        "inputs_used": v.inputs_used,
        "windows": v.windows,
        "histogram": v.histogram,
        "first_read_turn": v.final_state.machine.as_ref().and_then(|m| m.first_read_turn),
    }));
    Ok(v.histogram.keys().all(|&k| k == 1))
}

fn solve(state: &Path, bound: u64) -> CliResult {
    let r = solve_game(&load_state(state)?, bound)?;
    print(&serde_json::to_value(&r)?);
    Ok(r.agreement)
}

fn verify(machine: &Path, cycles: u64) -> CliResult {
    let (tm, cfg) = load_machine(machine)?;
    let r = verify_bisimulation(&tm, &cfg, cycles)?;
    print(&serde_json::to_value(&r)?);
    Ok(r.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Simulate { machine, steps, trace } => simulate(machine, *steps, trace),
        Cmd::Compile { sentence, machine, out } => compile(sentence.as_deref(), machine.as_deref(), out),
        Cmd::Run { state, inputs, max_turns, trace } => run(state, inputs, *max_turns, trace.as_deref()),
        Cmd::Solve { state, bound } => solve(state, *bound),
        Cmd::Verify { machine, cycles } => verify(machine, *cycles),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
