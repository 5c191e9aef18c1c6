//! Forced-play driver, end-game detection, the bounded mate-in-n solver and
//! the bisimulation check against the reference interpreter.

mod bisim;
mod run;
mod solve;
mod trace;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::compiler::CompileError;
use crate::engine::{EngineError, Step};
use crate::tm::TmError;

pub use bisim::{verify_bisimulation, BisimReport, Divergence};
pub use run::{detect_end_game, machine_running, run_forced, run_forced_with, EndGame, Limits, Outcome, Verdict};
pub use solve::{solve_bounded, solve_game, solve_game_with, SolveResult, Strategy};
pub use trace::{GameTrace, TraceRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("unforced choice on turn {turn} at {step:?}: {options} legal actions")]
    Unforced { turn: u64, step: Step, options: usize },
    #[error("input script ran out on turn {turn}")]
    ScriptExhausted { turn: u64 },
    #[error("step budget of {budget} exceeded on turn {turn}")]
    StepBudget { budget: u64, turn: u64 },
    #[error("board was not compiled from a sentence")]
    NoSentence,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Tm(#[from] TmError),
}

pub type HarnessResult<T> = Result<T, HarnessError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScriptSource {
    Scripted,
    ExhaustiveSearch,
}

/// Integers chosen at the pump windows, one per round, in round order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputScript {
    pub values: Vec<u64>,
    pub source: ScriptSource,
}

impl InputScript {
    pub fn scripted(values: &[u64]) -> Self {
        Self { values: values.to_vec(), source: ScriptSource::Scripted }
    }

    pub fn empty() -> Self {
        Self::scripted(&[])
    }
}
