//! Reference Turing-machine interpreter over a one-sided tape.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::TmError;

pub type StateId = usize;
pub type Symbol = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transition {
    pub next: StateId,
    pub write: Symbol,
    pub direction: Direction,
}

/// States, alphabet and a partial transition table. Symbols and states are
/// dense indices; the names are kept for file round trips and board tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachineSpec {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub blank: Symbol,
    /// Symbol marking the end of an input number, when the machine reads
    /// inverse-unary input.
    pub divider: Option<Symbol>,
    pub initial_state: StateId,
    pub transitions: BTreeMap<(StateId, Symbol), Transition>,
}

impl TuringMachineSpec {
    pub fn transition(&self, state: StateId, symbol: Symbol) -> Option<&Transition> {
        self.transitions.get(&(state, symbol))
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_id(&self, name: &str) -> Option<Symbol> {
        self.alphabet.iter().position(|s| s == name)
    }

    pub fn validate(&self) -> Result<(), TmError> {
        if self.states.is_empty() || self.alphabet.is_empty() {
            return Err(TmError::Malformed("machine needs at least one state and one symbol".into()));
        }
        if self.initial_state >= self.states.len() {
            return Err(TmError::Malformed("initial state out of range".into()));
        }
        if self.blank >= self.alphabet.len() {
            return Err(TmError::Malformed("blank symbol out of range".into()));
        }
        if let Some(d) = self.divider {
            if d >= self.alphabet.len() || d == self.blank {
                return Err(TmError::Malformed("divider must be a non-blank alphabet member".into()));
            }
        }
        for (&(q, s), t) in &self.transitions {
            if q >= self.states.len()
                || t.next >= self.states.len()
                || s >= self.alphabet.len()
                || t.write >= self.alphabet.len()
            {
                return Err(TmError::Malformed(format!("transition ({q},{s}) references unknown state or symbol")));
            }
        }
        Ok(())
    }
}

/// Tape contents, head and control state. Blank cells are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MachineConfig {
    pub tape: BTreeMap<u64, Symbol>,
    pub head: u64,
    pub state: StateId,
    pub steps_taken: u64,
}

impl MachineConfig {
    pub fn new(state: StateId) -> Self {
        Self { tape: BTreeMap::new(), head: 0, state, steps_taken: 0 }
    }

    /// Builds a config from a dense list of cells starting at cell 0.
    pub fn from_cells(state: StateId, cells: &[Symbol], blank: Symbol) -> Self {
        let mut cfg = Self::new(state);
        for (i, &s) in cells.iter().enumerate() {
            cfg.write(i as u64, s, blank);
        }
        cfg
    }

    pub fn read(&self, cell: u64, blank: Symbol) -> Symbol {
        self.tape.get(&cell).copied().unwrap_or(blank)
    }

    pub fn write(&mut self, cell: u64, symbol: Symbol, blank: Symbol) {
        if symbol == blank {
            self.tape.remove(&cell);
        } else {
            self.tape.insert(cell, symbol);
        }
    }

    /// Same tape, head and state; the step counter is ignored.
    pub fn same_machine_state(&self, other: &MachineConfig) -> bool {
        self.tape == other.tape && self.head == other.head && self.state == other.state
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Continued(MachineConfig),
    Halted,
}

pub fn step(tm: &TuringMachineSpec, cfg: &MachineConfig) -> Result<StepOutcome, TmError> {
    let symbol = cfg.read(cfg.head, tm.blank);
    let Some(t) = tm.transition(cfg.state, symbol) else {
        return Ok(StepOutcome::Halted);
    };
    let mut next = cfg.clone();
    next.write(cfg.head, t.write, tm.blank);
    next.head = match t.direction {
        Direction::R => cfg.head + 1,
        Direction::L => cfg
            .head
            .checked_sub(1)
            .ok_or(TmError::LeftOfOrigin { state: cfg.state, step: cfg.steps_taken })?,
    };
    next.state = t.next;
    next.steps_taken += 1;
    Ok(StepOutcome::Continued(next))
}

/// Every configuration visited, starting with the initial one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecutionTrace {
    pub configs: Vec<MachineConfig>,
    pub halted: bool,
}

impl ExecutionTrace {
    pub fn last(&self) -> &MachineConfig {
        self.configs.last().expect("trace always holds the initial config")
    }
}

/// Runs until halt or until the trace holds `max_steps` configurations
/// (the initial configuration counts as the first).
pub fn run(tm: &TuringMachineSpec, cfg: &MachineConfig, max_steps: u64) -> Result<ExecutionTrace, TmError> {
    let mut configs = vec![cfg.clone()];
    let mut halted = false;
    loop {
        match step(tm, configs.last().unwrap())? {
            StepOutcome::Halted => {
                halted = true;
                break;
            }
            StepOutcome::Continued(next) => {
                if configs.len() as u64 >= max_steps {
                    break;
                }
                configs.push(next);
            }
        }
    }
    Ok(ExecutionTrace { configs, halted })
}

/// Runs without keeping history. Returns the final config and whether the
/// machine halted within `max_steps`.
pub fn run_to_end(tm: &TuringMachineSpec, cfg: &MachineConfig, max_steps: u64) -> Result<(MachineConfig, bool), TmError> {
    let mut cur = cfg.clone();
    for _ in 0..max_steps {
        match step(tm, &cur)? {
            StepOutcome::Halted => return Ok((cur, true)),
            StepOutcome::Continued(next) => cur = next,
        }
    }
    let halted = matches!(step(tm, &cur)?, StepOutcome::Halted);
    Ok((cur, halted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::samples;

    #[test]
    fn empty_table_halts_immediately() {
        let tm = samples::empty_table();
        let cfg = MachineConfig::new(0);
        assert_eq!(step(&tm, &cfg).unwrap(), StepOutcome::Halted);
        let trace = run(&tm, &cfg, 10).unwrap();
        assert_eq!(trace.configs.len(), 1);
        assert!(trace.halted);
    }

    #[test]
    fn unary_incrementer_appends_a_mark() {
        let tm = samples::unary_incrementer();
        let one = tm.symbol_id("1").unwrap();
        let cfg = MachineConfig::from_cells(0, &[one, one, one], tm.blank);
        let trace = run(&tm, &cfg, 100).unwrap();
        assert!(trace.halted);
        let expected: BTreeMap<u64, Symbol> = (0..4).map(|i| (i, one)).collect();
        assert_eq!(trace.last().tape, expected);
    }

    #[test]
    fn parity_marker_writes_even_mark() {
        let tm = samples::parity_marker();
        let one = tm.symbol_id("1").unwrap();
        let zero = tm.symbol_id("0").unwrap();
        let cfg = MachineConfig::from_cells(0, &[one, one, zero, one], tm.blank);
        let trace = run(&tm, &cfg, 100).unwrap();
        assert!(trace.halted);
        // three ones: odd parity
        assert_eq!(trace.last().read(4, tm.blank), tm.symbol_id("o").unwrap());
    }

    #[test]
    fn loop_machine_runs_to_cutoff() {
        let tm = samples::three_state_loop();
        let trace = run(&tm, &MachineConfig::new(0), 50).unwrap();
        assert!(!trace.halted);
        assert_eq!(trace.configs.len(), 50);
    }

    #[test]
    fn stepping_is_deterministic() {
        let tm = samples::parity_marker();
        let cfg = MachineConfig::from_cells(0, &[1, 2, 1], tm.blank);
        assert_eq!(step(&tm, &cfg).unwrap(), step(&tm, &cfg).unwrap());
    }

    #[test]
    fn left_move_at_origin_is_an_error() {
        let mut tm = samples::empty_table();
        tm.transitions.insert((0, 0), Transition { next: 0, write: 0, direction: Direction::L });
        assert!(matches!(step(&tm, &MachineConfig::new(0)), Err(TmError::LeftOfOrigin { .. })));
    }
}
