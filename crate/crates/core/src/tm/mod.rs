//! Turing machines: the reference interpreter, the inverse-unary input
//! codec, arithmetic sentences and the sentence-to-search-machine builder.

mod codec;
mod machine;
mod polynomial;
pub mod samples;
mod search;
mod sentence;

pub use codec::{decode_inputs, encode_inputs, Cell, InputAssignment};
pub use machine::{
    run, run_to_end, step, Direction, ExecutionTrace, MachineConfig, StateId, StepOutcome, Symbol, Transition,
    TuringMachineSpec,
};
pub use polynomial::{eval_naive, Monomial, Polynomial};
pub use search::{build_search_machine, SearchLayout, NEXT_X_STATE};
pub use sentence::{eval_polynomial, parse_sentence, ArithmeticSentence, Quantifier};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TmError {
    #[error("head moved left of cell 0 in state {state} at step {step}")]
    LeftOfOrigin { state: StateId, step: u64 },
    #[error("malformed machine: {0}")]
    Malformed(String),
    #[error("malformed input cells: {0}")]
    MalformedInput(String),
    #[error("arity mismatch: sentence has {expected} variables, got {got} values")]
    Arity { expected: usize, got: usize },
    #[error("sentence parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// On-disk machine description: named states and symbols plus transition
/// 5-tuples `[state, read, next, write, "L"|"R"]`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MachineFile {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub blank: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divider: Option<String>,
    pub initial_state: String,
    pub transitions: Vec<(String, String, String, String, Direction)>,
    /// Optional initial tape, one symbol name per cell from cell 0.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tape: Vec<String>,
}

impl MachineFile {
    pub fn from_spec(tm: &TuringMachineSpec, cfg: Option<&MachineConfig>) -> Self {
        let transitions = tm
            .transitions
            .iter()
            .map(|(&(q, s), t)| {
                (
                    tm.states[q].clone(),
                    tm.alphabet[s].clone(),
                    tm.states[t.next].clone(),
                    tm.alphabet[t.write].clone(),
                    t.direction,
                )
            })
            .collect();
        let tape = cfg
            .map(|c| {
                let len = c.tape.keys().next_back().map_or(0, |&k| k + 1);
                (0..len).map(|i| tm.alphabet[c.read(i, tm.blank)].clone()).collect()
            })
            .unwrap_or_default();
        Self {
            states: tm.states.clone(),
            alphabet: tm.alphabet.clone(),
            blank: tm.alphabet[tm.blank].clone(),
            divider: tm.divider.map(|d| tm.alphabet[d].clone()),
            initial_state: tm.states[tm.initial_state].clone(),
            transitions,
            tape,
        }
    }

    pub fn into_spec(self) -> Result<(TuringMachineSpec, MachineConfig), TmError> {
        let state = |n: &str| {
            self.states
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| TmError::Malformed(format!("unknown state {n:?}")))
        };
        let symbol = |n: &str| {
            self.alphabet
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| TmError::Malformed(format!("unknown symbol {n:?}")))
        };
        let mut transitions = std::collections::BTreeMap::new();
        for (q, s, nq, ws, d) in &self.transitions {
            let key = (state(q)?, symbol(s)?);
            let t = Transition { next: state(nq)?, write: symbol(ws)?, direction: *d };
            if transitions.insert(key, t).is_some() {
                return Err(TmError::Malformed(format!("duplicate transition for ({q}, {s})")));
            }
        }
        let blank = symbol(&self.blank)?;
        let tm = TuringMachineSpec {
            divider: self.divider.as_deref().map(symbol).transpose()?,
            initial_state: state(&self.initial_state)?,
            blank,
            transitions,
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
        };
        tm.validate()?;
        let cells = self.tape.iter().map(|s| symbol(s)).collect::<Result<Vec<_>, _>>()?;
        let cfg = MachineConfig::from_cells(tm.initial_state, &cells, blank);
        Ok((tm, cfg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_file_round_trip() {
        let tm = samples::parity_marker();
        let cfg = MachineConfig::from_cells(0, &[2, 1, 2], tm.blank);
        let file = MachineFile::from_spec(&tm, Some(&cfg));
        let text = serde_json::to_string(&file).unwrap();
        let back: MachineFile = serde_json::from_str(&text).unwrap();
        let (tm2, cfg2) = back.into_spec().unwrap();
        assert_eq!(tm, tm2);
        assert_eq!(cfg, cfg2);
    }

    #[test]
    fn duplicate_transition_rejected() {
        let mut file = MachineFile::from_spec(&samples::unary_incrementer(), None);
        let dup = file.transitions[0].clone();
        file.transitions.push(dup);
        assert!(matches!(file.into_spec(), Err(TmError::Malformed(_))));
    }
}
