//! Small machines used by tests, the acceptance suite and the CLI examples.

use std::collections::BTreeMap;

use super::{Direction, Transition, TuringMachineSpec};

fn machine(states: &[&str], alphabet: &[&str], rows: &[(&str, &str, &str, &str, Direction)]) -> TuringMachineSpec {
    let sid = |n: &str| states.iter().position(|s| *s == n).unwrap();
    let sym = |n: &str| alphabet.iter().position(|s| *s == n).unwrap();
    let transitions: BTreeMap<_, _> = rows
        .iter()
        .map(|&(q, s, nq, w, d)| ((sid(q), sym(s)), Transition { next: sid(nq), write: sym(w), direction: d }))
        .collect();
    TuringMachineSpec {
        states: states.iter().map(|s| s.to_string()).collect(),
        alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
        blank: 0,
        divider: None,
        initial_state: 0,
        transitions,
    }
}

/// One state, blank-only alphabet, no transitions.
pub fn empty_table() -> TuringMachineSpec {
    machine(&["halt"], &["_"], &[])
}

/// Walks right over a block of ones and appends one more.
pub fn unary_incrementer() -> TuringMachineSpec {
    use Direction::R;
    machine(&["scan", "done"], &["_", "1"], &[("scan", "1", "scan", "1", R), ("scan", "_", "done", "1", R)])
}

/// Scans a binary word and writes `e` or `o` after it for even or odd
/// count of ones.
pub fn parity_marker() -> TuringMachineSpec {
    use Direction::R;
    machine(
        &["even", "odd", "done"],
        &["_", "0", "1", "e", "o"],
        &[
            ("even", "0", "even", "0", R),
            ("even", "1", "odd", "1", R),
            ("odd", "0", "odd", "0", R),
            ("odd", "1", "even", "1", R),
            ("even", "_", "done", "e", R),
            ("odd", "_", "done", "o", R),
        ],
    )
}

/// Three states cycling forever while writing `x y _` to the right.
pub fn three_state_loop() -> TuringMachineSpec {
    use Direction::R;
    machine(
        &["a", "b", "c"],
        &["_", "x", "y"],
        &[("a", "_", "b", "x", R), ("b", "_", "c", "y", R), ("c", "_", "a", "_", R)],
    )
}

/// Marks cell 0, then bounces between the mark and the end of a growing
/// block of ones. Never halts and exercises left moves.
pub fn bouncer() -> TuringMachineSpec {
    use Direction::{L, R};
    machine(
        &["start", "right", "left"],
        &["_", "1", "|"],
        &[
            ("start", "_", "right", "|", R),
            ("right", "1", "right", "1", R),
            ("right", "_", "left", "1", L),
            ("left", "1", "left", "1", L),
            ("left", "|", "right", "|", R),
        ],
    )
}
