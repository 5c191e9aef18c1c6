//! Builds a machine that reads `c1..cn` from the left of the tape and then
//! searches `x = 0, 1, 2, ...` for a root of `P(x, c1..cn)`.
//!
//! Tape layout: input segments in reverse round order (segment 1 holds
//! `cn`), each `c` blank cells closed by a divider, followed by the `x`
//! segment in the same format, followed by a signed unary accumulator.
//! Every monomial is evaluated by nested loops that mark cells of the
//! variable segments one level per factor; each innermost iteration adds
//! `|coef|` marks of the coefficient's sign, cancelling opposite marks.
//! `P = 0` exactly when the accumulator ends up empty.

use std::collections::{BTreeMap, HashMap};

use super::{ArithmeticSentence, Direction, InputAssignment, MachineConfig, StateId, Symbol, TmError, Transition, TuringMachineSpec};

/// Entered once per increment of `x`.
pub const NEXT_X_STATE: &str = "next_x";
const MAX_DEGREE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Blank,
    Div,
    Pos,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Cell {
    kind: Kind,
    left: bool,
    mask: u32,
}

/// How a search machine expects its input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchLayout {
    pub n: usize,
}

impl SearchLayout {
    /// Initial configuration for the given per-round values. Rounds are
    /// laid out right to left: the last round's value sits at cell 0.
    pub fn initial_config(&self, tm: &TuringMachineSpec, inputs: &InputAssignment) -> MachineConfig {
        let reversed = InputAssignment(inputs.0.iter().rev().copied().collect());
        let div = tm.divider.expect("search machines have a divider");
        let cells: Vec<Symbol> = super::encode_inputs(&reversed)
            .into_iter()
            .map(|c| match c {
                super::Cell::Blank => tm.blank,
                super::Cell::Divider => div,
            })
            .collect();
        MachineConfig::from_cells(tm.initial_state, &cells, tm.blank)
    }
}

struct Builder {
    n: usize,
    cells: Vec<Cell>,
    names: Vec<String>,
    transitions: BTreeMap<(StateId, Symbol), Transition>,
    bounce: HashMap<StateId, StateId>,
}

impl Builder {
    fn new(n: usize, degree: usize) -> Self {
        let blank = |left, mask| Cell { kind: Kind::Blank, left, mask };
        let mut cells = vec![blank(false, 0), Cell { kind: Kind::Div, left: false, mask: 0 }];
        for mask in 1..(1u32 << degree) {
            cells.push(blank(false, mask));
        }
        for mask in 0..(1u32 << degree) {
            cells.push(blank(true, mask));
        }
        cells.push(Cell { kind: Kind::Div, left: true, mask: 0 });
        cells.push(Cell { kind: Kind::Pos, left: false, mask: 0 });
        cells.push(Cell { kind: Kind::Neg, left: false, mask: 0 });
        Self { n, cells, names: Vec::new(), transitions: BTreeMap::new(), bounce: HashMap::new() }
    }

    fn symbol_name(c: &Cell) -> String {
        let l = if c.left { "L" } else { "" };
        match c.kind {
            Kind::Blank if c.mask == 0 => format!("{l}_"),
            Kind::Blank => format!("{l}m{}", c.mask),
            Kind::Div => format!("{l}D"),
            Kind::Pos => "P".into(),
            Kind::Neg => "N".into(),
        }
    }

    fn sym(&self, c: Cell) -> Symbol {
        self.cells.iter().position(|x| *x == c).expect("symbol exists")
    }

    fn syms(&self) -> Vec<(Symbol, Cell)> {
        self.cells.iter().copied().enumerate().collect()
    }

    fn divs(&self) -> [Symbol; 2] {
        [self.sym(Cell { kind: Kind::Div, left: false, mask: 0 }), self.sym(Cell { kind: Kind::Div, left: true, mask: 0 })]
    }

    fn state(&mut self, name: &str) -> StateId {
        self.names.push(format!("{name}{}", self.names.len()));
        self.names.len() - 1
    }

    fn named(&mut self, name: &str) -> StateId {
        self.names.push(name.to_string());
        self.names.len() - 1
    }

    fn t(&mut self, q: StateId, s: Symbol, next: StateId, write: Symbol, direction: Direction) {
        let prev = self.transitions.insert((q, s), Transition { next, write, direction });
        debug_assert!(prev.is_none(), "duplicate transition for state {q} symbol {s}");
    }

    /// Leaves the head where it is: right, then left into `target`.
    fn stay_to(&mut self, q: StateId, s: Symbol, write: Symbol, target: StateId) {
        let b = match self.bounce.get(&target) {
            Some(&b) => b,
            None => {
                let b = self.state("bounce");
                for (sym, _) in self.syms() {
                    self.t(b, sym, target, sym, Direction::L);
                }
                self.bounce.insert(target, b);
                b
            }
        };
        self.t(q, s, b, write, Direction::R);
    }

    /// Scans right to the first divider and stops on it in `cont`.
    fn to_next_div(&mut self, cont: StateId) -> StateId {
        let q = self.state("rdiv");
        for (s, c) in self.syms() {
            if c.kind == Kind::Div {
                self.stay_to(q, s, s, cont);
            } else {
                self.t(q, s, q, s, Direction::R);
            }
        }
        q
    }

    /// From divider `from` to divider `to`.
    fn goto(&mut self, entry: StateId, from: usize, to: usize, cont: StateId) {
        if from == to {
            for d in self.divs() {
                self.stay_to(entry, d, d, cont);
            }
            return;
        }
        let right = to > from;
        let dir = if right { Direction::R } else { Direction::L };
        let hops = from.abs_diff(to);
        let scans: Vec<StateId> = (0..hops).map(|_| self.state(if right { "seekr" } else { "seekl" })).collect();
        // scans[i] still has to pass i + 1 dividers, the last of which is the target
        for d in self.divs() {
            self.t(entry, d, scans[hops - 1], d, dir);
        }
        for i in 0..hops {
            for (s, c) in self.syms() {
                if c.kind == Kind::Div {
                    if i == 0 {
                        self.stay_to(scans[0], s, s, cont);
                    } else {
                        self.t(scans[i], s, scans[i - 1], s, dir);
                    }
                } else {
                    self.t(scans[i], s, scans[i], s, dir);
                }
            }
        }
    }

    /// Marks the rightmost cell of segment `seg` lacking mark `level`.
    fn mark_next(&mut self, entry: StateId, level: u32, found: StateId, none: StateId) {
        let bit = 1 << level;
        let [d, ld] = self.divs();
        self.stay_to(entry, ld, ld, none);
        let scan = self.state("mark");
        self.t(entry, d, scan, d, Direction::L);
        let back_found = self.to_next_div(found);
        let back_none = self.to_next_div(none);
        for (s, c) in self.syms() {
            match c.kind {
                Kind::Div => self.t(scan, s, back_none, s, Direction::R),
                Kind::Blank if c.mask & bit == 0 => {
                    let w = self.sym(Cell { mask: c.mask | bit, ..c });
                    self.t(scan, s, back_found, w, Direction::R);
                }
                Kind::Blank if c.left => self.t(scan, s, back_none, s, Direction::R),
                Kind::Blank => self.t(scan, s, scan, s, Direction::L),
                Kind::Pos | Kind::Neg => {}
            }
        }
    }

    /// Clears mark `level` from segment `seg`.
    fn unmark_all(&mut self, entry: StateId, level: u32, cont: StateId) {
        let bit = 1 << level;
        let [d, ld] = self.divs();
        self.stay_to(entry, ld, ld, cont);
        let scan = self.state("unmark");
        self.t(entry, d, scan, d, Direction::L);
        let back = self.to_next_div(cont);
        for (s, c) in self.syms() {
            match c.kind {
                Kind::Div => self.t(scan, s, back, s, Direction::R),
                Kind::Blank if c.mask & bit != 0 => {
                    let w = self.sym(Cell { mask: c.mask & !bit, ..c });
                    let next = if c.left { Direction::R } else { Direction::L };
                    self.t(scan, s, if c.left { back } else { scan }, w, next);
                }
                Kind::Blank => self.t(scan, s, back, s, Direction::R),
                Kind::Pos | Kind::Neg => {}
            }
        }
    }

    /// Adds one signed mark to the accumulator; starts and ends on the `x`
    /// divider.
    fn add(&mut self, entry: StateId, positive: bool, cont: StateId) {
        let blank = 0;
        let pos = self.sym(Cell { kind: Kind::Pos, left: false, mask: 0 });
        let neg = self.sym(Cell { kind: Kind::Neg, left: false, mask: 0 });
        let (same, opp) = if positive { (pos, neg) } else { (neg, pos) };
        let first = self.state("acc");
        let seek_same = self.state("accs");
        let seek_opp = self.state("acco");
        let erase = self.state("erase");
        let back = self.state("accb");
        for d in self.divs() {
            self.t(entry, d, first, d, Direction::R);
            self.stay_to(back, d, d, cont);
        }
        self.t(first, blank, cont, same, Direction::L);
        self.t(first, same, seek_same, same, Direction::R);
        self.t(first, opp, seek_opp, opp, Direction::R);
        self.t(seek_same, same, seek_same, same, Direction::R);
        self.t(seek_same, blank, back, same, Direction::L);
        self.t(seek_opp, opp, seek_opp, opp, Direction::R);
        self.t(seek_opp, blank, erase, blank, Direction::L);
        self.t(erase, opp, back, blank, Direction::L);
        self.t(back, same, back, same, Direction::L);
        self.t(back, opp, back, opp, Direction::L);
    }

    fn level(&mut self, entry: StateId, segs: &[usize], level: usize, coef: i64, cont: StateId) {
        let x_div = self.n + 1;
        if level == segs.len() {
            let count = coef.unsigned_abs();
            let mut cur = entry;
            for i in 0..count {
                let next = if i + 1 == count { cont } else { self.state("add") };
                self.add(cur, coef > 0, next);
                cur = next;
            }
            return;
        }
        let seg = segs[level];
        let at_seg = self.state("loop");
        self.goto(entry, x_div, seg, at_seg);
        let found = self.state("found");
        let none = self.state("done");
        self.mark_next(at_seg, level as u32, found, none);
        let body = self.state("body");
        self.goto(found, seg, x_div, body);
        self.level(body, segs, level + 1, coef, entry);
        let cleared = self.state("cleared");
        self.unmark_all(none, level as u32, cleared);
        self.goto(cleared, seg, x_div, cont);
    }
}

pub fn build_search_machine(sentence: &ArithmeticSentence) -> Result<(TuringMachineSpec, SearchLayout), TmError> {
    sentence.validate()?;
    let n = sentence.n();
    let monomials = sentence
        .polynomial
        .monomials()
        .ok_or_else(|| TmError::Malformed("coefficient does not fit in 64 bits".into()))?;
    let degree = monomials.iter().map(|m| m.vars.len()).max().unwrap_or(0);
    if degree > MAX_DEGREE {
        return Err(TmError::Malformed(format!("degree {degree} exceeds the supported {MAX_DEGREE}")));
    }
    let mut b = Builder::new(n, degree);
    let blank = 0;
    let div = 1;
    let left_blank = b.sym(Cell { kind: Kind::Blank, left: true, mask: 0 });
    let [_, left_div] = b.divs();

    let init = b.named("init");
    let halt = b.named("halt");
    let next_x = b.named(NEXT_X_STATE);
    let eval = b.named("eval");

    // Tag cell 0, walk past the n input dividers and open the x segment.
    let write_x = b.state("openx");
    b.stay_to(write_x, blank, div, eval);
    if n == 0 {
        b.stay_to(init, blank, left_div, eval);
    } else {
        let counts: Vec<StateId> = (0..n).map(|_| b.state("skip")).collect();
        // counts[j]: j + 1 dividers still to pass
        let after = |j: usize| if j == 0 { write_x } else { counts[j - 1] };
        b.t(init, blank, counts[n - 1], left_blank, Direction::R);
        b.t(init, div, after(n - 1), left_div, Direction::R);
        for j in 0..n {
            b.t(counts[j], blank, counts[j], blank, Direction::R);
            b.t(counts[j], div, after(j), div, Direction::R);
        }
    }

    // Evaluate every monomial into the accumulator.
    let mut cur = eval;
    for m in &monomials {
        let segs: Vec<usize> = m.vars.iter().map(|&v| if v == 0 { n + 1 } else { n + 1 - v }).collect();
        let next = b.state("mono");
        b.level(cur, &segs, 0, m.coef, next);
        cur = next;
    }

    // Empty accumulator means a root. Otherwise clear it and bump x.
    let probe = b.state("probe");
    let clear = b.state("clear");
    let rewind = b.state("rewind");
    let bump = b.state("bump");
    let open = b.state("open");
    let settle = b.state("settle");
    let pos = b.sym(Cell { kind: Kind::Pos, left: false, mask: 0 });
    let neg = b.sym(Cell { kind: Kind::Neg, left: false, mask: 0 });
    for d in b.divs() {
        b.t(cur, d, probe, d, Direction::R);
        b.t(rewind, d, bump, d, Direction::R);
    }
    // the R move into `bump` overshoots the divider; step back onto it
    b.t(probe, blank, halt, blank, Direction::L);
    for s in [pos, neg] {
        b.t(probe, s, clear, blank, Direction::R);
        b.t(clear, s, clear, blank, Direction::R);
    }
    b.t(clear, blank, rewind, blank, Direction::L);
    b.t(rewind, blank, rewind, blank, Direction::L);
    let step_back = b.state("onx");
    b.t(bump, blank, step_back, blank, Direction::L);
    b.t(step_back, div, open, blank, Direction::R);
    b.t(step_back, left_div, open, left_blank, Direction::R);
    b.t(open, blank, settle, div, Direction::L);
    b.t(settle, blank, next_x, blank, Direction::R);
    b.t(settle, left_blank, next_x, left_blank, Direction::R);
    b.stay_to(next_x, div, div, eval);

    let alphabet: Vec<String> = b.cells.iter().map(Builder::symbol_name).collect();
    let tm = TuringMachineSpec {
        states: b.names,
        alphabet,
        blank,
        divider: Some(div),
        initial_state: init,
        transitions: b.transitions,
    };
    tm.validate()?;
    Ok((tm, SearchLayout { n }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::{parse_sentence, run_to_end, step, StepOutcome};

    /// Runs the reference interpreter until halt or until `x` would exceed
    /// `bound`. Returns the root found, if any.
    pub(crate) fn search_up_to(tm: &TuringMachineSpec, cfg: &MachineConfig, bound: u64) -> Option<u64> {
        let marker = tm.state_id(NEXT_X_STATE).unwrap();
        let mut cur = cfg.clone();
        let mut x = 0;
        loop {
            match step(tm, &cur).unwrap() {
                StepOutcome::Halted => return Some(x),
                StepOutcome::Continued(next) => {
                    if next.state == marker && cur.state != marker {
                        x += 1;
                        if x > bound {
                            return None;
                        }
                    }
                    cur = next;
                }
            }
        }
    }

    fn brute(s: &ArithmeticSentence, vals: &[u64], bound: u64) -> Option<u64> {
        (0..=bound).find(|&x| crate::tm::eval_polynomial(s, x, vals).unwrap() == 0.into())
    }

    #[test]
    fn finds_root_of_x_minus_two() {
        let s = parse_sentence(": x - 2 = 0").unwrap();
        let (tm, layout) = build_search_machine(&s).unwrap();
        let cfg = layout.initial_config(&tm, &InputAssignment(vec![]));
        assert_eq!(search_up_to(&tm, &cfg, 10), Some(2));
    }

    #[test]
    fn x_plus_one_never_halts() {
        let s = parse_sentence(": x + 1 = 0").unwrap();
        let (tm, layout) = build_search_machine(&s).unwrap();
        let cfg = layout.initial_config(&tm, &InputAssignment(vec![]));
        assert_eq!(search_up_to(&tm, &cfg, 12), None);
        let (_, halted) = run_to_end(&tm, &cfg, 20_000).unwrap();
        assert!(!halted);
    }

    #[test]
    fn zero_polynomial_halts_at_once() {
        let s = parse_sentence(": 0 = 0").unwrap();
        let (tm, layout) = build_search_machine(&s).unwrap();
        let cfg = layout.initial_config(&tm, &InputAssignment(vec![]));
        let (_, halted) = run_to_end(&tm, &cfg, 10).unwrap();
        assert!(halted);
        assert_eq!(search_up_to(&tm, &cfg, 0), Some(0));
    }

    #[test]
    fn agrees_with_brute_force_on_two_inputs() {
        let s = parse_sentence("E y1 A y2 : (x*y1 - 2*y2 + y1*y1 - 3 = 0)").unwrap();
        let (tm, layout) = build_search_machine(&s).unwrap();
        for a in 0..=3 {
            for b in 0..=3 {
                let cfg = layout.initial_config(&tm, &InputAssignment(vec![a, b]));
                assert_eq!(search_up_to(&tm, &cfg, 4), brute(&s, &[a, b], 4), "inputs {a} {b}");
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_on_three_inputs_with_squares() {
        let s = parse_sentence("E y1 A y2 E y3 : (x^2 - y3*y1 + y2 - 1 = 0)").unwrap();
        let (tm, layout) = build_search_machine(&s).unwrap();
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 0..=2 {
                    let cfg = layout.initial_config(&tm, &InputAssignment(vec![a, b, c]));
                    assert_eq!(search_up_to(&tm, &cfg, 3), brute(&s, &[a, b, c], 3), "inputs {a} {b} {c}");
                }
            }
        }
    }
}
