use serde::{Deserialize, Serialize};

use super::{machine_running, run_forced, HarnessError, HarnessResult, InputScript, Limits, Outcome};
use crate::engine::{
    advance_in_place, apply_in_place, decision_point, Action, DecisionKind, GameState, PendingChoice, PlayerId,
};
use crate::tm::{eval_polynomial, parse_sentence, ArithmeticSentence, Quantifier};

/// Truth of `sentence` with every variable, x included, ranging over
/// `0..=bound`.
pub fn solve_bounded(sentence: &ArithmeticSentence, bound: u64) -> bool {
    fn go(s: &ArithmeticSentence, bound: u64, vals: &mut Vec<u64>) -> bool {
        let i = vals.len();
        if i == s.quantifiers.len() {
            return (0..=bound).any(|x| eval_polynomial(s, x, vals).is_ok_and(|v| v == 0.into()));
        }
        let mut branch = |v| {
            vals.push(v);
            let r = go(s, bound, vals);
            vals.pop();
            r
        };
        match s.quantifiers[i] {
            Quantifier::Exists => (0..=bound).any(&mut branch),
            Quantifier::ForAll => (0..=bound).all(&mut branch),
        }
    }
    go(sentence, bound, &mut Vec::new())
}

/// Game tree explored by the solver. Branches cut off by pruning are not
/// listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Strategy {
    Leaf { outcome: Outcome },
    Choice { turn: u64, decider: PlayerId, alice_wins: bool, branches: Vec<(String, Strategy)> },
}

impl Strategy {
    pub fn alice_wins(&self) -> bool {
        match self {
            Strategy::Leaf { outcome } => outcome.alice_wins(),
            Strategy::Choice { alice_wins, .. } => *alice_wins,
        }
    }

    /// Values chosen along the line both players play best.
    pub fn principal_inputs(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut node = self;
        while let Strategy::Choice { alice_wins, branches, .. } = node {
            let Some((label, next)) =
                branches.iter().find(|(_, b)| b.alice_wins() == *alice_wins).or_else(|| branches.last())
            else {
                break;
            };
            if let Some(v) = label.strip_prefix("y=").and_then(|v| v.parse().ok()) {
                out.push(v);
            }
            node = next;
        }
        out
    }

    pub fn leaves(&self) -> usize {
        match self {
            Strategy::Leaf { .. } => 1,
            Strategy::Choice { branches, .. } => branches.iter().map(|(_, b)| b.leaves()).sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub bound: u64,
    pub mate_exists: bool,
    pub oracle_truth: bool,
    pub agreement: bool,
    pub strategy: Strategy,
}

/// Turns a leaf may run once the machine is going.
const LEAF_TURNS: u64 = 5_000_000;

pub fn solve_game(state: &GameState, bound: u64) -> HarnessResult<SolveResult> {
    solve_game_with(state, bound, &Limits::turns(LEAF_TURNS))
}

/// Minimax over the choice windows of a compiled mate board: Alice
/// maximizes at her choices, Bob minimizes at his. Every integer ranges
/// over `0..=bound`, and a leaf gives up once the machine has tried every
/// x up to `bound`.
pub fn solve_game_with(state: &GameState, bound: u64, leaf: &Limits) -> HarnessResult<SolveResult> {
    let text = state.machine.as_ref().and_then(|m| m.sentence.clone()).ok_or(HarnessError::NoSentence)?;
    let sentence = parse_sentence(&text)?;
    let leaf = Limits { x_bound: Some(bound), record_trace: false, ..*leaf };
    let mut s = state.clone();
    s.ensure_index();
    let strategy = explore(s, bound, &leaf)?;
    let mate_exists = strategy.alice_wins();
    let oracle_truth = solve_bounded(&sentence, bound);
    Ok(SolveResult { bound, mate_exists, oracle_truth, agreement: mate_exists == oracle_truth, strategy })
}

fn explore(mut s: GameState, bound: u64, leaf: &Limits) -> HarnessResult<Strategy> {
    let Some(options) = to_window(&mut s, bound, leaf)? else {
        let v = run_forced(&s, &InputScript::empty(), leaf)?;
        return Ok(Strategy::Leaf { outcome: v.outcome });
    };
    let d = decision_point(&s);
    let decider = d.decider.expect("window has a decider");
    let maximize = decider == PlayerId::Alice;
    let mut branches = Vec::new();
    let mut best = !maximize;
    for (label, action) in options {
        let mut child = s.clone();
        apply_in_place(&mut child, decider, &action)?;
        let sub = explore(child, bound, leaf)?;
        let wins = sub.alice_wins();
        branches.push((label, sub));
        if wins == maximize {
            best = wins;
            break;
        }
    }
    Ok(Strategy::Choice { turn: s.turn_number, decider, alice_wins: best, branches })
}

/// Play forced moves until a window opens. Returns its options, or `None`
/// once the machine runs or the game ends.
fn to_window(s: &mut GameState, bound: u64, limits: &Limits) -> HarnessResult<Option<Vec<(String, Action)>>> {
    let start = s.turn_number;
    loop {
        if s.is_over() || machine_running(s) {
            return Ok(None);
        }
        if s.turn_number > start + limits.max_turns {
            return Ok(None);
        }
        let d = decision_point(s);
        match d.kind {
            DecisionKind::GameOver => return Ok(None),
            DecisionKind::Advance => advance_in_place(s)?,
            DecisionKind::Choice => {
                match &s.pending {
                    Some(PendingChoice::Pump { .. }) => {
                        return Ok(Some((0..=bound).map(|v| (format!("y={v}"), Action::choose(v))).collect()))
                    }
                    Some(PendingChoice::MayCast { card, .. }) => {
                        return Ok(Some(vec![
                            ("cast".into(), Action::Cast { card: card.clone() }),
                            ("decline".into(), Action::PassPriority),
                        ]))
                    }
                    _ => {}
                }
                if d.actions.len() != 1 {
                    return Err(HarnessError::Unforced { turn: s.turn_number, step: s.step, options: d.actions.len() });
                }
                apply_in_place(s, d.decider.expect("choice has a decider"), &d.actions[0])?;
            }
        }
    }
}
