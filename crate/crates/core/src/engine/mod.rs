//! Deterministic rules core: turn structure, priority, the stack, triggers,
//! state-based actions, combat, counters, phasing, suspend and vanishing,
//! tokens and text edits.
//!
//! Every operation is a transition on a [`GameState`] value. Card behavior is
//! looked up by script id in [`crate::cards`].

mod actions;
mod combat;
mod sba;
mod state;
mod stats;
mod text;
mod triggers;
mod turn;
mod types;

pub use actions::{apply_action, decision_point, legal_actions, resolve_top, Decision, DecisionKind};
pub use combat::resolve_combat;
pub use sba::{apply_state_based_actions, sba_fixpoint_holds};
pub use state::{CombatState, ControlGrant, DelayedTrigger, GameState, MachineRegistry, PendingChoice, Priority, TriggerOrder};
pub use stats::{can_attack, effective_colors, effective_stats, has_keyword, is_colorless};
pub use text::{apply_text_edit, edited_color, edited_tag, render_rules_text, render_type_line};
pub use triggers::push_triggers;
pub use turn::advance_step;
pub use types::*;

pub(crate) use actions::apply_in_place;
pub(crate) use turn::advance_in_place;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("{0} is not a creature")]
    NotACreature(ObjId),
    #[error("no object {0}")]
    NoSuchObject(ObjId),
    #[error("cannot advance: {0}")]
    CannotAdvance(String),
    #[error("illegal action {action}: {reason}")]
    IllegalAction { action: String, reason: String },
    #[error("text edit rejected: {0}")]
    BadTextEdit(String),
    #[error("bad integer literal {0:?}: expected binary digits without leading zeros")]
    BadInteger(String),
    #[error("unknown card {0:?}")]
    UnknownCard(String),
    #[error("unknown script {0:?}")]
    UnknownScript(String),
    #[error("game is over")]
    GameOver,
    #[error("{0}")]
    Rules(String),
}

pub type EngineResult<T> = Result<T, EngineError>;
