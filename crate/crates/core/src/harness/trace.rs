use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::engine::{Action, GameState, PlayerId, Step};

/// One line of a trace: a decision taken, or the game moving on by itself
/// (`action` absent).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub seq: u64,
    pub turn: u64,
    pub step: Step,
    pub active_player: PlayerId,
    pub turn_controller: PlayerId,
    pub decider: Option<PlayerId>,
    pub action: Option<Action>,
    pub options: usize,
    pub digest: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameTrace {
    pub records: Vec<TraceRecord>,
}

impl GameTrace {
    pub(super) fn push(&mut self, s: &GameState, decider: Option<PlayerId>, action: Option<Action>, options: usize) {
        self.records.push(TraceRecord {
            seq: self.records.len() as u64,
            turn: s.turn_number,
            step: s.step,
            active_player: s.active_player,
            turn_controller: s.turn_controller,
            decider,
            action,
            options,
            digest: s.digest(),
        });
    }

    pub fn write_jsonl(&self, mut w: impl Write) -> io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("json is utf-8")
    }

    /// Records of Alice's turns, first per turn.
    pub fn alice_turns(&self) -> impl Iterator<Item = &TraceRecord> {
        let mut last = 0;
        self.records.iter().filter(move |r| {
            let fresh = r.active_player == PlayerId::Alice && r.turn != last;
            if fresh {
                last = r.turn;
            }
            fresh
        })
    }
}
