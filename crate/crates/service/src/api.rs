//! Request and response bodies. Rulesets and positions travel in their text
//! syntax inside JSON strings.

use ecn_core::{Method, Move, Outcome, Position, Ruleset};
use serde::{Deserialize, Serialize};

use crate::engine::Choice;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositionRequest {
    pub ruleset: String,
    pub position: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MovesRequest {
    pub ruleset: String,
    pub position: String,
    #[serde(default)]
    pub cursor: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveRequest {
    /// `[pile, amount]` pairs.
    pub removals: Vec<(usize, u64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoveView {
    pub face: Vec<usize>,
    pub removals: Vec<(usize, u64)>,
    pub result: Position,
}

impl MoveView {
    pub fn new(mv: &Move, result: Position) -> Self {
        MoveView {
            face: mv.support().indices().collect(),
            removals: mv.removals().to_vec(),
            result,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RulesetEntry {
    pub ruleset: Ruleset,
    pub resolution: String,
    pub detail: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Evaluation {
    pub outcome: Outcome,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grundy: Option<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MovesPage {
    pub total: usize,
    pub moves: Vec<MoveView>,
    pub next_cursor: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct BestMove {
    pub outcome: Outcome,
    #[serde(rename = "move", skip_serializing_if = "Option::is_none")]
    pub mv: Option<MoveView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<Position>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Human,
    Engine,
}

#[derive(Debug, Clone, Serialize)]
pub struct HistoryEntry {
    pub by: Player,
    #[serde(rename = "move")]
    pub mv: MoveView,
}

#[derive(Debug, Clone, Serialize)]
pub struct SessionView {
    pub id: String,
    pub ruleset: Ruleset,
    pub initial: Position,
    pub position: Position,
    pub history: Vec<HistoryEntry>,
    /// Outcome of `position` for the player to move.
    pub outcome: Outcome,
    pub game_over: bool,
}

#[derive(Debug, Serialize)]
pub struct EngineReply {
    pub choice: Choice,
    #[serde(rename = "move")]
    pub mv: MoveView,
    pub session: SessionView,
}
