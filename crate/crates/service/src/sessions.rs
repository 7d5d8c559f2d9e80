use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use ecn_core::{apply_move, Move, Outcome, Position, Ruleset};

use crate::api::{HistoryEntry, MoveView, Player, SessionView};
use crate::error::{ApiError, ApiResult};

pub struct Session {
    pub id: String,
    pub ruleset: Ruleset,
    pub initial: Position,
    pub position: Position,
    pub history: Vec<HistoryEntry>,
}

impl Session {
    /// Applies an already validated move and records it.
    pub fn play(&mut self, by: Player, mv: &Move) -> ApiResult<MoveView> {
        let next = apply_move(&self.position, mv)?;
        let shown = MoveView::new(mv, next.clone());
        self.history.push(HistoryEntry { by, mv: shown.clone() });
        self.position = next;
        Ok(shown)
    }

    pub fn view(&self, outcome: Outcome) -> SessionView {
        SessionView {
            id: self.id.clone(),
            ruleset: self.ruleset.clone(),
            initial: self.initial.clone(),
            position: self.position.clone(),
            history: self.history.clone(),
            outcome,
            game_over: self.position.is_terminal(),
        }
    }
}

type Handle = Arc<tokio::sync::Mutex<Session>>;

/// In-memory sessions; each access evicts entries idle longer than the TTL.
pub struct Sessions {
    ttl: Duration,
    map: Mutex<HashMap<String, (Instant, Handle)>>,
}

impl Sessions {
    pub fn new(ttl: Duration) -> Self {
        Sessions {
            ttl,
            map: Mutex::new(HashMap::new()),
        }
    }

    fn evict(&self, map: &mut HashMap<String, (Instant, Handle)>, now: Instant) {
        map.retain(|_, (touched, _)| now.duration_since(*touched) < self.ttl);
    }

    pub fn create(&self, ruleset: Ruleset, position: Position) -> Handle {
        let id = uuid::Uuid::new_v4().to_string();
        let handle = Arc::new(tokio::sync::Mutex::new(Session {
            id: id.clone(),
            ruleset,
            initial: position.clone(),
            position,
            history: Vec::new(),
        }));
        let now = Instant::now();
        let mut map = self.map.lock().expect("session map poisoned");
        self.evict(&mut map, now);
        map.insert(id, (now, handle.clone()));
        handle
    }

    pub fn get(&self, id: &str) -> ApiResult<Handle> {
        let now = Instant::now();
        let mut map = self.map.lock().expect("session map poisoned");
        self.evict(&mut map, now);
        let (touched, handle) = map
            .get_mut(id)
            .ok_or_else(|| ApiError::not_found(format!("unknown session {id}")))?;
        *touched = now;
        Ok(handle.clone())
    }
}
