//! The engine's move choice.

use ecn_core::{Move, Position, Resolver, Result, Ruleset};
use serde::Serialize;

/// Above this many candidate successors the engine skips the resistance
/// scoring from P-positions and plays the smallest successor.
pub const RESISTANCE_LIMIT: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Choice {
    /// Moved to a P-position.
    Winning,
    /// No winning move; left the opponent the fewest winning replies.
    Resistance { opponent_winning_moves: usize },
    /// No winning move and too many candidates to score.
    Smallest,
}

/// Winning move when one exists (smallest P successor). Otherwise the
/// successor minimizing the opponent's winning-move count, ties going to the
/// lexicographically smallest successor. `None` at the terminal position.
pub fn choose(resolver: &mut Resolver, ruleset: &Ruleset, pos: &Position) -> Result<Option<(Move, Position, Choice)>> {
    if let Some(mv) = resolver.winning_move(ruleset, pos)? {
        let next = ecn_core::apply_move(pos, &mv)?;
        return Ok(Some((mv, next, Choice::Winning)));
    }
    let succ = ruleset.successors(pos)?;
    let Some(first) = succ.first() else {
        return Ok(None);
    };
    if succ.len() > RESISTANCE_LIMIT {
        return Ok(Some((Move::between(pos, first)?, first.clone(), Choice::Smallest)));
    }
    let mut best: Option<(usize, &Position)> = None;
    for next in &succ {
        let mut replies = 0;
        for reply in ruleset.successors(next)? {
            if resolver.outcome(ruleset, &reply)?.0.is_p() {
                replies += 1;
            }
        }
        if best.is_none_or(|(b, _)| replies < b) {
            best = Some((replies, next));
        }
    }
    let (count, next) = best.expect("non-empty successor list");
    Ok(Some((
        Move::between(pos, next)?,
        next.clone(),
        Choice::Resistance {
            opponent_winning_moves: count,
        },
    )))
}
