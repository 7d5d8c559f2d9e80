//! Brute-force ground truth: outcome classes, Grundy values, winning moves
//! and sum composition over bounded position spaces.

mod dump;
mod memo;
mod shape;
mod table;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::game::{Move, Position, Ruleset};

pub use dump::{read_dump, write_csv, write_dump, TableDump, DUMP_FORMAT_VERSION};
pub use memo::MemoSolver;
pub use shape::{box_size, BoxShape, Budget};
pub use table::{build_tables, GrundyTable, OutcomeTable};

/// Outcome class under normal play.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Outcome {
    /// The previous player wins.
    P,
    /// The next player wins.
    N,
}

impl Outcome {
    pub fn from_grundy(g: u32) -> Self {
        if g == 0 {
            Outcome::P
        } else {
            Outcome::N
        }
    }

    pub fn is_p(self) -> bool {
        self == Outcome::P
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::P => "P",
            Outcome::N => "N",
        })
    }
}

pub fn grundy(ruleset: &Ruleset, pos: &Position, budget: Budget) -> Result<u32> {
    MemoSolver::new(ruleset, budget).grundy(pos)
}

pub fn outcome(ruleset: &Ruleset, pos: &Position, budget: Budget) -> Result<Outcome> {
    grundy(ruleset, pos, budget).map(Outcome::from_grundy)
}

/// A move to a P-position when `pos` is N, choosing the lexicographically
/// smallest successor; `None` when `pos` is P.
pub fn winning_move(ruleset: &Ruleset, pos: &Position, budget: Budget) -> Result<Option<Move>> {
    let mut solver = MemoSolver::new(ruleset, budget);
    if solver.grundy(pos)? == 0 {
        return Ok(None);
    }
    for next in ruleset.successors(pos)? {
        if solver.grundy(&next)? == 0 {
            return Ok(Some(Move::between(pos, &next)?));
        }
    }
    unreachable!("an N-position has a P option")
}

/// Outcome of a disjunctive sum from its components' Grundy values.
pub fn disjunctive_outcome(grundies: &[u32]) -> Outcome {
    Outcome::from_grundy(grundies.iter().fold(0, |acc, &g| acc ^ g))
}

/// Outcome of a selective sum: P exactly when every component is P.
pub fn selective_outcome(outcomes: &[Outcome]) -> Outcome {
    if outcomes.iter().all(|o| o.is_p()) {
        Outcome::P
    } else {
        Outcome::N
    }
}
