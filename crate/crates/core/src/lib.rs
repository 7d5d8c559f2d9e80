//! Extended circular nim `ECN(m_S, k)` and related impartial games: move
//! generation, a brute-force oracle, closed-form P-position predicates,
//! ruleset reductions and an exhaustive verification harness.

pub mod error;
pub mod formulas;
pub mod game;
pub mod reductions;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use formulas::{eval_predicate, predicate_for, Predicate, PredicateId, PredicateResult};
pub use game::{apply_move, canonical, dihedral_images, Face, Move, Position, Ruleset, RulesetKind, Symmetry};
pub use reductions::{classify, find_isomorphism, resolve_outcome, Method, RelabelMap, Resolution, Resolver};
pub use solver::{Budget, GrundyTable, Outcome, OutcomeTable};
pub use verify::{export_report, verify_all, verify_predicate, Status, VerificationReport};
