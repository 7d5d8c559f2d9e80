//! Rulesets, positions, moves and the simplicial complex of legal selections.

mod face;
mod parse;
mod position;
mod ruleset;

pub use face::Face;
pub use position::{apply_move, canonical, dihedral_images, Move, Position, Symmetry};
pub use ruleset::{Ruleset, RulesetKind, MAX_PILES};

/// Generating faces of an ECN ruleset (see [`Ruleset::faces`]).
pub fn build_maximal_faces(ruleset: &Ruleset) -> Vec<Face> {
    ruleset.faces().to_vec()
}
