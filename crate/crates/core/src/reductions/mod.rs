//! How a ruleset is decided: directly by a formula, by relabeling or merging
//! piles into a solved ruleset, by splitting into a disjunctive sum, or only
//! by brute force.

mod fixture;
mod relabel;
mod resolve;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::formulas::{predicate_for, PredicateId};
use crate::game::{Face, Ruleset, RulesetKind};

pub use fixture::{fixture, Fixture, FixtureRow, FIXTURE_VERSION};
pub use relabel::{find_isomorphism, RelabelMap};
pub use resolve::{resolve_outcome, Method, Resolver};

/// One summand of a disjunctive sum: the piles it owns (in order) and the
/// ruleset they form once renumbered `0..piles.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub piles: Vec<usize>,
    pub ruleset: Ruleset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Resolution {
    Predicate(PredicateId),
    IsomorphicTo { target: Ruleset, map: RelabelMap },
    /// Every face lies inside one group and every group is a face, so the
    /// game is nim on the group sums.
    PileMerge { groups: Vec<Vec<usize>>, target: Ruleset },
    DisjunctiveSum { components: Vec<Component> },
    MooreEquivalent { m: usize, k: usize },
    /// The whole circle is one face: P exactly at the empty position.
    SinglePile,
    Unsolved,
}

impl Resolution {
    /// Short variant name, used as the catalog tag.
    pub fn tag(&self) -> &'static str {
        match self {
            Resolution::Predicate(_) => "Predicate",
            Resolution::IsomorphicTo { .. } => "IsomorphicTo",
            Resolution::PileMerge { .. } => "PileMerge",
            Resolution::DisjunctiveSum { .. } => "DisjunctiveSum",
            Resolution::MooreEquivalent { .. } => "MooreEquivalent",
            Resolution::SinglePile => "SinglePile",
            Resolution::Unsolved => "Unsolved",
        }
    }

    pub fn is_unsolved(&self) -> bool {
        matches!(self, Resolution::Unsolved)
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resolution::Predicate(id) => write!(f, "Predicate({id})"),
            Resolution::IsomorphicTo { target, map } => write!(f, "IsomorphicTo({target}, {map})"),
            Resolution::PileMerge { groups, target } => {
                let gs: Vec<String> = groups.iter().map(|g| Face::from_indices(g.iter().copied()).to_string()).collect();
                write!(f, "PileMerge({}, {target})", gs.join(","))
            }
            Resolution::DisjunctiveSum { components } => {
                let cs: Vec<String> = components
                    .iter()
                    .map(|c| format!("{}:{}", Face::from_indices(c.piles.iter().copied()), c.ruleset))
                    .collect();
                write!(f, "DisjunctiveSum({})", cs.join(" + "))
            }
            Resolution::MooreEquivalent { m, k } => write!(f, "MooreEquivalent({m},{k})"),
            Resolution::SinglePile => f.write_str("SinglePile"),
            Resolution::Unsolved => f.write_str("Unsolved"),
        }
    }
}

/// Maximal faces as a set; two rulesets with equal complexes have the same moves.
pub(crate) fn complex(r: &Ruleset) -> BTreeSet<Face> {
    r.maximal_faces().into_iter().collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn classify(ruleset: &Ruleset) -> Result<Resolution> {
    let m = ruleset.m();
    let (steps, k) = match ruleset.kind() {
        RulesetKind::Moore { k: 1 } => return Ok(Resolution::Predicate(PredicateId::NimXor)),
        RulesetKind::Moore { k } => return Ok(Resolution::Predicate(PredicateId::Moore(*k))),
        RulesetKind::Simplicial => return Ok(Resolution::Unsolved),
        RulesetKind::Ecn { steps, k } => (steps, *k),
    };
    if k == 1 {
        let nim1 = Ruleset::nim(1)?;
        return Ok(Resolution::DisjunctiveSum {
            components: (0..m)
                .map(|i| Component {
                    piles: vec![i],
                    ruleset: nim1.clone(),
                })
                .collect(),
        });
    }
    if k + 1 >= m {
        if steps.iter().any(|&s| gcd(s, m) == 1) {
            return Ok(if k == m {
                Resolution::SinglePile
            } else {
                Resolution::MooreEquivalent { m, k }
            });
        }
        // Every step cycles through at most m/2 piles, so m-2 already
        // selects whole cycles.
        return Ok(Resolution::IsomorphicTo {
            target: ruleset.with_k(m - 2)?,
            map: RelabelMap::identity(m),
        });
    }
    if let Some(row) = fixture().get(ruleset) {
        return Ok(row.resolution.clone());
    }
    Ok(predicate_for(ruleset).map_or(Resolution::Unsolved, Resolution::Predicate))
}

/// Every ECN triple with the given pile count.
pub fn ecn_rulesets(m: usize) -> Vec<Ruleset> {
    let max_step = m / 2;
    let mut out = Vec::new();
    for mask in 1u32..(1 << max_step) {
        let steps: Vec<usize> = (0..max_step).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
        for k in 1..=m {
            out.push(Ruleset::ecn(m, steps.iter().copied(), k).expect("valid triple"));
        }
    }
    out.sort_by_key(|r| (r.steps().map(<[usize]>::to_vec), r.k()));
    out
}

/// Classification of every ECN triple with 4 <= m <= `max_m`.
pub fn catalog(max_m: usize) -> Result<Vec<(Ruleset, Resolution)>> {
    (4..=max_m)
        .flat_map(ecn_rulesets)
        .map(|r| classify(&r).map(|c| (r, c)))
        .collect()
}
