//! Closed-form P-position predicates, one per solved ruleset family, and the
//! cyclic closure that accepts a position when some rotation or reflected
//! rotation of it lies in a base set.

mod catalog;
mod id;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Position, Ruleset, RulesetKind, Symmetry};

pub use id::PredicateId;

/// Membership verdict. `witness` is the first dihedral image (in scan order)
/// that satisfies the base set; only cyclic predicates report one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateResult {
    pub is_p: bool,
    pub witness: Option<Symmetry>,
}

/// Scans rotations `0..m`, then reflected rotations, for an image accepted by `base`.
pub fn cyclic_closure(base: impl Fn(&[u64]) -> bool, pos: &[u64]) -> PredicateResult {
    let mut image = vec![0; pos.len()];
    for sym in Symmetry::all(pos.len()) {
        sym.apply_into(pos, &mut image);
        if base(&image) {
            return PredicateResult {
                is_p: true,
                witness: Some(sym),
            };
        }
    }
    PredicateResult {
        is_p: false,
        witness: None,
    }
}

type Test = Arc<dyn Fn(&[u64]) -> bool + Send + Sync>;

/// One named condition of a base set.
#[derive(Clone)]
pub struct Clause {
    name: String,
    test: Test,
}

impl Clause {
    pub fn new(name: impl Into<String>, test: impl Fn(&[u64]) -> bool + Send + Sync + 'static) -> Self {
        Clause {
            name: name.into(),
            test: Arc::new(test),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn holds(&self, n: &[u64]) -> bool {
        (self.test)(n)
    }

    fn negated(&self) -> Clause {
        let test = self.test.clone();
        Clause {
            name: format!("not({})", self.name),
            test: Arc::new(move |n| !test(n)),
        }
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A single-clause edit used to check that the verification harness notices
/// a wrong predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mutation {
    Drop { disjunct: usize, clause: usize },
    Negate { disjunct: usize, clause: usize },
}

/// A base set written in disjunctive normal form over named clauses, plus
/// whether membership is tested on the position itself or on its whole
/// dihedral orbit.
#[derive(Clone, Debug)]
pub struct Predicate {
    id: PredicateId,
    cyclic: bool,
    disjuncts: Vec<Vec<Clause>>,
    label: Option<String>,
}

impl Predicate {
    pub fn new(id: PredicateId) -> Result<Self> {
        id.validate()?;
        let (cyclic, disjuncts) = catalog::definition(id);
        Ok(Predicate {
            id,
            cyclic,
            disjuncts,
            label: None,
        })
    }

    /// A hand-built predicate reported under `id` with a `label`, for
    /// exercising the harness.
    pub fn custom(id: PredicateId, label: impl Into<String>, cyclic: bool, disjuncts: Vec<Vec<Clause>>) -> Self {
        Predicate {
            id,
            cyclic,
            disjuncts,
            label: Some(label.into()),
        }
    }

    pub fn id(&self) -> PredicateId {
        self.id
    }

    /// Stable name, with the mutation spelled out for mutated predicates.
    pub fn name(&self) -> String {
        match &self.label {
            Some(l) => format!("{}[{l}]", self.id),
            None => self.id.to_string(),
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn disjuncts(&self) -> &[Vec<Clause>] {
        &self.disjuncts
    }

    pub fn arity(&self) -> Option<usize> {
        self.id.arity()
    }

    /// Membership of one specific image in the base set.
    pub fn base(&self, n: &[u64]) -> bool {
        self.disjuncts.iter().any(|d| d.iter().all(|c| c.holds(n)))
    }

    pub fn eval(&self, pos: &[u64]) -> Result<PredicateResult> {
        if let Some(a) = self.arity() {
            if pos.len() != a {
                return Err(Error::Arity {
                    expected: a,
                    found: pos.len(),
                });
            }
        }
        Ok(if self.cyclic {
            cyclic_closure(|n| self.base(n), pos)
        } else {
            PredicateResult {
                is_p: self.base(pos),
                witness: None,
            }
        })
    }

    /// Every single-clause drop and negation.
    pub fn mutations(&self) -> Vec<Mutation> {
        let mut out = Vec::new();
        for (d, clauses) in self.disjuncts.iter().enumerate() {
            for c in 0..clauses.len() {
                out.push(Mutation::Drop { disjunct: d, clause: c });
                out.push(Mutation::Negate { disjunct: d, clause: c });
            }
        }
        out
    }

    pub fn mutated(&self, mutation: Mutation) -> Result<Predicate> {
        let mut disjuncts = self.disjuncts.clone();
        let (d, c) = match mutation {
            Mutation::Drop { disjunct, clause } | Mutation::Negate { disjunct, clause } => {
                (disjunct, clause)
            }
        };
        let target = disjuncts
            .get_mut(d)
            .filter(|cl| c < cl.len())
            .ok_or_else(|| Error::InvalidPredicate(format!("{} has no clause {d}.{c}", self.id)))?;
        let label = match mutation {
            Mutation::Drop { .. } => format!("drop {}", target.remove(c).name),
            Mutation::Negate { .. } => {
                target[c] = target[c].negated();
                format!("negate {}", self.disjuncts[d][c].name)
            }
        };
        Ok(Predicate {
            id: self.id,
            cyclic: self.cyclic,
            disjuncts,
            label: Some(label),
        })
    }
}

pub fn eval_predicate(id: PredicateId, pos: &Position) -> Result<PredicateResult> {
    Predicate::new(id)?.eval(pos)
}

/// The predicate that directly decides this exact ruleset, if one exists.
pub fn predicate_for(ruleset: &Ruleset) -> Option<PredicateId> {
    use PredicateId::*;
    let m = ruleset.m();
    match ruleset.kind() {
        RulesetKind::Moore { k: 1 } => Some(NimXor),
        RulesetKind::Moore { k } => Some(Moore(*k)),
        RulesetKind::Simplicial => None,
        RulesetKind::Ecn { steps, k } => {
            let direct = match (m, steps.as_slice(), *k) {
                (4, [1], 2) => Some(Cn42),
                (5, [1], 2) => Some(Cn52),
                (5, [1], 3) => Some(Cn53),
                (6, [1], 3) => Some(Cn63),
                (6, [1], 4) => Some(Cn64),
                (7, [1], 4) => Some(Cn74),
                (8, [1], 6) => Some(Cn86),
                (6, [1, 2], 2) => Some(Ecn6122),
                (6, [1, 2], 3) => Some(Ecn6123),
                (6, [1, 2], 4) => Some(Ecn6124),
                (6, [1, 3], 2) => Some(Ecn6132),
                (6, [2, 3], 3) => Some(Ecn6233),
                (7, [1, 2], 4) => Some(Ecn7124),
                (7, [1, 2], 5) => Some(Ecn7125),
                (8, [1, 3], 2) => Some(Ecn8132),
                (8, [1, 3], 4) => Some(Ecn8134),
                (8, [1, 3], 6) => Some(Ecn8136),
                (8, [1, 2, 3], 6) => Some(Ecn81236),
                _ => None,
            };
            direct.or_else(|| {
                [GenOddPrime, GenEvenK2, GenPow2]
                    .into_iter()
                    .flat_map(|family| (2..=16).map(family))
                    .filter(|id| id.validate().is_ok())
                    .find(|id| id.ruleset().as_ref() == Some(ruleset))
            })
        }
    }
}
