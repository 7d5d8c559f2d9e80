use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{classify, Resolution};
use crate::error::{Error, Result};
use crate::formulas::{Predicate, PredicateId};
use crate::game::{Move, Position, Ruleset, RulesetKind};
use crate::solver::{box_size, Budget, MemoSolver, Outcome};

/// The reduction steps taken to decide a position, outermost first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Method(Vec<String>);

impl Method {
    pub fn steps(&self) -> &[String] {
        &self.0
    }

    fn push(&mut self, step: impl Into<String>) {
        self.0.push(step.into());
    }

    /// Whether the answer came from brute force.
    pub fn is_oracle(&self) -> bool {
        self.0.iter().any(|s| s.starts_with("oracle"))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(" > "))
    }
}

/// Follows resolution chains, caching classifications, predicates and the
/// memo solvers used for brute-forced rulesets and sum components.
pub struct Resolver {
    budget: Budget,
    resolutions: HashMap<Ruleset, Resolution>,
    predicates: HashMap<PredicateId, Predicate>,
    solvers: HashMap<Ruleset, MemoSolver>,
}

impl Resolver {
    pub fn new(budget: Budget) -> Self {
        Resolver {
            budget,
            resolutions: HashMap::new(),
            predicates: HashMap::new(),
            solvers: HashMap::new(),
        }
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn resolution(&mut self, ruleset: &Ruleset) -> Result<Resolution> {
        if let Some(r) = self.resolutions.get(ruleset) {
            return Ok(r.clone());
        }
        let r = classify(ruleset)?;
        self.resolutions.insert(ruleset.clone(), r.clone());
        Ok(r)
    }

    pub fn outcome(&mut self, ruleset: &Ruleset, pos: &Position) -> Result<(Outcome, Method)> {
        ruleset.check_position(pos)?;
        let mut method = Method::default();
        if pos.is_terminal() {
            method.push("direct");
            return Ok((Outcome::P, method));
        }
        let o = self.walk(ruleset, pos.piles().to_vec(), &mut method)?;
        Ok((o, method))
    }

    fn predicate(&mut self, id: PredicateId) -> Result<&Predicate> {
        match self.predicates.entry(id) {
            Entry::Occupied(e) => Ok(e.into_mut()),
            Entry::Vacant(e) => Ok(e.insert(Predicate::new(id)?)),
        }
    }

    fn walk(&mut self, ruleset: &Ruleset, piles: Vec<u64>, method: &mut Method) -> Result<Outcome> {
        match self.resolution(ruleset)? {
            Resolution::Predicate(id) => {
                method.push(id.to_string());
                let p = self.predicate(id)?.eval(&piles)?.is_p;
                Ok(if p { Outcome::P } else { Outcome::N })
            }
            Resolution::IsomorphicTo { target, map } => {
                method.push(format!("isomorphic to {target} via {map}"));
                self.walk(&target, map.apply(&piles), method)
            }
            Resolution::PileMerge { groups, target } => {
                method.push(format!("merged into {target}"));
                let merged = groups.iter().map(|g| g.iter().map(|&i| piles[i]).sum()).collect();
                self.walk(&target, merged, method)
            }
            Resolution::DisjunctiveSum { components } => {
                let names: Vec<String> = components.iter().map(|c| c.ruleset.to_string()).collect();
                method.push(format!("disjunctive sum of {}", names.join(" + ")));
                let mut x = 0;
                for c in &components {
                    let sub = Position::new(c.piles.iter().map(|&i| piles[i]).collect());
                    x ^= self.grundy(&c.ruleset, &sub)?;
                }
                Ok(Outcome::from_grundy(x))
            }
            Resolution::MooreEquivalent { m, k } => {
                let target = Ruleset::moore(m, k)?;
                method.push(format!("isomorphic to {target}"));
                self.walk(&target, piles, method)
            }
            Resolution::SinglePile => {
                method.push("single pile");
                Ok(if piles.iter().all(|&n| n == 0) { Outcome::P } else { Outcome::N })
            }
            Resolution::Unsolved => {
                let bound = piles.iter().copied().max().unwrap_or(0);
                method.push(format!("oracle(bound={bound})"));
                self.oracle(ruleset, &Position::new(piles)).map(Outcome::from_grundy)
            }
        }
    }

    /// Brute-force Grundy value of a position of a ruleset with no closed
    /// form. Refuses positions whose box exceeds the budget.
    fn oracle(&mut self, ruleset: &Ruleset, pos: &Position) -> Result<u32> {
        let available = self.budget.max_entries;
        let unsolved = |required| Error::UnsolvedBudget {
            ruleset: ruleset.to_string(),
            required,
            available,
        };
        let required = box_size(pos);
        if required > available {
            return Err(unsolved(required));
        }
        self.memo_grundy(ruleset, pos).map_err(|e| match e {
            Error::Capacity { required, .. } => unsolved(required),
            e => e,
        })
    }

    fn memo_grundy(&mut self, ruleset: &Ruleset, pos: &Position) -> Result<u32> {
        let budget = self.budget;
        self.solvers
            .entry(ruleset.clone())
            .or_insert_with(|| MemoSolver::new(ruleset, budget))
            .grundy(pos)
    }

    /// Grundy value; plain nim is answered by XOR, everything else by the
    /// memo solver within the budget.
    pub fn grundy(&mut self, ruleset: &Ruleset, pos: &Position) -> Result<u32> {
        ruleset.check_position(pos)?;
        if let RulesetKind::Moore { k: 1 } = ruleset.kind() {
            let x = pos.iter().fold(0u64, |a, &n| a ^ n);
            return u32::try_from(x).map_err(|_| Error::Capacity {
                required: x as u128,
                available: u32::MAX as u128,
            });
        }
        self.memo_grundy(ruleset, pos)
    }

    /// Move to the lexicographically smallest P successor, or `None` at a P-position.
    pub fn winning_move(&mut self, ruleset: &Ruleset, pos: &Position) -> Result<Option<Move>> {
        if self.outcome(ruleset, pos)?.0.is_p() {
            return Ok(None);
        }
        for next in ruleset.successors(pos)? {
            if self.outcome(ruleset, &next)?.0.is_p() {
                return Ok(Some(Move::between(pos, &next)?));
            }
        }
        Err(Error::InvalidPredicate(format!(
            "{ruleset} at {pos} resolves to N but no option resolves to P"
        )))
    }
}

pub fn resolve_outcome(ruleset: &Ruleset, pos: &Position, budget: Budget) -> Result<(Outcome, Method)> {
    Resolver::new(budget).outcome(ruleset, pos)
}
