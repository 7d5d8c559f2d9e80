//! Exhaustive checks of predicates and reductions against the oracle.

mod report;
pub mod suite;

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{Predicate, PredicateId};
use crate::game::{canonical, Position, Ruleset};
use crate::reductions::Resolver;
use crate::solver::{BoxShape, Budget, Outcome, OutcomeTable};

pub use report::{export_report, ReportFormat};
pub use suite::{default_bound, overall_status, verify_all, SuiteOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// The sweep could not run to completion (for instance the table did
    /// not fit the budget).
    Incomplete,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Incomplete => "INCOMPLETE",
        })
    }
}

/// Which positions a sweep visits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    /// Every position of the box.
    #[default]
    Raw,
    /// One canonical representative per dihedral orbit.
    Orbit,
}

/// How a suite row was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coverage {
    Verified,
    Reduced,
    UnsolvedSkipped,
    Generalization,
}

impl fmt::Display for Coverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coverage::Verified => "verified",
            Coverage::Reduced => "reduced",
            Coverage::UnsolvedSkipped => "unsolved-skipped",
            Coverage::Generalization => "generalization",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub position: Position,
    pub claim: Outcome,
    pub oracle: Outcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ruleset: Ruleset,
    /// Predicate name or resolution tag under test.
    pub check: String,
    pub coverage: Option<Coverage>,
    pub bound: u64,
    pub mode: SweepMode,
    pub positions_checked: u64,
    pub mismatch_count: u64,
    /// At most `mismatch_cap` entries, in sweep order.
    pub mismatches: Vec<Mismatch>,
    pub status: Status,
    pub note: Option<String>,
    pub wall_time_s: f64,
}

impl VerificationReport {
    fn empty(ruleset: &Ruleset, check: String, opts: &VerifyOptions) -> Self {
        VerificationReport {
            ruleset: ruleset.clone(),
            check,
            coverage: None,
            bound: opts.bound,
            mode: opts.mode,
            positions_checked: 0,
            mismatch_count: 0,
            mismatches: Vec::new(),
            status: Status::Pass,
            note: None,
            wall_time_s: 0.0,
        }
    }

    fn incomplete(ruleset: &Ruleset, check: String, opts: &VerifyOptions, err: &Error) -> Self {
        VerificationReport {
            status: Status::Incomplete,
            note: Some(err.to_string()),
            ..Self::empty(ruleset, check, opts)
        }
    }

    pub fn with_coverage(mut self, c: Coverage) -> Self {
        self.coverage = Some(c);
        self
    }

    /// Same report with the timing zeroed, for determinism comparisons.
    pub fn untimed(&self) -> Self {
        VerificationReport {
            wall_time_s: 0.0,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub bound: u64,
    pub mode: SweepMode,
    pub mismatch_cap: usize,
    pub budget: Budget,
}

impl VerifyOptions {
    pub const DEFAULT_MISMATCH_CAP: usize = 100;

    pub fn new(bound: u64) -> Self {
        VerifyOptions {
            bound,
            mode: SweepMode::Raw,
            mismatch_cap: Self::DEFAULT_MISMATCH_CAP,
            budget: Budget::DEFAULT,
        }
    }

    pub fn mode(self, mode: SweepMode) -> Self {
        VerifyOptions { mode, ..self }
    }
}

/// Oracle outcomes for every position with heights at most `bound`.
pub fn oracle_table(ruleset: &Ruleset, bound: u64, budget: Budget) -> Result<OutcomeTable> {
    OutcomeTable::build(ruleset, BoxShape::uniform(ruleset.m(), bound, budget)?)
}

/// Compares `claim` with a prebuilt oracle table. Positions are visited in
/// index (lexicographic) order; in orbit mode only canonical representatives
/// are visited.
pub fn sweep(
    table: &OutcomeTable,
    check: impl Into<String>,
    mode: SweepMode,
    mismatch_cap: usize,
    claim: impl Fn(&[u64]) -> Result<Outcome> + Sync,
) -> VerificationReport {
    let start = Instant::now();
    let shape = table.shape();
    let ruleset = table.ruleset();
    let mode = if ruleset.is_dihedral_invariant() { mode } else { SweepMode::Raw };
    let opts = VerifyOptions {
        bound: shape.uniform_bound().unwrap_or_else(|| shape.caps().iter().copied().max().unwrap_or(0)),
        mode,
        mismatch_cap,
        budget: Budget::DEFAULT,
    };
    let mut report = VerificationReport::empty(ruleset, check.into(), &opts);

    // Per position: None when skipped, Some(None) on agreement.
    let results: Vec<Result<Option<Option<Mismatch>>>> = (0..shape.len())
        .into_par_iter()
        .map_init(
            || vec![0u64; shape.m()],
            |piles, i| {
                shape.decode_into(i, piles);
                if mode == SweepMode::Orbit && canonical(&Position::new(piles.clone())).piles() != &piles[..] {
                    return Ok(None);
                }
                let claimed = claim(piles)?;
                let oracle = table.at(i);
                Ok(Some((claimed != oracle).then(|| Mismatch {
                    position: Position::new(piles.clone()),
                    claim: claimed,
                    oracle,
                })))
            },
        )
        .collect();

    for r in results {
        match r {
            Ok(None) => {}
            Ok(Some(m)) => {
                report.positions_checked += 1;
                if let Some(m) = m {
                    report.mismatch_count += 1;
                    if report.mismatches.len() < mismatch_cap {
                        report.mismatches.push(m);
                    }
                }
            }
            Err(e) => {
                report.status = Status::Incomplete;
                report.note = Some(e.to_string());
                break;
            }
        }
    }
    if report.status != Status::Incomplete && report.mismatch_count > 0 {
        report.status = Status::Fail;
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    report
}

fn predicate_claim(pred: &Predicate) -> impl Fn(&[u64]) -> Result<Outcome> + Sync + '_ {
    move |n| Ok(if pred.eval(n)?.is_p { Outcome::P } else { Outcome::N })
}

/// Predicate against the oracle on every position with heights at most `bound`.
pub fn verify_predicate(ruleset: &Ruleset, id: PredicateId, bound: u64) -> VerificationReport {
    match Predicate::new(id) {
        Ok(pred) => verify_with(ruleset, &pred, VerifyOptions::new(bound)),
        Err(e) => VerificationReport::incomplete(ruleset, id.to_string(), &VerifyOptions::new(bound), &e),
    }
}

/// Like [`verify_predicate`] for an arbitrary (possibly mutated) predicate.
pub fn verify_with(ruleset: &Ruleset, pred: &Predicate, opts: VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let mut report = match oracle_table(ruleset, opts.bound, opts.budget) {
        Ok(table) => sweep(&table, pred.name(), opts.mode, opts.mismatch_cap, predicate_claim(pred)),
        Err(e) => VerificationReport::incomplete(ruleset, pred.name(), &opts, &e),
    };
    report.wall_time_s = start.elapsed().as_secs_f64();
    report
}

/// The full reduction chain (`resolve_outcome`) against the oracle.
pub fn verify_reduction(ruleset: &Ruleset, opts: VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let check = match crate::reductions::classify(ruleset) {
        Ok(r) => r.to_string(),
        Err(e) => return VerificationReport::incomplete(ruleset, "classify".into(), &opts, &e),
    };
    let mut report = match oracle_table(ruleset, opts.bound, opts.budget) {
        Ok(table) => {
            // Per-thread resolvers keep their caches across positions.
            let budget = opts.budget;
            let resolvers = per_thread::ThreadResolvers::new(budget);
            sweep(&table, check, opts.mode, opts.mismatch_cap, |n| {
                resolvers.with(|r| r.outcome(ruleset, &Position::new(n.to_vec())).map(|(o, _)| o))
            })
        }
        Err(e) => VerificationReport::incomplete(ruleset, check, &opts, &e),
    };
    report.wall_time_s = start.elapsed().as_secs_f64();
    report
}

/// Set equality of two predicates over every position with heights at most
/// `bound`; `claim` is the first predicate, `oracle` the second.
pub fn verify_generalization(general: PredicateId, specific: PredicateId, bound: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let g = Predicate::new(general)?;
    let s = Predicate::new(specific)?;
    let ruleset = general
        .ruleset()
        .ok_or_else(|| Error::InvalidPredicate(format!("{general} has no fixed ruleset")))?;
    let opts = VerifyOptions::new(bound);
    let mut report = VerificationReport::empty(&ruleset, format!("{general}={specific}"), &opts)
        .with_coverage(Coverage::Generalization);
    let shape = BoxShape::uniform(ruleset.m(), bound, opts.budget)?;
    let outcome = |p: bool| if p { Outcome::P } else { Outcome::N };
    let mut err = None;
    shape.for_each(|_, n| {
        if err.is_some() {
            return;
        }
        match (g.eval(n), s.eval(n)) {
            (Ok(a), Ok(b)) => {
                report.positions_checked += 1;
                if a.is_p != b.is_p {
                    report.mismatch_count += 1;
                    if report.mismatches.len() < opts.mismatch_cap {
                        report.mismatches.push(Mismatch {
                            position: Position::new(n.to_vec()),
                            claim: outcome(a.is_p),
                            oracle: outcome(b.is_p),
                        });
                    }
                }
            }
            (Err(e), _) | (_, Err(e)) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    if report.mismatch_count > 0 {
        report.status = Status::Fail;
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

mod per_thread {
    use std::cell::RefCell;

    use thread_local::ThreadLocal;

    use super::{Budget, Resolver};

    pub(super) struct ThreadResolvers {
        budget: Budget,
        slots: ThreadLocal<RefCell<Resolver>>,
    }

    impl ThreadResolvers {
        pub(super) fn new(budget: Budget) -> Self {
            ThreadResolvers {
                budget,
                slots: ThreadLocal::new(),
            }
        }

        pub(super) fn with<T>(&self, f: impl FnOnce(&mut Resolver) -> T) -> T {
            let cell = self.slots.get_or(|| RefCell::new(Resolver::new(self.budget)));
            f(&mut cell.borrow_mut())
        }
    }
}

#[cfg(test)]
mod tests;
