use std::collections::BTreeMap;

use super::{
    verify_generalization, verify_reduction, verify_with, Coverage, SweepMode, VerificationReport, VerifyOptions,
    Status,
};
use crate::error::Result;
use crate::formulas::{Predicate, PredicateId};
use crate::game::Ruleset;
use crate::reductions::{catalog, Resolution};
use crate::solver::Budget;

/// Generalization instances checked by the suite, as (family member, table predicate).
pub const GENERALIZATIONS: [(PredicateId, PredicateId); 7] = [
    (PredicateId::GenOddPrime(2), PredicateId::Cn53),
    (PredicateId::GenOddPrime(3), PredicateId::Ecn7125),
    (PredicateId::GenEvenK2(2), PredicateId::Cn42),
    (PredicateId::GenEvenK2(3), PredicateId::Ecn6132),
    (PredicateId::GenEvenK2(4), PredicateId::Ecn8132),
    (PredicateId::GenPow2(2), PredicateId::Cn42),
    (PredicateId::GenPow2(3), PredicateId::Ecn8136),
];

const GENERALIZATION_BOUND: u64 = 3;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Replaces every default bound.
    pub bound: Option<u64>,
    /// Per-ruleset bounds, keyed by the ruleset's text form.
    pub overrides: BTreeMap<String, u64>,
    pub max_m: usize,
    /// Used instead of the registered predicate with the same id.
    pub substitutes: Vec<Predicate>,
    pub mode: SweepMode,
    pub mismatch_cap: usize,
    pub budget: Budget,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            bound: None,
            overrides: BTreeMap::new(),
            max_m: 8,
            substitutes: Vec::new(),
            mode: SweepMode::Raw,
            mismatch_cap: VerifyOptions::DEFAULT_MISMATCH_CAP,
            budget: Budget::DEFAULT,
        }
    }
}

/// Default sweep bound: formula rows at 5/4/3 for m <= 6 / 7 / 8, reduction
/// audits at 3 for m <= 6 and 2 beyond.
pub fn default_bound(ruleset: &Ruleset, coverage: Coverage) -> u64 {
    let m = ruleset.m();
    match coverage {
        Coverage::Verified => match m {
            ..=6 => 5,
            7 => 4,
            _ => 3,
        },
        Coverage::Generalization => GENERALIZATION_BOUND,
        _ if m <= 6 => 3,
        _ => 2,
    }
}

impl SuiteOptions {
    fn bound_for(&self, ruleset: &Ruleset, coverage: Coverage) -> u64 {
        self.overrides
            .get(&ruleset.to_string())
            .copied()
            .or(self.bound)
            .unwrap_or_else(|| default_bound(ruleset, coverage))
    }

    fn verify_options(&self, bound: u64) -> VerifyOptions {
        VerifyOptions {
            bound,
            mode: self.mode,
            mismatch_cap: self.mismatch_cap,
            budget: self.budget,
        }
    }
}

/// One report per tabulated ECN triple (4 <= m <= `max_m`), in catalog
/// order, followed by the generalization instances.
pub fn verify_all(opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    for (ruleset, resolution) in catalog(opts.max_m)? {
        let report = match &resolution {
            Resolution::Predicate(id) => {
                let bound = opts.bound_for(&ruleset, Coverage::Verified);
                let pred = match opts.substitutes.iter().find(|p| p.id() == *id) {
                    Some(p) => p.clone(),
                    None => Predicate::new(*id)?,
                };
                verify_with(&ruleset, &pred, opts.verify_options(bound)).with_coverage(Coverage::Verified)
            }
            Resolution::Unsolved => {
                let o = opts.verify_options(opts.bound_for(&ruleset, Coverage::UnsolvedSkipped));
                VerificationReport {
                    note: Some("no closed form; decided by the oracle only".into()),
                    ..VerificationReport::empty(&ruleset, resolution.to_string(), &o)
                }
                .with_coverage(Coverage::UnsolvedSkipped)
            }
            _ => {
                let bound = opts.bound_for(&ruleset, Coverage::Reduced);
                verify_reduction(&ruleset, opts.verify_options(bound)).with_coverage(Coverage::Reduced)
            }
        };
        reports.push(report);
    }
    for (general, specific) in GENERALIZATIONS {
        let bound = opts.bound.unwrap_or(GENERALIZATION_BOUND);
        reports.push(verify_generalization(general, specific, bound)?);
    }
    Ok(reports)
}

/// FAIL if any report failed, else INCOMPLETE if any did not finish, else PASS.
pub fn overall_status(reports: &[VerificationReport]) -> Status {
    if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if reports.iter().any(|r| r.status == Status::Incomplete) {
        Status::Incomplete
    } else {
        Status::Pass
    }
}
