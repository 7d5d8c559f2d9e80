use super::*;
use crate::formulas::{Clause, Mutation};

fn r(s: &str) -> Ruleset {
    s.parse().unwrap()
}

#[test]
fn ecn6123_passes_at_bound_5() {
    let rep = verify_predicate(&r("ECN(6_{1,2},3)"), PredicateId::Ecn6123, 5);
    assert_eq!(rep.status, Status::Pass);
    assert_eq!(rep.positions_checked, 46656);
    assert!(rep.mismatches.is_empty());
}

#[test]
fn terminal_only_box() {
    let rep = verify_predicate(&r("ECN(4_{1},2)"), PredicateId::Cn42, 0);
    assert_eq!((rep.status, rep.positions_checked), (Status::Pass, 1));
}

#[test]
fn always_p_fails() {
    let always = Predicate::custom(PredicateId::Ecn6123, "always P", false, vec![vec![]]);
    let rep = verify_with(&r("ECN(6_{1,2},3)"), &always, VerifyOptions::new(1));
    assert_eq!(rep.status, Status::Fail);
    assert_eq!(rep.check, "ECN6123[always P]");
    let first = Position::new(vec![1, 0, 0, 0, 0, 0]);
    let m = rep.mismatches.iter().find(|m| m.position == first).unwrap();
    assert_eq!((m.claim, m.oracle), (Outcome::P, Outcome::N));
    assert_eq!(rep.mismatch_count as usize, 64 - 8);
}

#[test]
fn mismatch_cap_keeps_the_count() {
    let never = Predicate::custom(PredicateId::Cn42, "never P", false, vec![]);
    let mut opts = VerifyOptions::new(3);
    opts.mismatch_cap = 5;
    let rep = verify_with(&r("ECN(4_{1},2)"), &never, opts);
    assert_eq!(rep.mismatches.len(), 5);
    assert_eq!(rep.mismatch_count, 16);
}

#[test]
fn orbit_mode_agrees_with_raw() {
    for (rule, id) in [("ECN(6_{2,3},3)", PredicateId::Ecn6233), ("ECN(7_{1},4)", PredicateId::Cn74)] {
        let pred = Predicate::new(id).unwrap();
        let raw = verify_with(&r(rule), &pred, VerifyOptions::new(2));
        let orbit = verify_with(&r(rule), &pred, VerifyOptions::new(2).mode(SweepMode::Orbit));
        assert_eq!((raw.status, orbit.status), (Status::Pass, Status::Pass));
        assert!(orbit.positions_checked < raw.positions_checked);
        let bad = pred.mutated(Mutation::Negate { disjunct: 0, clause: 0 }).unwrap();
        let raw = verify_with(&r(rule), &bad, VerifyOptions::new(2));
        let orbit = verify_with(&r(rule), &bad, VerifyOptions::new(2).mode(SweepMode::Orbit));
        assert_eq!((raw.status, orbit.status), (Status::Fail, Status::Fail));
    }
}

#[test]
fn capacity_gives_incomplete() {
    let mut opts = VerifyOptions::new(5);
    opts.budget = Budget::new(100);
    let rep = verify_with(&r("ECN(6_{1,2},3)"), &Predicate::new(PredicateId::Ecn6123).unwrap(), opts);
    assert_eq!(rep.status, Status::Incomplete);
    assert!(rep.note.unwrap().contains("budget"));
}

#[test]
fn reports_are_deterministic() {
    let a = verify_reduction(&r("ECN(8_{2},2)"), VerifyOptions::new(2));
    let b = verify_reduction(&r("ECN(8_{2},2)"), VerifyOptions::new(2));
    assert_eq!(a.status, Status::Pass);
    assert_eq!(export_report(&[a.untimed()], ReportFormat::Json), export_report(&[b.untimed()], ReportFormat::Json));
}

#[test]
fn export_formats() {
    let pass = verify_predicate(&r("ECN(4_{1},2)"), PredicateId::Cn42, 1);
    let text = export_report(std::slice::from_ref(&pass), ReportFormat::Json);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json[0]["status"], "PASS");
    assert_eq!(json[0]["ruleset"], "ECN(4_{1},2)");
    assert!(text.find("\"ruleset\"").unwrap() < text.find("\"status\"").unwrap());

    let wrong = Predicate::custom(
        PredicateId::Ecn6123,
        "n0 is free",
        false,
        vec![vec![Clause::new("n1=n4", |n| n[1] == n[4]), Clause::new("n2=n5", |n| n[2] == n[5])]],
    );
    let fail = verify_with(&r("ECN(6_{1,2},3)"), &wrong, VerifyOptions::new(1));
    let csv = export_report(&[fail], ReportFormat::Csv);
    assert!(csv.contains("\"0,0,0,1,0,0\""), "{csv}");
    assert!(csv.lines().next().unwrap().starts_with("ruleset,check,"));

    assert_eq!(export_report(&[], ReportFormat::Json), "[]");
    assert_eq!(export_report(&[], ReportFormat::Csv).lines().count(), 1);
    assert_eq!("CSV".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
}

#[test]
fn generalization_instances_hold() {
    for (g, s) in suite::GENERALIZATIONS {
        let rep = verify_generalization(g, s, 2).unwrap();
        assert_eq!(rep.status, Status::Pass, "{}", rep.check);
    }
}

#[test]
fn suite_at_bound_zero_passes_and_covers_every_row() {
    let opts = SuiteOptions {
        bound: Some(0),
        ..SuiteOptions::default()
    };
    let reports = verify_all(&opts).unwrap();
    assert_eq!(overall_status(&reports), Status::Pass);
    let rows: Vec<&VerificationReport> = reports.iter().filter(|r| r.coverage != Some(Coverage::Generalization)).collect();
    assert_eq!(rows.len(), crate::reductions::catalog(8).unwrap().len());
    let mut names: Vec<String> = rows.iter().map(|r| r.ruleset.to_string()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), rows.len());
    assert!(rows.iter().any(|r| r.coverage == Some(Coverage::UnsolvedSkipped)));
}

#[test]
fn suite_with_one_negated_predicate_has_one_failure() {
    let bad = Predicate::new(PredicateId::Ecn6132)
        .unwrap()
        .mutated(Mutation::Negate { disjunct: 0, clause: 1 })
        .unwrap();
    let opts = SuiteOptions {
        bound: Some(2),
        max_m: 6,
        substitutes: vec![bad],
        ..SuiteOptions::default()
    };
    let reports = verify_all(&opts).unwrap();
    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| r.status == Status::Fail).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].ruleset.to_string(), "ECN(6_{1,3},2)");
    assert_eq!(overall_status(&reports), Status::Fail);
}
