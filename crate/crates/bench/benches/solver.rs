use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ecn_core::formulas::Predicate;
use ecn_core::solver::MemoSolver;
use ecn_core::verify::{verify_with, VerifyOptions};
use ecn_core::{Budget, GrundyTable, OutcomeTable, Position, PredicateId, Ruleset};

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("table");
    g.sample_size(10);
    for (rule, bound) in [("ECN(6_{1,2},3)", 4), ("ECN(7_{1,2},5)", 3), ("ECN(8_{1,3},4)", 3)] {
        let r: Ruleset = rule.parse().unwrap();
        g.bench_with_input(BenchmarkId::new("outcome", rule), &bound, |b, &bound| {
            b.iter(|| OutcomeTable::uniform(&r, bound, Budget::DEFAULT).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("grundy", rule), &bound, |b, &bound| {
            b.iter(|| GrundyTable::uniform(&r, bound, Budget::DEFAULT).unwrap())
        });
    }
    g.finish();
}

fn predicates(c: &mut Criterion) {
    let p = Predicate::new(PredicateId::Cn74).unwrap();
    let pos = [3u64, 1, 4, 1, 5, 2, 6];
    c.bench_function("predicate/CN74 eval", |b| b.iter(|| p.eval(black_box(&pos)).unwrap()));
    let r: Ruleset = "ECN(6_{1,2},3)".parse().unwrap();
    let p = Predicate::new(PredicateId::Ecn6123).unwrap();
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("ECN6123 B=4", |b| b.iter(|| verify_with(&r, &p, VerifyOptions::new(4))));
    g.finish();
}

fn memo(c: &mut Criterion) {
    let r: Ruleset = "ECN(6_{1},2)".parse().unwrap();
    let pos = Position::new(vec![3, 2, 3, 1, 2, 3]);
    let mut g = c.benchmark_group("memo");
    g.sample_size(10);
    g.bench_function("ECN(6_{1},2) cold", |b| {
        b.iter(|| MemoSolver::new(&r, Budget::DEFAULT).grundy(&pos).unwrap())
    });
    g.finish();
}

criterion_group!(benches, tables, predicates, memo);
criterion_main!(benches);
