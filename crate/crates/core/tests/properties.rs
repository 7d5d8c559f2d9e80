use ecn_core::reductions::ecn_rulesets;
use ecn_core::solver::MemoSolver;
use ecn_core::{
    apply_move, canonical, dihedral_images, find_isomorphism, Budget, Outcome, Position, Predicate, PredicateId,
    Ruleset,
};
use proptest::prelude::*;

fn ruleset() -> impl Strategy<Value = Ruleset> {
    (4usize..=8).prop_flat_map(|m| {
        let rules = ecn_rulesets(m);
        (0..rules.len()).prop_map(move |i| rules[i].clone())
    })
}

fn ruleset_and_position(max: u64) -> impl Strategy<Value = (Ruleset, Position)> {
    ruleset().prop_flat_map(move |r| {
        let m = r.m();
        (Just(r), proptest::collection::vec(0..=max, m).prop_map(Position::new))
    })
}

proptest! {
    #[test]
    fn text_forms_round_trip((r, p) in ruleset_and_position(1000)) {
        prop_assert_eq!(r.to_string().parse::<Ruleset>().unwrap(), r);
        prop_assert_eq!(p.to_string().parse::<Position>().unwrap(), p);
    }

    #[test]
    fn every_legal_move_lands_inside((r, p) in ruleset_and_position(2)) {
        for mv in r.legal_moves(&p).unwrap() {
            r.check_move(&p, &mv).unwrap();
            let next = apply_move(&p, &mv).unwrap();
            prop_assert!(next.total() < p.total());
            prop_assert!(r.successors(&p).unwrap().contains(&next));
        }
    }

    #[test]
    fn outcome_is_orbit_invariant((r, p) in ruleset_and_position(2)) {
        let mut memo = MemoSolver::new(&r, Budget::DEFAULT);
        let g = memo.grundy(&p).unwrap();
        let o = Outcome::from_grundy(g);
        for img in dihedral_images(&p) {
            prop_assert_eq!(Outcome::from_grundy(memo.grundy(&img).unwrap()), o);
        }
        prop_assert_eq!(canonical(&canonical(&p)), canonical(&p));
    }

    #[test]
    fn cyclic_predicates_are_orbit_invariant(i in 0usize..18, seed in proptest::collection::vec(0u64..6, 8)) {
        let id = PredicateId::table_predicates()[i];
        let pred = Predicate::new(id).unwrap();
        let pos = Position::new(seed[..pred.arity().unwrap()].to_vec());
        if pred.is_cyclic() {
            let v = pred.eval(&pos).unwrap().is_p;
            for img in dihedral_images(&pos) {
                prop_assert_eq!(pred.eval(&img).unwrap().is_p, v);
            }
        }
    }

    #[test]
    fn isomorphisms_carry_moves(a in ruleset(), b in ruleset(), piles in proptest::collection::vec(0u64..3, 8)) {
        if let Some(map) = find_isomorphism(&a, &b) {
            let p = Position::new(piles[..a.m()].to_vec());
            let mut succ_a: Vec<Position> =
                a.successors(&p).unwrap().iter().map(|q| Position::new(map.apply(q))).collect();
            succ_a.sort();
            let image = Position::new(map.apply(&p));
            prop_assert_eq!(succ_a, b.successors(&image).unwrap());
        }
    }
}
