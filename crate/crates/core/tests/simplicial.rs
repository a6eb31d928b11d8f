mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use kanforge::simplicial::{
    circle, cycle, delta, find_isomorphism, product, quotient_by_free_action, quotient_by_subcomplex, standard,
    torus, validate, validate_set, Cell, CellAction, FaceRef, Presentation, SimplexWord, SimplicialSet,
    StandardKind,
};
use kanforge::Limits;

/// Pairs of `n`-simplices with no common degeneracy, counted from the
/// surjections directly.
fn brute_force_counts(k: &SimplicialSet, l: &SimplicialSet) -> Vec<usize> {
    let top = k.dim().unwrap() + l.dim().unwrap();
    (0..=top)
        .map(|n| {
            let (ks, ls) = (k.all_simplices(n), l.all_simplices(n));
            let mut count = 0;
            for u in &ks {
                for v in &ls {
                    let (eu, ev) = (u.surjection(), v.surjection());
                    if (0..n).all(|j| eu[j] != eu[j + 1] || ev[j] != ev[j + 1]) {
                        count += 1;
                    }
                }
            }
            count
        })
        .collect()
}

#[test]
fn product_counts_agree_with_brute_force() {
    let cases: Vec<(SimplicialSet, SimplicialSet)> = vec![
        (delta(1), delta(1)),
        (circle(), circle()),
        (delta(1), delta(2)),
        (circle(), delta(1)),
        (cycle(2).unwrap(), circle()),
    ];
    for (k, l) in cases {
        let (k, l) = (Arc::new(k), Arc::new(l));
        let p = product(&k, &l, &Limits::default()).unwrap();
        let mut counts = p.set.counts();
        counts.resize(k.dim().unwrap() + l.dim().unwrap() + 1, 0);
        assert_eq!(counts, brute_force_counts(&k, &l), "{} x {}", k.name(), l.name());
        assert!(validate_set(&p.set).is_valid());
    }
}

#[test]
fn interval_square_and_torus_counts() {
    let d1 = Arc::new(delta(1));
    assert_eq!(product(&d1, &d1, &Limits::default()).unwrap().set.counts(), vec![4, 5, 2]);
    let s = Arc::new(circle());
    let t = product(&s, &s, &Limits::default()).unwrap();
    assert_eq!(t.set.counts(), vec![1, 3, 2]);
    assert!(validate(&t.set.to_presentation()).is_valid());
    assert!(find_isomorphism(&t.set, &torus()).is_some());
}

#[test]
fn projections_recover_components() {
    let s = Arc::new(circle());
    let d1 = Arc::new(delta(1));
    let p = product(&s, &d1, &Limits::default()).unwrap();
    for u in s.all_simplices(2) {
        for v in d1.all_simplices(2) {
            let w = p.pair(&u, &v);
            assert_eq!(p.left.apply(&w), u);
            assert_eq!(p.right.apply(&w), v);
        }
    }
}

#[test]
fn collapsing_the_boundary_of_a_triangle() {
    let d2 = Arc::new(delta(2));
    let a: BTreeSet<Cell> = d2.cells(0).chain(d2.cells(1)).collect();
    let (q, map) = quotient_by_subcomplex(&d2, &a).unwrap();
    assert_eq!(q.counts(), vec![1, 0, 1]);
    let top = q.cell_faces(Cell::new(2, 0));
    assert!(top.iter().all(|f| f.is_degenerate()));
    assert!(map.apply(&SimplexWord::cell(d2.lookup("01").unwrap())).is_degenerate());
}

#[test]
fn half_turn_of_c4_is_c2() {
    let c4 = Arc::new(cycle(4).unwrap());
    let rot = |s: usize| (0..4).map(|i| (i + s) % 4).collect::<Vec<_>>();
    let action = CellAction { perms: vec![vec![rot(0), rot(0)], vec![rot(2), rot(2)]] };
    let (q, _) = quotient_by_free_action(&c4, &action).unwrap();
    assert!(find_isomorphism(&q, &cycle(2).unwrap()).is_some());
}

#[test]
fn broken_identity_is_reported() {
    let mut p = Presentation::new("bad");
    p.add_vertex("x").add_vertex("y");
    p.add_simplex("e", vec![FaceRef::cell("y"), FaceRef::cell("x")]);
    p.add_simplex("f", vec![FaceRef::cell("x"), FaceRef::cell("y")]);
    p.add_simplex("T", vec![FaceRef::cell("e"), FaceRef::cell("e"), FaceRef::cell("e")]);
    let report = validate(&p);
    assert!(!report.is_valid());
    assert!(p.build().is_err());
}

#[test]
fn standard_sets_are_valid() {
    let kinds = [
        StandardKind::Delta { p: 3 },
        StandardKind::Boundary { p: 3 },
        StandardKind::Horn { p: 3, k: 2 },
        StandardKind::Circle,
        StandardKind::Cycle { n: 5 },
        StandardKind::Torus,
        StandardKind::Klein,
    ];
    for k in kinds {
        assert!(validate_set(&standard(k).unwrap()).is_valid(), "{k:?}");
    }
    assert_eq!(standard(StandardKind::Horn { p: 3, k: 2 }).unwrap().counts(), vec![4, 6, 3]);
}

#[test]
fn random_sets_round_trip_through_presentations() {
    let mut rng = common::rng(11);
    for _ in 0..30 {
        let k = common::random_set(&mut rng);
        let again = k.to_presentation().build().unwrap();
        assert_eq!(again.counts(), k.counts());
        assert!(find_isomorphism(&again, &k).is_some());
    }
}
