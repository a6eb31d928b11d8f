mod common;

use std::sync::Arc;

use kanforge::bundles::{
    classifying_map, covering_check, holonomy_subgroup, principal_check, pullback_twisting, tcp_build,
    universal_check, w_truncated, FiniteGroup, Group, TwistingFunction,
};
use kanforge::chains::{chain_complex, homology, Coeff};
use kanforge::homotopy::pi0;
use kanforge::simplicial::{circle, copies, cycle, find_isomorphism, torus, Cell, SimplexWord};
use kanforge::Limits;
use num_bigint::BigInt;

fn z_homology(k: &kanforge::simplicial::SimplicialSet, top: usize) -> Vec<String> {
    let h = homology(&chain_complex::<BigInt>(k, top + 1, false).unwrap(), Coeff::Z).unwrap();
    h.iter().take(top + 1).map(|g| g.group().to_string()).collect()
}

#[test]
fn double_cover_of_the_torus() {
    let z2 = FiniteGroup::cyclic(2);
    let tau = TwistingFunction::from_names(Arc::new(torus()), z2, &[("a", "t"), ("b", "e"), ("c", "t")]).unwrap();
    let b = tcp_build(&tau).unwrap();
    assert_eq!(b.total.counts(), vec![2, 6, 4]);
    assert!(principal_check(&b).ok);
    assert!(covering_check(&b.projection, 2).ok);
    assert_eq!(pi0(&b.total).count, 1);
    // a connected double cover of the torus is a torus
    assert_eq!(z_homology(&b.total, 2), ["Z", "Z^2", "Z"]);
}

#[test]
fn twisting_must_respect_the_triangles() {
    let z2 = FiniteGroup::cyclic(2);
    let bad = TwistingFunction::from_names(Arc::new(torus()), z2, &[("a", "t"), ("b", "t"), ("c", "t")]);
    assert!(bad.is_err());
}

#[test]
fn pullback_along_the_double_wrap_splits() {
    let z2 = FiniteGroup::cyclic(2);
    let tau = TwistingFunction::from_names(Arc::new(circle()), z2.clone(), &[("a", "t")]).unwrap();
    let f = common::wrap(2, 0);
    let pulled = pullback_twisting(&f, &tau).unwrap();
    assert!(pulled.labels().iter().all(|&l| l == 1));
    let b = tcp_build(&pulled).unwrap();
    assert_eq!(b.total.count(0), 4);
    assert!(principal_check(&b).ok);
    // the loop has holonomy t·t = e, so the cover is trivial
    assert_eq!(holonomy_subgroup(&pulled, Cell::new(0, 0)).unwrap().len(), 1);
    let two = copies(&Arc::new(cycle(2).unwrap()), 2);
    assert!(find_isomorphism(&b.total, &two.0).is_some());
}

#[test]
fn non_universal_bundles_are_rejected() {
    let l = Limits::default();
    let z2 = FiniteGroup::cyclic(2);
    let s = Arc::new(circle());
    let trivial = tcp_build(&TwistingFunction::trivial(s.clone(), z2.clone())).unwrap();
    assert!(!universal_check(&trivial, 2, &l).unwrap().universal_evidence);
    let cover = tcp_build(&TwistingFunction::from_names(s, z2, &[("a", "t")]).unwrap()).unwrap();
    let r = universal_check(&cover, 2, &l).unwrap();
    assert!(!r.universal_evidence);
    assert_eq!(r.verdict(), "not universal");
}

#[test]
fn universal_bundle_of_z2() {
    let l = Limits::default();
    let (nerve, w) = w_truncated(&FiniteGroup::cyclic(2), 3, &l).unwrap();
    assert_eq!(nerve.set.counts(), vec![1, 1, 1, 1]);
    assert_eq!(w.total.counts(), vec![2, 2, 2, 2]);
    assert!(universal_check(&w, 3, &l).unwrap().universal_evidence);
}

#[test]
fn classifying_map_of_the_circle_cover() {
    let z2 = FiniteGroup::cyclic(2);
    let s = Arc::new(circle());
    let tau = TwistingFunction::from_names(s.clone(), z2.clone(), &[("a", "t")]).unwrap();
    let (nerve, f) = classifying_map(&tau, 2, &Limits::default()).unwrap();
    let a = SimplexWord::cell(s.lookup("a").unwrap());
    let image = f.apply(&a).as_cell().unwrap();
    assert_eq!(nerve.tuple_of(image), vec![1]);
    assert_eq!(z2.format(&nerve.tuple_of(image)[0]), "t");
}
