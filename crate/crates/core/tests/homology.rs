use std::sync::Arc;

use kanforge::bundles::{wbar_truncated, FiniteGroup};
use kanforge::chains::{
    chain_complex, cohomology, cohomology_through, cup_cochain, homology, Coeff, FGAbelianGroup,
};
use kanforge::linalg::{smith_normal_form, IntMatrix};
use kanforge::simplicial::{circle, delta, product, torus};
use kanforge::Limits;
use num_bigint::BigInt;
use num_integer::Integer;

#[test]
fn smith_form_of_diag_two_three() {
    let m = IntMatrix::<BigInt>::from_i64(&[&[2, 0], &[0, 3]]);
    let s = smith_normal_form(&m);
    assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    // determinantal divisors: d1 = gcd of entries, d1 d2 = |det|
    let d1 = BigInt::from(2).gcd(&BigInt::from(3));
    assert_eq!(s.diagonal()[0], d1);
    assert_eq!(&s.diagonal()[0] * &s.diagonal()[1], BigInt::from(6));
}

#[test]
fn triangle_boundary_matrix() {
    let c = chain_complex::<i64>(&delta(2), 2, false).unwrap();
    assert_eq!(c.boundaries[2], IntMatrix::from_i64(&[&[1], &[-1], &[1]]));
}

#[test]
fn torus_homology() {
    let s = Arc::new(circle());
    let t = product(&s, &s, &Limits::default()).unwrap().set;
    for k in [t.as_ref().clone(), torus()] {
        let h = homology(&chain_complex::<BigInt>(&k, 3, false).unwrap(), Coeff::Z).unwrap();
        let names: Vec<String> = h.iter().take(3).map(|g| g.group().to_string()).collect();
        assert_eq!(names, ["Z", "Z^2", "Z"]);
    }
}

#[test]
fn nerve_of_z2_against_alternating_complex() {
    let nerve = wbar_truncated(&FiniteGroup::cyclic(2), 4, &Limits::default()).unwrap();
    let c = chain_complex::<BigInt>(&nerve.set, 4, false).unwrap().mark_truncated();
    // one cell per degree; ∂_n is 0 for odd n and 2 for even n ≥ 2
    for n in 1..=4 {
        let expect = if n % 2 == 0 { 2 } else { 0 };
        assert_eq!(c.boundaries[n], IntMatrix::from_i64(&[&[expect]]), "degree {n}");
    }
    let h = homology(&c, Coeff::Z).unwrap();
    assert_eq!(h[0].group(), &FGAbelianGroup::free(1));
    assert_eq!(h[1].group(), &FGAbelianGroup::cyclic(2));
    assert!(h[2].group().is_trivial());
    assert_eq!(h[3].group(), &FGAbelianGroup::cyclic(2));
    assert!(!h[4].reliable);
    let co = cohomology(&c, Coeff::Mod(2)).unwrap();
    for k in 0..=3 {
        assert_eq!(co.group(k).unwrap(), &FGAbelianGroup::cyclic(2));
    }
}

#[test]
fn squares_vanish_on_the_torus() {
    let s = Arc::new(circle());
    let t = product(&s, &s, &Limits::default()).unwrap().set;
    let co = cohomology_through::<BigInt>(&t, 2, Coeff::Z, &Limits::default()).unwrap();
    for a in co.generators(1).unwrap() {
        // direct evaluation on both 2-simplices: front edge times back edge
        let direct: Vec<BigInt> = t
            .cells(2)
            .map(|c| {
                let x = kanforge::simplicial::SimplexWord::cell(c);
                let f = t.restrict(&x, &[0, 1]).as_cell().map(|e| a.values[e.index].clone());
                let b = t.restrict(&x, &[1, 2]).as_cell().map(|e| a.values[e.index].clone());
                f.zip(b).map(|(f, b)| f * b).unwrap_or_default()
            })
            .collect();
        let cup = cup_cochain(&t, 1, &a.values, 1, &a.values, Coeff::Z);
        assert_eq!(cup, direct);
        assert!(co.class_of(2, &cup).unwrap().is_zero());
    }
}

#[test]
fn mod_p_homology_of_the_projective_like_nerve() {
    let nerve = wbar_truncated(&FiniteGroup::cyclic(3), 4, &Limits::default()).unwrap();
    let c = chain_complex::<BigInt>(&nerve.set, 4, false).unwrap();
    let h = homology(&c, Coeff::Z).unwrap();
    assert_eq!(h[1].group(), &FGAbelianGroup::cyclic(3));
    assert!(h[2].group().is_trivial());
    assert_eq!(h[3].group(), &FGAbelianGroup::cyclic(3));
    let h3 = homology(&c, Coeff::Mod(3)).unwrap();
    for k in 0..=3 {
        assert_eq!(h3[k].group(), &FGAbelianGroup::cyclic(3), "degree {k}");
    }
}
