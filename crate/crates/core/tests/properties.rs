mod common;

use std::sync::Arc;

use kanforge::bundles::{
    covering_check, holonomy_subgroup, principal_check, tcp_build, FiniteGroup, TwistingFunction,
};
use kanforge::chains::{
    chain_complex, chain_homotopy_check, homology, induced_chain_map, induced_on_homology,
    ChainComplex, ChainMap, Coeff,
};
use kanforge::charclass::naturality_check;
use kanforge::homotopy::{abelianized_pi1, pi0};
use kanforge::linalg::{smith_normal_form, IntMatrix};
use kanforge::simplicial::{product, validate_set, Cell, SimplexWord};
use kanforge::smooth::{bump_mu, psi2, retraction_r, SmoothParams};
use kanforge::Limits;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>()) {
        let k = common::random_set(&mut common::rng(seed));
        prop_assert!(validate_set(&k).is_valid());
        let top = k.dim().unwrap_or(0) + 1;
        let c: ChainComplex<i64> = chain_complex(&k, top, true).unwrap();
        prop_assert!(c.check_square_zero());
    }

    #[test]
    fn euler_characteristic_matches_homology(seed in any::<u64>()) {
        let k = common::random_set(&mut common::rng(seed));
        let top = k.dim().unwrap_or(0);
        let c: ChainComplex<BigInt> = chain_complex(&k, top + 1, false).unwrap();
        let h = homology(&c, Coeff::Z).unwrap();
        let from_h: i64 = (0..=top).map(|n| if n % 2 == 0 { 1 } else { -1 } * h[n].group().rank as i64).sum();
        let from_cells: i64 = (0..=top).map(|n| if n % 2 == 0 { 1 } else { -1 } * k.count(n) as i64).sum();
        prop_assert_eq!(from_h, from_cells);
        // field coefficients give the same Euler characteristic
        let h2 = homology(&c, Coeff::Mod(2)).unwrap();
        let mod2: i64 = (0..=top).map(|n| if n % 2 == 0 { 1 } else { -1 } * h2[n].group().num_generators() as i64).sum();
        prop_assert_eq!(mod2, from_cells);
    }

    #[test]
    fn abelianized_pi1_is_h1(seed in any::<u64>()) {
        let k = common::random_set(&mut common::rng(seed));
        prop_assume!(pi0(&k).count == 1);
        let ab = abelianized_pi1(&k, Cell::new(0, 0)).unwrap();
        let h1 = homology(&chain_complex::<BigInt>(&k, 2, false).unwrap(), Coeff::Z).unwrap()[1].group().clone();
        prop_assert_eq!(ab, h1);
    }

    #[test]
    fn projections_are_functorial(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let k = common::random_set(&mut rng);
        let l = common::random_set(&mut rng);
        prop_assume!(k.total_cells() * l.total_cells() <= 300);
        let p = product(&k, &l, &Limits::default()).unwrap();
        let a = common::random_subcomplex(&mut rng, &l);
        let (_, q) = kanforge::simplicial::quotient_by_subcomplex(&l, &a).unwrap();
        let d = p.set.dim().unwrap_or(0);
        let whole: ChainMap<i64> = induced_chain_map(&p.right.then(&q).unwrap(), d).unwrap();
        let parts = induced_chain_map::<i64>(&p.right, d).unwrap().then(&induced_chain_map(&q, d).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn prism_is_a_chain_homotopy(seed in any::<u64>()) {
        let k = common::random_set(&mut common::rng(seed));
        prop_assume!(k.total_cells() <= 30);
        let top = k.dim().unwrap_or(0);
        let pr = common::prism(&k);
        let src: ChainComplex<i64> = chain_complex(&k, top, false).unwrap();
        let tgt: ChainComplex<i64> = chain_complex(&pr.product.set, top + 1, false).unwrap();
        let f = induced_chain_map::<i64>(&pr.bottom, top).unwrap();
        let g = induced_chain_map::<i64>(&pr.top, top).unwrap();
        prop_assert!(chain_homotopy_check(&src, &tgt, &f, &g, &pr.homotopy).unwrap());
        let hs = homology(&src, Coeff::Z).unwrap();
        let ht = homology(&tgt, Coeff::Z).unwrap();
        for n in 0..=top {
            prop_assert_eq!(
                induced_on_homology(&f, &hs[n], &ht[n]).unwrap(),
                induced_on_homology(&g, &hs[n], &ht[n]).unwrap()
            );
        }
    }

    #[test]
    fn smith_form_is_diagonal_and_unimodular(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let m = IntMatrix::<BigInt>::from_rows(&data.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect::<Vec<_>>());
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(rows));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(cols));
        let diag = s.diagonal();
        for i in 0..diag.len() {
            for j in 0..diag.len() {
                if i != j && i < s.d.rows() && j < s.d.cols() {
                    prop_assert_eq!(s.d[(i, j)].clone(), BigInt::from(0));
                }
            }
            if i + 1 < s.rank {
                prop_assert!((diag[i + 1].clone() % diag[i].clone()) == BigInt::from(0));
            }
        }
    }
}

fn random_twisting(rng: &mut impl Rng) -> TwistingFunction<FiniteGroup> {
    let groups = common::small_groups();
    let g = groups[rng.gen_range(0..groups.len())].clone();
    common::random_map_and_twisting(rng, &g).1
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn tcp_is_principal_and_covering(seed in any::<u64>()) {
        let tau = random_twisting(&mut common::rng(seed));
        let b = tcp_build(&tau).unwrap();
        prop_assert!(validate_set(&b.total).is_valid());
        let r = principal_check(&b);
        prop_assert!(r.ok, "{:?}", r.diagnostics);
        prop_assert!(covering_check(&b.projection, tau.group().size()).ok);
    }

    #[test]
    fn holonomy_decides_connectivity(seed in any::<u64>()) {
        let tau = random_twisting(&mut common::rng(seed));
        let b = tcp_build(&tau).unwrap();
        let hol = holonomy_subgroup(&tau, Cell::new(0, 0)).unwrap();
        let order = tau.group().size();
        prop_assert_eq!(order % hol.len(), 0);
        prop_assert_eq!(pi0(&b.total).count, order / hol.len());
        prop_assert_eq!(pi0(&b.total).count == 1, hol.len() == order);
    }

    #[test]
    fn characteristic_classes_are_natural(seed in any::<u64>(), degree in 1usize..=2) {
        let mut rng = common::rng(seed);
        let groups = common::small_groups();
        let g = groups[rng.gen_range(0..groups.len())].clone();
        let (f, tau) = common::random_map_and_twisting(&mut rng, &g);
        let m = rng.gen_range(2..=3u64);
        let c = if degree == 1 {
            let all = common::degree_one_cocycles(&g, m);
            all[rng.gen_range(0..all.len())].clone()
        } else {
            common::random_degree_two(&mut rng, &g, m)
        };
        prop_assert!(naturality_check::<_, BigInt>(&f, &tau, &c, &Limits::default()).unwrap());
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn retraction_is_idempotent(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let x = if a + b <= 1.0 { [a, b, 1.0 - a - b] } else { [1.0 - a, 1.0 - b, a + b - 1.0] };
        let y = retraction_r(x).unwrap();
        prop_assert!(y[0] == 0.0 || y[2] == 0.0);
        let z = retraction_r(y).unwrap();
        for i in 0..3 {
            prop_assert!((z[i] - y[i]).abs() <= 1e-10);
        }
    }

    #[test]
    fn psi2_stays_in_closed_faces(a in 0.0f64..=1.0, b in 0.0f64..=1.0, zero in 0usize..4, eps in 0.02f64..0.45) {
        let mut x = if a + b <= 1.0 { [a, b, 1.0 - a - b] } else { [1.0 - a, 1.0 - b, a + b - 1.0] };
        if zero < 3 {
            // move onto the face x_zero = 0
            let s = 1.0 - x[zero];
            if s > 0.0 {
                for c in x.iter_mut() {
                    *c /= s;
                }
                x[zero] = 0.0;
            }
        }
        let p = SmoothParams::with_eps0(eps);
        let y = psi2(x, &p).unwrap();
        for i in 0..3 {
            prop_assert!(y[i] >= -1e-12);
            if x[i] == 0.0 {
                prop_assert!(y[i].abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn bump_is_monotone(s in 0.0f64..1.0, t in 0.0f64..1.0, lo in 0.0f64..0.5, w in 0.01f64..0.5) {
        let win = (lo, lo + w);
        let (a, b) = if s <= t { (s, t) } else { (t, s) };
        prop_assert!(bump_mu(a, win) <= bump_mu(b, win));
        prop_assert!((0.0..=1.0).contains(&bump_mu(a, win)));
    }
}

#[test]
fn prism_sign_convention() {
    let k = Arc::new(kanforge::simplicial::delta(1));
    let pr = common::prism(&k);
    // the prism over an edge has two triangles with opposite signs
    let h1 = &pr.homotopy[1];
    let col: Vec<i64> = (0..h1.rows()).map(|i| h1[(i, 0)]).collect();
    assert_eq!(col.iter().filter(|&&v| v != 0).count(), 2);
    assert_eq!(col.iter().sum::<i64>(), 0);
    let v = SimplexWord::cell(k.lookup("0").unwrap());
    assert!(pr.bottom.apply(&v).as_cell().is_some());
}
