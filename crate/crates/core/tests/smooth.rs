mod common;

use kanforge::smooth::{
    bump_mu, check_degenerating_map, check_tame_composite, degenerate_s1, map_f, phi, psi2, retraction_r,
    sample_path, sigma_extension, tameness_check, Region, SmoothError, SmoothParams,
};
use rand::Rng;

/// Slides along `(-1, 2, -1)` by bisection until a coordinate of the pair
/// `(x₀, x₂)` reaches zero.
fn ray_oracle(x: [f64; 3]) -> [f64; 3] {
    let at = |t: f64| [x[0] - t, x[1] + 2.0 * t, x[2] - t];
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let p = at(mid);
        if p[0].min(p[2]) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(hi)
}

fn random_point(rng: &mut impl Rng) -> [f64; 3] {
    let (a, b): (f64, f64) = (rng.gen(), rng.gen());
    if a + b <= 1.0 {
        [a, b, 1.0 - a - b]
    } else {
        [1.0 - a, 1.0 - b, a + b - 1.0]
    }
}

#[test]
fn barycenter_retracts_to_the_middle_vertex() {
    let y: [f64; 3] = retraction_r([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]).unwrap();
    let z = ray_oracle([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
    for i in 0..3 {
        assert!((y[i] - [0.0, 1.0, 0.0][i]).abs() < 1e-12);
        assert!((y[i] - z[i]).abs() < 1e-9);
    }
}

#[test]
fn retraction_agrees_with_the_ray_oracle() {
    let mut rng = common::rng(3);
    for _ in 0..10_000 {
        let x = random_point(&mut rng);
        let y = retraction_r(x).unwrap();
        let z = ray_oracle(x);
        let again = retraction_r(y).unwrap();
        for i in 0..3 {
            assert!((y[i] - z[i]).abs() < 1e-9, "{x:?}");
            assert!((again[i] - y[i]).abs() <= 1e-10, "{x:?}");
        }
    }
}

#[test]
fn bump_is_monotone_and_flat_outside_the_window() {
    let w = (0.25, 0.75);
    let values: Vec<f64> = (0..=1000).map(|i| bump_mu(i as f64 / 1000.0, w)).collect();
    assert!(values.windows(2).all(|p| p[0] <= p[1]));
    assert!(values[..=250].iter().all(|&v| v == 0.0));
    assert!(values[750..].iter().all(|&v| v == 1.0));
    assert_eq!(phi(0.05, (0.1, 0.4)), 1.0);
    assert_eq!(phi(0.45, (0.1, 0.4)), 0.0);
}

#[test]
fn vertex_neighbourhoods_collapse() {
    let p = SmoothParams::default();
    for x in [[0.95, 0.03, 0.02], [0.91, 0.0, 0.09], [1.0, 0.0, 0.0]] {
        assert_eq!(psi2(x, &p).unwrap(), [1.0, 0.0, 0.0]);
    }
    assert_eq!(psi2([0.03, 0.02, 0.95], &p).unwrap(), [0.0, 0.0, 1.0]);
    let inside = [0.4, 0.3, 0.3];
    assert_eq!(psi2(inside, &p).unwrap(), inside);
}

#[test]
fn map_f_on_the_first_face_is_mu() {
    let p = SmoothParams::default();
    for i in 0..=100 {
        let t = i as f64 / 100.0;
        let y = map_f([1.0 - t, 0.0, t], &p).unwrap();
        let m = bump_mu(t, p.mu_window);
        assert!((y[2] - m).abs() < 1e-12 && y[1] == 0.0);
    }
    assert_eq!(map_f([0.2, 0.6, 0.2], &p).unwrap(), [0.2, 0.6, 0.2]);
    assert!(matches!(map_f([0.5, 0.5, 0.5], &p), Err(SmoothError::NotAffine(_))));
}

#[test]
fn middle_face_of_the_tame_composite_is_tame() {
    let p = SmoothParams::default();
    let sigma = |u: [f64; 2]| vec![u[1], u[1] * u[1], (3.0 * u[0]).sin()];
    let d1 = |t: f64| sigma(degenerate_s1(map_f([1.0 - t, 0.0, t], &p).unwrap()));
    let (a, b) = p.mu_window;
    let delta = a.min(1.0 - b) / 2.0;
    assert!(tameness_check(&sample_path(d1, (0.0, 1.0), 1000), (0.0, 1.0), delta).unwrap());
    // the untamed face is σ itself, which is not constant near the ends
    let raw = |t: f64| sigma([1.0 - t, t]);
    assert!(!tameness_check(&sample_path(raw, (0.0, 1.0), 1000), (0.0, 1.0), delta).unwrap());
    let reports = check_tame_composite(&SmoothParams { grid: 80, ..p }, sigma).unwrap();
    assert!(reports.iter().all(|r| r.passed()), "{reports:?}");
    assert!(check_degenerating_map(400, sigma).iter().all(|r| r.passed()));
}

#[test]
fn extension_outside_the_simplex() {
    let sigma = |x: [f64; 3]| vec![x[0] + 2.0 * x[2], x[1] * x[2]];
    let ext = sigma_extension(sigma, SmoothParams { grid: 80, ..Default::default() }).unwrap();
    let a0 = [1.3, -0.1, -0.2];
    assert_eq!(Region::of(a0), Region::A(0));
    assert_eq!(ext.eval(a0), ext.modified([1.0, 0.0, 0.0]));
    // the ray from (1) through (0.6, -0.2, 0.6) meets x₁ = 0 at (½, 0, ½)
    let b1 = [0.6, -0.2, 0.6];
    assert_eq!(Region::of(b1), Region::B(1));
    let hit = ext.modified([0.5, 0.0, 0.5]);
    let got = ext.eval(b1);
    assert!(got.iter().zip(&hit).all(|(u, v)| (u - v).abs() < 1e-12));
}

#[test]
fn extension_rejects_bad_parameters() {
    let p = SmoothParams { eps0: 0.7, ..Default::default() };
    assert!(matches!(sigma_extension(|x: [f64; 3]| x.to_vec(), p), Err(SmoothError::BadParameter(_))));
}
