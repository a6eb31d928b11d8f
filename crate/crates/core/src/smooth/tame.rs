use rayon::prelude::*;

use super::checks::{grid_points, max_abs_diff};
use super::maps::{psi2, strip_info};
use super::{SmoothError, SmoothParams};
use crate::Real;

/// `n + 1` evenly spaced samples of a path on `[lo, hi]`.
pub fn sample_path<R: Real>(f: impl Fn(R) -> Vec<R>, domain: (R, R), n: usize) -> Vec<Vec<R>> {
    let (lo, hi) = domain;
    let step = (hi - lo) / R::lit(n as f64);
    (0..=n).map(|i| f(lo + step * R::lit(i as f64))).collect()
}

/// Whether uniformly spaced samples on `[lo, hi] ⊇ [0, 1]` are constant
/// (within `1e-12`) on `[lo, δ]` and on `[1 - δ, hi]`. With `domain = (0, 1)`
/// this is tameness on `Δ¹`; wider domains check the tails on `𝔸¹`.
pub fn tameness_check<R: Real>(
    samples: &[Vec<R>],
    domain: (R, R),
    delta: R,
) -> Result<bool, SmoothError> {
    let (lo, hi) = domain;
    if samples.len() < 2 || lo > R::zero() || hi < R::one() || delta <= R::zero() {
        return Err(SmoothError::BadParameter(
            "need ≥ 2 samples on a domain containing [0, 1] and δ > 0".into(),
        ));
    }
    let spacing = (hi - lo) / R::lit((samples.len() - 1) as f64);
    let limit = delta / R::lit(4.0);
    if spacing > limit {
        return Err(SmoothError::GridTooCoarse {
            spacing: format!("{spacing:.3e}"),
            limit: format!("{limit:.3e}"),
        });
    }
    Ok(tail_deviation(samples, domain, delta) <= R::lit(1e-12))
}

/// Largest deviation from the endpoint values on the two tails.
pub(crate) fn tail_deviation<R: Real>(samples: &[Vec<R>], domain: (R, R), delta: R) -> R {
    let (lo, hi) = domain;
    let n = samples.len() - 1;
    let first = &samples[0];
    let last = &samples[n];
    let mut worst = R::zero();
    for (i, s) in samples.iter().enumerate() {
        let t = lo + (hi - lo) * R::lit(i as f64) / R::lit(n as f64);
        if t <= delta {
            worst = worst.max(max_abs_diff(s, first));
        }
        if t >= R::one() - delta {
            worst = worst.max(max_abs_diff(s, last));
        }
    }
    worst
}

/// Position of a point of `𝔸²` relative to `Δ²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Inside,
    /// Wedge beyond vertex `(i)`: both other coordinates negative.
    A(usize),
    /// Beyond the face opposite `(i)`: only `x_i` negative.
    B(usize),
}

impl Region {
    pub fn of<R: Real>(y: [R; 3]) -> Region {
        let neg: Vec<usize> = (0..3).filter(|&i| y[i] < R::zero()).collect();
        match neg[..] {
            [] => Region::Inside,
            [i] => Region::B(i),
            [j, k] => Region::A(3 - j - k),
            _ => unreachable!("coordinates sum to one"),
        }
    }
}

/// `Σ' = Σ ∘ ψ²` on `Δ²`, extended to `𝔸²`: constant on each wedge `A_i`,
/// constant along rays from `(i)` on each `B_i`.
pub struct SigmaExtension<R, F> {
    sigma: F,
    params: SmoothParams<R>,
}

impl<R: Real, F: Fn([R; 3]) -> Vec<R> + Sync> SigmaExtension<R, F> {
    pub fn params(&self) -> &SmoothParams<R> {
        &self.params
    }

    /// `Σ'` on `Δ²`.
    pub fn modified(&self, x: [R; 3]) -> Vec<R> {
        (self.sigma)(psi2(x, &self.params).expect("point of Δ²"))
    }

    pub fn eval(&self, y: [R; 3]) -> Vec<R> {
        match Region::of(y) {
            Region::Inside => self.modified(y),
            Region::A(i) => {
                let mut v = [R::zero(); 3];
                v[i] = R::one();
                self.modified(v)
            }
            Region::B(i) => self.modified(ray_to_face(y, i)),
        }
    }
}

/// Where the ray from `(i)` through `y` meets the face `x_i = 0`.
pub(crate) fn ray_to_face<R: Real>(y: [R; 3], i: usize) -> [R; 3] {
    let s = R::one() - y[i];
    let mut q = [y[0] / s, y[1] / s, y[2] / s];
    q[i] = R::zero();
    let (j, k) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    q[k] = R::one() - q[j];
    q
}

/// Builds the extension after checking, on the parameter grid, that `Σ'`
/// is constant on each `V_i(ε₀/2)` and constant along rays from `(i)` on the
/// strips `ψ²₁` sends onto the opposite edge.
pub fn sigma_extension<R: Real, F: Fn([R; 3]) -> Vec<R> + Sync>(
    sigma: F,
    params: SmoothParams<R>,
) -> Result<SigmaExtension<R, F>, SmoothError> {
    params.validate()?;
    let ext = SigmaExtension { sigma, params };
    let tol = R::lit(1e-12);
    let half = params.eps0 / R::lit(2.0);
    let vertex_values: Vec<Vec<R>> = (0..3)
        .map(|i| {
            let mut v = [R::zero(); 3];
            v[i] = R::one();
            ext.modified(v)
        })
        .collect();
    let bad = grid_points::<R>(params.grid)
        .into_par_iter()
        .find_map_any(|x| {
            if let Some(i) = (0..3).find(|&i| x[i] > R::one() - half) {
                let d = max_abs_diff(&ext.modified(x), &vertex_values[i]);
                if d > tol {
                    return Some((x, format!("Σ' varies by {d} on V_{i}(ε₀/2)")));
                }
            }
            if let Some(info) = strip_info(x, &params).filter(|s| s.onto_edge) {
                let d = max_abs_diff(
                    &ext.modified(x),
                    &ext.modified(ray_to_face(x, info.opposite)),
                );
                if d > tol {
                    return Some((
                        x,
                        format!(
                            "Σ' is not constant along the ray from ({}), off by {d}",
                            info.opposite
                        ),
                    ));
                }
            }
            None
        });
    match bad {
        Some((x, detail)) => Err(SmoothError::Precondition {
            point: format!("({}, {}, {})", x[0], x[1], x[2]),
            detail,
        }),
        None => Ok(ext),
    }
}
