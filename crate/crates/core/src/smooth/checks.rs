use rayon::prelude::*;

use super::bump::bump_mu;
use super::maps::{
    degenerate_s, degenerate_s1, map_f, psi2, psi2_0, psi2_1, psi2_support, retraction_r,
    strip_info,
};
use super::tame::{tail_deviation, Region, SigmaExtension};
use super::{SmoothError, SmoothParams};
use crate::Real;

/// Outcome of one sampled property.
#[derive(Clone, Debug, PartialEq)]
pub struct GridReport<R> {
    pub name: String,
    pub samples: usize,
    pub max_error: R,
    pub tolerance: R,
    /// Sample attaining `max_error`.
    pub worst: Option<[R; 3]>,
}

impl<R: Real> GridReport<R> {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

impl<R: Real> std::fmt::Display for GridReport<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}: {} samples, max error {:.3e} (tol {:.0e})",
            if self.passed() { "pass" } else { "FAIL" },
            self.name,
            self.samples,
            self.max_error + R::zero(),
            self.tolerance
        )?;
        if let (false, Some(w)) = (self.passed(), self.worst) {
            write!(f, " at ({}, {}, {})", w[0], w[1], w[2])?;
        }
        Ok(())
    }
}

/// Barycentric grid `(i/n, j/n, (n-i-j)/n)`, `i + j ≤ n`.
pub fn grid_points<R: Real>(n: usize) -> Vec<[R; 3]> {
    let nn = R::lit(n as f64);
    let mut out = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for i in 0..=n {
        for j in 0..=(n - i) {
            out.push([
                R::lit(i as f64) / nn,
                R::lit(j as f64) / nn,
                R::lit((n - i - j) as f64) / nn,
            ]);
        }
    }
    out
}

pub(crate) fn max_abs_diff<R: Real>(a: &[R], b: &[R]) -> R {
    if a.len() != b.len() {
        return R::infinity();
    }
    a.iter()
        .zip(b)
        .fold(R::zero(), |m, (&x, &y)| m.max((x - y).abs()))
}

/// Runs `err` over `points` in parallel; `None` means the sample does not apply.
fn scan<R: Real>(
    name: &str,
    points: &[[R; 3]],
    tolerance: R,
    err: impl Fn([R; 3]) -> Option<R> + Sync,
) -> GridReport<R> {
    let (samples, max_error, worst) = points
        .par_iter()
        .filter_map(|&x| {
            err(x).map(|e| (1usize, if e.is_nan() { R::infinity() } else { e }, Some(x)))
        })
        .reduce(
            || (0, R::zero(), None),
            |a, b| {
                let n = a.0 + b.0;
                if b.1 > a.1 || a.2.is_none() {
                    (n, b.1, b.2)
                } else {
                    (n, a.1, a.2)
                }
            },
        );
    GridReport {
        name: name.to_string(),
        samples,
        max_error,
        tolerance,
        worst,
    }
}

fn vertex<R: Real>(i: usize) -> [R; 3] {
    let mut v = [R::zero(); 3];
    v[i] = R::one();
    v
}

/// Points `t ↦ (1-t, t)` placed on face `i` of `Δ²`.
fn face_point<R: Real>(i: usize, t: R) -> [R; 3] {
    let s = R::one() - t;
    match i {
        0 => [R::zero(), s, t],
        1 => [s, R::zero(), t],
        _ => [s, t, R::zero()],
    }
}

fn params_of(n: usize) -> Vec<f64> {
    (0..=n).map(|i| i as f64 / n as f64).collect()
}

fn line_points<R: Real>(n: usize) -> Vec<[R; 3]> {
    params_of(n)
        .into_iter()
        .map(|t| [R::lit(t), R::zero(), R::zero()])
        .collect()
}

fn tol12<R: Real>() -> R {
    R::lit(1e-12)
}

fn tol10<R: Real>() -> R {
    R::lit(1e-10)
}

/// `r(Δ²) ⊆ Λ²₁`, `r ∘ r = r`, and `r` fixes `Λ²₁`.
pub fn check_retraction<R: Real>(p: &SmoothParams<R>) -> Result<Vec<GridReport<R>>, SmoothError> {
    p.validate()?;
    let pts = grid_points::<R>(p.grid);
    let into = scan("r maps into the horn", &pts, tol12(), |x| {
        let y = retraction_r(x).ok()?;
        let neg = y.iter().fold(R::zero(), |m, &c| m.max(-c));
        Some(y[0].min(y[2]).abs().max(neg))
    });
    let idem = scan("r is idempotent", &pts, tol10(), |x| {
        let y = retraction_r(x).ok()?;
        Some(max_abs_diff(&retraction_r(y).ok()?, &y))
    });
    let fixes = scan("r fixes the horn", &pts, tol12(), |x| {
        if x[0] != R::zero() && x[2] != R::zero() {
            return None;
        }
        Some(max_abs_diff(&retraction_r(x).ok()?, &x))
    });
    Ok(vec![into, idem, fixes])
}

/// Distance of `y` from the closed face spanned by the nonzero coordinates of `x`.
fn face_violation<R: Real>(x: [R; 3], y: [R; 3]) -> R {
    (0..3).fold(R::zero(), |m, i| {
        let off = if x[i] == R::zero() {
            y[i].abs()
        } else {
            R::zero()
        };
        m.max(off).max(-y[i])
    })
}

/// Bullet properties of `ψ²₀`, `ψ²₁` and `ψ² = ψ²₀ ∘ ψ²₁`.
pub fn check_psi2<R: Real>(p: &SmoothParams<R>) -> Result<Vec<GridReport<R>>, SmoothError> {
    p.validate()?;
    let pts = grid_points::<R>(p.grid);
    let half = p.eps0 / R::lit(2.0);
    let near = |x: &[R; 3], eps: R| (0..3).find(|&i| x[i] > R::one() - eps);
    let mut out = vec![
        scan("psi2 sends V_i(eps0/2) to (i)", &pts, R::zero(), |x| {
            let i = near(&x, half)?;
            Some(max_abs_diff(&psi2(x, p).ok()?, &vertex::<R>(i)))
        }),
        scan("psi2 is the identity off the support", &pts, tol12(), |x| {
            if psi2_support(x, p) {
                return None;
            }
            Some(max_abs_diff(&psi2(x, p).ok()?, &x))
        }),
        scan(
            "psi2_0 is the identity off the V_i(eps0)",
            &pts,
            tol12(),
            |x| {
                if near(&x, p.eps0).is_some() {
                    return None;
                }
                Some(max_abs_diff(&psi2_0(x, p).ok()?, &x))
            },
        ),
        scan("psi2_1 preserves each V_i(eps0/2)", &pts, R::zero(), |x| {
            let i = near(&x, half)?;
            let y = psi2_1(x, p).ok()?;
            Some(if y[i] > R::one() - half {
                R::zero()
            } else {
                R::one()
            })
        }),
    ];
    type Map<R> = fn([R; 3], &SmoothParams<R>) -> Result<[R; 3], SmoothError>;
    let maps: [(&str, Map<R>); 3] = [
        ("psi2_0 preserves closed faces", psi2_0),
        ("psi2_1 preserves closed faces", psi2_1),
        ("psi2 preserves closed faces", psi2),
    ];
    for (name, m) in maps {
        out.push(scan(name, &pts, tol12(), |x| {
            Some(face_violation(x, m(x, p).ok()?))
        }));
    }
    out.push(scan(
        "psi2 fixes the vertices",
        &[vertex(0), vertex(1), vertex(2)],
        R::zero(),
        |x| Some(max_abs_diff(&psi2(x, p).ok()?, &x)),
    ));
    out.push(scan(
        "psi2 onto-edge strips land on the edge",
        &pts,
        tol12(),
        |x| {
            let info = strip_info(x, p).filter(|s| s.onto_edge)?;
            Some(psi2_1(x, p).ok()?[info.opposite].abs())
        },
    ));
    Ok(out)
}

/// `F` fixes the vertices and `{x₁ ≥ ½}`, and restricts to `id`, `μ`, `id`
/// on the faces `0`, `1`, `2`.
pub fn check_map_f<R: Real>(p: &SmoothParams<R>) -> Result<Vec<GridReport<R>>, SmoothError> {
    p.validate()?;
    let pts = grid_points::<R>(p.grid);
    let line = line_points::<R>(p.grid);
    let mut out = Vec::new();
    for i in 0..3 {
        let name = format!("F on face {i} is {}", if i == 1 { "mu" } else { "id" });
        out.push(scan(&name, &line, tol12(), |t| {
            let t = t[0];
            let y = map_f(face_point(i, t), p).ok()?;
            let expect = if i == 1 {
                face_point(1, bump_mu(t, p.mu_window))
            } else {
                face_point(i, t)
            };
            Some(max_abs_diff(&y, &expect))
        }));
    }
    out.push(scan(
        "F is the identity on x1 >= 1/2",
        &pts,
        R::zero(),
        |x| {
            if x[1] < R::lit(0.5) {
                return None;
            }
            Some(max_abs_diff(&map_f(x, p).ok()?, &x))
        },
    ));
    out.push(scan(
        "F fixes the vertices",
        &[vertex(0), vertex(1), vertex(2)],
        R::zero(),
        |x| Some(max_abs_diff(&map_f(x, p).ok()?, &x)),
    ));
    out.push(scan("F maps into the simplex", &pts, tol12(), |x| {
        let y = map_f(x, p).ok()?;
        Some(
            y.iter()
                .fold((y[0] + y[1] + y[2] - R::one()).abs(), |m, &c| m.max(-c)),
        )
    }));
    Ok(out)
}

fn path_report<R: Real>(name: &str, samples: &[Vec<R>], delta: R) -> GridReport<R> {
    GridReport {
        name: name.to_string(),
        samples: samples.len(),
        max_error: tail_deviation(samples, (R::zero(), R::one()), delta),
        tolerance: tol12(),
        worst: None,
    }
}

/// Faces of `Σ = σ ∘ s¹ ∘ F` for a path `σ` on `Δ¹`: `d₀Σ` constant at
/// `σ((1))`, `d₂Σ = σ`, `d₁Σ` tame.
pub fn check_tame_composite<R: Real>(
    p: &SmoothParams<R>,
    sigma: impl Fn([R; 2]) -> Vec<R> + Sync,
) -> Result<Vec<GridReport<R>>, SmoothError> {
    p.validate()?;
    let big = |x: [R; 3]| map_f(x, p).map(|y| sigma(degenerate_s1(y)));
    let (a, b) = p.mu_window;
    let delta = a.min(R::one() - b) / R::lit(2.0);
    let line = line_points::<R>(p.grid);
    let end = sigma([R::zero(), R::one()]);
    let d0 = scan("d0 Sigma is constant at sigma((1))", &line, tol12(), |t| {
        Some(max_abs_diff(&big(face_point(0, t[0])).ok()?, &end))
    });
    let d2 = scan("d2 Sigma = sigma", &line, tol12(), |t| {
        let t = t[0];
        Some(max_abs_diff(
            &big(face_point(2, t)).ok()?,
            &sigma([R::one() - t, t]),
        ))
    });
    let n = p
        .grid
        .max((R::lit(8.0) / delta).ceil().to_usize().unwrap_or(p.grid));
    let d1: Result<Vec<Vec<R>>, SmoothError> = params_of(n)
        .into_iter()
        .map(|t| big(face_point(1, R::lit(t))))
        .collect();
    Ok(vec![d0, d2, path_report("d1 Sigma is tame", &d1?, delta)])
}

/// Faces of `Σ = σ ∘ s` with `s(x₀, x₁, x₂) = (x₀ + x₂, x₁)`: `d₂Σ = σ`,
/// `d₁Σ` constant, `d₀Σ(t) = σ(1 - t)`.
pub fn check_degenerating_map<R: Real>(
    n: usize,
    sigma: impl Fn([R; 2]) -> Vec<R> + Sync,
) -> Vec<GridReport<R>> {
    let big = |x: [R; 3]| sigma(degenerate_s(x));
    let line = line_points::<R>(n);
    let path = |t: R| sigma([R::one() - t, t]);
    let start = path(R::zero());
    vec![
        scan("d2 Sigma = sigma", &line, tol12(), |t| {
            Some(max_abs_diff(&big(face_point(2, t[0])), &path(t[0])))
        }),
        scan("d1 Sigma is constant", &line, tol12(), |t| {
            Some(max_abs_diff(&big(face_point(1, t[0])), &start))
        }),
        scan("d0 Sigma(t) = sigma(1 - t)", &line, tol12(), |t| {
            Some(max_abs_diff(
                &big(face_point(0, t[0])),
                &path(R::one() - t[0]),
            ))
        }),
    ]
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// The extension agrees with `Σ'` on `Δ²`, is constant on each `A_i`,
/// constant along rays from `(i)` through `B_i` (checked against points of the
/// onto-edge strips on the same ray), and continuous across the faces.
pub fn check_extension<R: Real, F: Fn([R; 3]) -> Vec<R> + Sync>(
    ext: &SigmaExtension<R, F>,
) -> Vec<GridReport<R>> {
    let p = *ext.params();
    let pts = grid_points::<R>(p.grid);
    let m = (p.grid / 4).max(4);
    let mut out = vec![scan(
        "extension agrees on the simplex",
        &pts,
        R::zero(),
        |x| Some(max_abs_diff(&ext.eval(x), &ext.modified(x))),
    )];

    let mut wedge = Vec::new();
    for i in 0..3 {
        let (j, k) = others(i);
        for a in 1..=m {
            for b in 1..=m {
                let (a, b) = (
                    R::lit(2.0 * a as f64 / m as f64),
                    R::lit(2.0 * b as f64 / m as f64),
                );
                let mut y = [R::zero(); 3];
                y[j] = -a;
                y[k] = -b;
                y[i] = R::one() + a + b;
                wedge.push(y);
            }
        }
    }
    let corner: Vec<Vec<R>> = (0..3).map(|i| ext.modified(vertex(i))).collect();
    out.push(scan(
        "extension is constant on each A_i",
        &wedge,
        tol12(),
        |y| match Region::of(y) {
            Region::A(i) => Some(max_abs_diff(&ext.eval(y), &corner[i])),
            _ => Some(R::infinity()),
        },
    ));

    let line = line_points::<R>(p.grid);
    let inner = p.strip() / R::lit(2.0);
    let scales = [1.0, 1.1, 1.5, 2.0, 4.0];
    let mut rays = Vec::new();
    for i in 0..3 {
        for t in &line {
            let q = face_point(i, t[0]);
            // start of the ray inside the strip, at x_i = inner
            let inside: [R; 3] = std::array::from_fn(|c| {
                if c == i {
                    inner
                } else {
                    q[c] * (R::one() - inner)
                }
            });
            rays.push((i, q, inside));
        }
    }
    let ray_pts: Vec<[R; 3]> = (0..rays.len())
        .map(|r| [R::lit(r as f64), R::zero(), R::zero()])
        .collect();
    out.push(scan(
        "extension is ray-constant on each B_i",
        &ray_pts,
        tol12(),
        |r| {
            let (i, q, inside) = rays[r[0].to_usize()?];
            let base = if strip_info(inside, &p).is_some_and(|s| s.onto_edge && s.opposite == i) {
                ext.modified(inside)
            } else {
                ext.eval(q)
            };
            let mut worst = R::zero();
            for s in scales {
                let s = R::lit(1.0 + s);
                let y: [R; 3] =
                    std::array::from_fn(|c| if c == i { R::one() - s } else { s * q[c] });
                if !matches!(Region::of(y), Region::B(b) if b == i) {
                    continue;
                }
                worst = worst.max(max_abs_diff(&ext.eval(y), &base));
            }
            Some(worst)
        },
    ));

    let gap = R::lit(1e-9);
    out.push(scan(
        "extension is continuous across the faces",
        &ray_pts,
        R::lit(1e-6),
        |r| {
            let (i, q, _) = rays[r[0].to_usize()?];
            let (j, k) = others(i);
            let mut y = q;
            y[i] = -gap;
            y[j] = q[j] + gap * q[j];
            y[k] = R::one() - y[i] - y[j];
            Some(max_abs_diff(&ext.eval(y), &ext.modified(q)))
        },
    ));
    out
}
