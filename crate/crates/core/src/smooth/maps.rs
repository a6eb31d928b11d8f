use super::bump::{bump_mu, phi};
use super::{SmoothError, SmoothParams};
use crate::Real;

fn check_in_simplex<R: Real>(x: &[R; 3]) -> Result<(), SmoothError> {
    let tol = R::sum_tolerance();
    let sum = x[0] + x[1] + x[2];
    if (sum - R::one()).abs() > tol {
        return Err(SmoothError::NotAffine(format!("{sum}")));
    }
    if x.iter().any(|&c| c < -tol) {
        return Err(SmoothError::OutsideSimplex(format!(
            "({}, {}, {})",
            x[0], x[1], x[2]
        )));
    }
    Ok(())
}

/// The map `F` of `Δ²`: on `U = {x₁ < ½}`, in coordinates
/// `(u, y) = (x₂/(1-x₁), x₁)`, `u ↦ φ(y)μ(u) + (1-φ(y))u`; identity elsewhere.
pub fn map_f<R: Real>(x: [R; 3], p: &SmoothParams<R>) -> Result<[R; 3], SmoothError> {
    check_in_simplex(&x)?;
    let half = R::lit(0.5);
    let y = x[1];
    if y >= half {
        return Ok(x);
    }
    let rest = R::one() - y;
    let u = x[2] / rest;
    let w = phi(y, p.phi_window);
    let u2 = w * bump_mu(u, p.mu_window) + (R::one() - w) * u;
    Ok([(R::one() - u2) * rest, y, u2 * rest])
}

/// Retraction of `Δ²` onto `Λ²₁ = {x₀ = 0} ∪ {x₂ = 0}`: slide along
/// `(-1, 2, -1)` until the smaller of `x₀`, `x₂` vanishes.
pub fn retraction_r<R: Real>(x: [R; 3]) -> Result<[R; 3], SmoothError> {
    check_in_simplex(&x)?;
    let [a, b, c] = x;
    Ok(if a <= c {
        [R::zero(), b + a + a, c - a]
    } else {
        [a - c, b + c + c, R::zero()]
    })
}

/// `(x₀, x₁, x₂) ↦ (x₀ + x₂, x₁)`
pub fn degenerate_s<R: Real>(x: [R; 3]) -> [R; 2] {
    [x[0] + x[2], x[1]]
}

/// `(x₀, x₁, x₂) ↦ (x₀, x₁ + x₂)`
pub fn degenerate_s1<R: Real>(x: [R; 3]) -> [R; 2] {
    [x[0], x[1] + x[2]]
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Vertex collapse: scales toward vertex `i` on `V_i(ε₀)` so that
/// `V_i(ε₀/2)` goes to `(i)`; identity off `∪ V_i(ε₀)`.
pub fn psi2_0<R: Real>(x: [R; 3], p: &SmoothParams<R>) -> Result<[R; 3], SmoothError> {
    check_in_simplex(&x)?;
    Ok(psi0_raw(x, p))
}

fn psi0_raw<R: Real>(x: [R; 3], p: &SmoothParams<R>) -> [R; 3] {
    let half = p.eps0 / R::lit(2.0);
    for i in 0..3 {
        let (j, k) = others(i);
        let rho = x[j] + x[k];
        if rho < p.eps0 {
            let kappa = bump_mu(rho, (half, p.eps0));
            let mut out = x;
            out[j] = kappa * x[j];
            out[k] = kappa * x[k];
            out[i] = R::one() - out[j] - out[k];
            return out;
        }
    }
    x
}

/// Where `ψ²₁` acts: the strip along the edge opposite `opposite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StripInfo {
    pub opposite: usize,
    /// The point is sent onto the edge itself.
    pub onto_edge: bool,
}

fn strip_weights<R: Real>(x: &[R; 3], p: &SmoothParams<R>) -> Option<(usize, R, R)> {
    let d = p.strip();
    let window = (p.eps0 / R::lit(8.0), p.eps0 / R::lit(4.0));
    for i in 0..3 {
        let s = x[i];
        if s >= d + d {
            continue;
        }
        let (j, k) = others(i);
        let kappa = bump_mu(x[j], window) * bump_mu(x[k], window);
        if kappa > R::zero() {
            let factor = R::one() - kappa * (R::one() - bump_mu(s, (d, d + d)));
            return Some((i, kappa, factor));
        }
    }
    None
}

pub fn strip_info<R: Real>(x: [R; 3], p: &SmoothParams<R>) -> Option<StripInfo> {
    strip_weights(&x, p).map(|(i, _, f)| StripInfo {
        opposite: i,
        onto_edge: f == R::zero(),
    })
}

/// Edge push: inside the strip along the edge opposite `(i)` (away from the
/// edge's ends) points slide along the ray from `(i)`, landing on the edge
/// where the strip is thinnest.
pub fn psi2_1<R: Real>(x: [R; 3], p: &SmoothParams<R>) -> Result<[R; 3], SmoothError> {
    check_in_simplex(&x)?;
    Ok(psi1_raw(x, p))
}

fn psi1_raw<R: Real>(x: [R; 3], p: &SmoothParams<R>) -> [R; 3] {
    let Some((i, _, factor)) = strip_weights(&x, p) else {
        return x;
    };
    let (j, k) = others(i);
    let s = x[i];
    let s2 = s * factor;
    let scale = (R::one() - s2) / (R::one() - s);
    let mut out = x;
    out[i] = s2;
    out[j] = x[j] * scale;
    out[k] = R::one() - s2 - out[j];
    out
}

/// `ψ² = ψ²₀ ∘ ψ²₁`.
pub fn psi2<R: Real>(x: [R; 3], p: &SmoothParams<R>) -> Result<[R; 3], SmoothError> {
    check_in_simplex(&x)?;
    Ok(psi0_raw(psi1_raw(x, p), p))
}

/// Union of `V_i(ε₀)` and the moving part of the edge strips.
pub fn psi2_support<R: Real>(x: [R; 3], p: &SmoothParams<R>) -> bool {
    let near_vertex = (0..3).any(|i| x[i] > R::one() - p.eps0);
    near_vertex || strip_weights(&x, p).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> SmoothParams<f64> {
        SmoothParams::default()
    }

    #[test]
    fn f_fixes_vertices() {
        for i in 0..3 {
            let mut v = [0.0; 3];
            v[i] = 1.0;
            assert_eq!(map_f(v, &p()).unwrap(), v);
        }
        assert!(map_f([0.5, 0.7, -0.2], &p()).is_err());
    }

    #[test]
    fn r_on_barycenter() {
        let third = 1.0 / 3.0;
        let r: [f64; 3] = retraction_r([third, third, third]).unwrap();
        // the ray in direction (-1, 2, -1) from the barycenter meets x₀ = x₂ = 0 at (1)
        assert!((r[1] - 1.0).abs() < 1e-15 && r[0] == 0.0);
        let r: [f64; 3] = retraction_r([0.5, 0.3, 0.2]).unwrap();
        assert_eq!(r[2], 0.0);
        assert!((r[0] - 0.3).abs() < 1e-15 && (r[1] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn psi_collapses_vertex_neighborhood() {
        let x = [0.95, 0.03, 0.02];
        assert_eq!(psi2(x, &p()).unwrap(), [1.0, 0.0, 0.0]);
        let b = [1.0 / 3.0; 3];
        assert_eq!(psi2(b, &p()).unwrap(), b);
    }

    #[test]
    fn strip_push_lands_on_edge() {
        let x = [0.5, 0.495, 0.005];
        let y = psi2_1(x, &p()).unwrap();
        assert_eq!(y[2], 0.0);
        // same ray from (2): ratio x₀ : x₁ kept
        assert!((y[0] / y[1] - x[0] / x[1]).abs() < 1e-12);
        assert_eq!(
            strip_info(x, &p()),
            Some(StripInfo {
                opposite: 2,
                onto_edge: true
            })
        );
    }
}
