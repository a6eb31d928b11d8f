//! Sampled checks of the explicit maps used to reshape singular simplices:
//! smooth ramps, the face-adjusting map `F`, the retraction of `Δ²` onto the
//! horn `Λ²₁`, the vertex and edge collapses `ψ²₀`, `ψ²₁`, tameness of
//! sampled paths, and the extension of a modified 2-simplex to `𝔸²`.
//!
//! Smoothness itself cannot be checked from samples; everything here tests
//! the pointwise properties the constructions are used for.

mod bump;
mod checks;
mod maps;
mod tame;

pub use bump::{bump_mu, phi, smooth_step};
pub use checks::{
    check_degenerating_map, check_extension, check_tame_composite, check_map_f, check_psi2,
    check_retraction, grid_points, GridReport,
};
pub use maps::{
    degenerate_s, degenerate_s1, map_f, psi2, psi2_0, psi2_1, psi2_support, retraction_r,
    strip_info, StripInfo,
};
pub use tame::{sample_path, sigma_extension, tameness_check, Region, SigmaExtension};

use crate::Real;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SmoothError {
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("point is not in the simplex: {0}")]
    OutsideSimplex(String),
    #[error("coordinates sum to {0}, not 1")]
    NotAffine(String),
    #[error("sample grid too coarse: spacing {spacing} > δ/4 = {limit}")]
    GridTooCoarse { spacing: String, limit: String },
    #[error("constancy precondition fails at {point}: {detail}")]
    Precondition { point: String, detail: String },
}

/// A point of `𝔸^p`: `p + 1` barycentric coordinates summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinePoint<R> {
    coords: Vec<R>,
}

impl<R: Real> AffinePoint<R> {
    pub fn new(coords: Vec<R>) -> Result<Self, SmoothError> {
        let sum = coords.iter().fold(R::zero(), |a, &b| a + b);
        if coords.is_empty() || (sum - R::one()).abs() > R::sum_tolerance() {
            return Err(SmoothError::NotAffine(format!("{sum}")));
        }
        Ok(AffinePoint { coords })
    }

    pub fn vertex(p: usize, i: usize) -> Self {
        AffinePoint {
            coords: (0..=p)
                .map(|j| if i == j { R::one() } else { R::zero() })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    /// All coordinates `≥ -tol`.
    pub fn in_simplex(&self) -> bool {
        self.coords.iter().all(|&x| x >= -R::sum_tolerance())
    }
}

impl<R: Real> From<[R; 3]> for AffinePoint<R> {
    fn from(x: [R; 3]) -> Self {
        AffinePoint { coords: x.to_vec() }
    }
}

/// Parameters shared by the constructions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothParams<R> {
    /// Vertex-neighborhood size, `0 < ε₀ < ½`.
    pub eps0: R,
    /// `μ` rises from 0 to 1 across this window inside `(0, 1)`.
    pub mu_window: (R, R),
    /// `φ` falls from 1 to 0 across this window inside `(0, ½)`.
    pub phi_window: (R, R),
    /// Barycentric grid resolution (points `(i/n, j/n, ·)`).
    pub grid: usize,
}

impl<R: Real> Default for SmoothParams<R> {
    fn default() -> Self {
        SmoothParams {
            eps0: R::lit(0.2),
            mu_window: (R::lit(0.25), R::lit(0.75)),
            phi_window: (R::lit(0.1), R::lit(0.4)),
            grid: 200,
        }
    }
}

impl<R: Real> SmoothParams<R> {
    pub fn with_eps0(eps0: R) -> Self {
        SmoothParams {
            eps0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), SmoothError> {
        let half = R::lit(0.5);
        if !(self.eps0 > R::zero() && self.eps0 < half) {
            return Err(SmoothError::BadParameter(format!(
                "ε₀ = {} must lie in (0, 1/2)",
                self.eps0
            )));
        }
        let (a, b) = self.mu_window;
        if !(R::zero() < a && a < b && b < R::one()) {
            return Err(SmoothError::BadParameter(format!(
                "μ window ({a}, {b}) must satisfy 0 < a < b < 1"
            )));
        }
        let (c, d) = self.phi_window;
        if !(R::zero() < c && c < d && d < half) {
            return Err(SmoothError::BadParameter(format!(
                "φ window ({c}, {d}) must satisfy 0 < c < d < 1/2"
            )));
        }
        if self.grid < 4 {
            return Err(SmoothError::BadParameter(
                "grid must have at least 4 subdivisions".into(),
            ));
        }
        Ok(())
    }

    /// Width of the edge strips on which `ψ²₁` pushes points onto an edge.
    pub fn strip(&self) -> R {
        self.eps0 / R::lit(20.0)
    }
}
