//! Computational simplicial homotopy theory on finite presentations.
//!
//! The crate covers finite simplicial sets given by nondegenerate simplices,
//! exact integral (co)homology through Smith normal forms, edge-path
//! fundamental groups, Kan-condition checks with bounded fibrant replacement,
//! principal bundles over discrete groups as twisted cartesian products with
//! their classifying maps and characteristic classes, and sampled checks of
//! the smooth simplex-reshaping maps (bump ramps, retractions, vertex
//! collapses) used when smoothing singular simplices.
//!
//! Exact code is generic over [`IntScalar`] and numerical code over [`Real`];
//! the aliases below fix the usual choices.

pub mod bundles;
pub mod chains;
pub mod charclass;
pub mod homotopy;
pub mod linalg;
pub mod scalar;
pub mod simplicial;
pub mod smooth;

use num_bigint::BigInt;

pub use scalar::{IntScalar, Real};

/// Arbitrary-precision integer matrix.
pub type ZMatrix = linalg::IntMatrix<BigInt>;
/// Normalized chain complex over `Z` with unbounded coefficients.
pub type ChainComplexZ = chains::ChainComplex<BigInt>;
pub type CochainClassZ = chains::CochainClass<BigInt>;
pub type CohomologyZ = chains::Cohomology<BigInt>;
pub type SmithZ = linalg::SmithForm<BigInt>;
pub type AffinePoint64 = smooth::AffinePoint<f64>;
pub type SmoothParams64 = smooth::SmoothParams<f64>;

/// Global caps. Operations that enumerate combinatorial objects refuse to go
/// past them instead of truncating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: usize,
    pub max_simplices: usize,
    pub max_horns: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: 6,
            max_simplices: 50_000,
            max_horns: 2_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("budget exceeded: {what} reached {count} (limit {limit})")]
pub struct BudgetExceeded {
    pub what: &'static str,
    pub count: u128,
    pub limit: u128,
}

impl BudgetExceeded {
    pub fn new(what: &'static str, count: u128, limit: usize) -> Self {
        BudgetExceeded {
            what,
            count,
            limit: limit as u128,
        }
    }
}
