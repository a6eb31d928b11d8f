//! Discrete groups, twisting functions and twisted cartesian products,
//! nerves and the universal bundle, and principal/covering checks.

mod group;
mod nerve;
mod twisting;

pub use group::{FiniteGroup, Group, PresentedGroup};
pub use nerve::{
    classifying_map, classifying_map_into, universal_check, universal_twisting, w_truncated,
    wbar_truncated, Nerve, UniversalReport,
};
pub use twisting::{
    bundle_isomorphism, bundles_isomorphic, covering_check, holonomy_subgroup, principal_check,
    pullback_twisting, tcp_build, CheckReport, PrincipalBundleData, TwistingFunction,
};

use crate::chains::ChainError;
use crate::homotopy::HomotopyError;
use crate::simplicial::SimplicialError;
use crate::BudgetExceeded;

#[derive(Debug, thiserror::Error)]
pub enum BundleError {
    #[error("not a group: {0}")]
    BadGroup(String),
    #[error("bad twisting data: {0}")]
    BadTwisting(String),
    #[error("cocycle condition fails on 2-simplex {simplex}: {detail}")]
    CocycleViolation { simplex: String, detail: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension {dim} exceeds the requested bound {max_dim}")]
    DimensionOverflow { dim: usize, max_dim: usize },
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}
