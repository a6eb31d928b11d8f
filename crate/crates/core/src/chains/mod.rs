//! Normalized chain complexes, (co)homology with `Z` and `Z/n` coefficients,
//! induced maps, cup products and chain-homotopy checks.

mod complex;
mod cup;
mod homology;

pub use crate::linalg::FGAbelianGroup;
pub use complex::{
    chain_complex, chain_complex_with, chain_homotopy_check, induced_chain_map, ChainComplex,
    ChainMap, Coeff,
};
pub use cup::{cohomology_through, cup_cochain, cup_product, cup_product_with, unit_cocycle};
pub use homology::{
    cohomology, homology, homology_degree, induced_on_homology, CochainClass, Cohomology,
    HomologyGroup,
};

use crate::simplicial::SimplicialError;
use crate::BudgetExceeded;

#[derive(Debug, thiserror::Error)]
pub enum ChainError {
    #[error("degree {degree} is out of range (complex stops at {top})")]
    Range { degree: usize, top: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coefficients: {0}")]
    BadCoefficients(String),
    #[error("cochain of degree {0} is not a cocycle")]
    NotACocycle(usize),
    #[error("internal consistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}
