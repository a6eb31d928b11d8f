//! Finite simplicial sets presented by their nondegenerate simplices.

mod iso;
mod map;
mod product;
mod quotient;
mod set;
mod standard;
mod word;

pub use iso::{find_isomorphism, isomorphic, Isomorphism};
pub use map::SimplicialMap;
pub use product::{pair_is_nondegenerate, product, product_map, Product};
pub use quotient::{
    copies, disjoint_union, quotient_by_free_action, quotient_by_subcomplex, CellAction,
};
pub use set::{
    validate, validate_set, FaceRef, Presentation, SimplicialSet, ValidationReport, Violation,
};
pub use standard::{circle, cycle, delta, klein_bottle, standard, torus, StandardKind};
pub use word::{Cell, Op, SimplexWord};

use crate::BudgetExceeded;

#[derive(Debug, thiserror::Error)]
pub enum SimplicialError {
    #[error("malformed simplex word: {0}")]
    MalformedWord(String),
    #[error("invalid presentation ({} problems)", .0.violations.len())]
    Invalid(ValidationReport),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown simplex id {0}")]
    UnknownId(String),
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),
    #[error("subcomplex is not closed under faces: {0}")]
    NotFaceClosed(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("action is not free: {0}")]
    NotFree(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}
