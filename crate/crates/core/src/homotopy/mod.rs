//! Components, edge-path fundamental groups, horn filling and the Kan
//! condition, bounded fibrant approximation and filling in simplicial groups.

mod horns;
mod moore;
mod pi;

pub use horns::{
    default_include_degenerate, enumerate_horns, fibrant_approx_bounded, find_filler, kan_report,
    FibrantApprox, HornInstance, KanReport,
};
pub use moore::{
    moore_filler, Combination, ConstantGroup, FreeAbelian, GroupHorn, SimplicialGroup,
};
pub use pi::{
    abelianized_pi1, invert_word, pi0, pi1_presentation, reduce_word, Components, GroupKind,
    GroupPresentation, GroupWord, Letter,
};

use crate::simplicial::SimplicialError;
use crate::BudgetExceeded;

#[derive(Debug, thiserror::Error)]
pub enum HomotopyError {
    #[error("complex has {0} components; choose one")]
    Disconnected(usize),
    #[error("bad basepoint: {0}")]
    BadBasepoint(String),
    #[error("bad presentation: {0}")]
    BadPresentation(String),
    #[error("bad horn: {0}")]
    BadHorn(String),
    #[error("internal consistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}
