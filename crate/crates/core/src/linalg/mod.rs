//! Exact integer linear algebra: dense matrices, Smith normal form and
//! subquotients of lattices.

mod lattice;
mod matrix;
mod smith;

pub use lattice::{column_basis, kernel_mod, FGAbelianGroup, Subquotient};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithForm};
