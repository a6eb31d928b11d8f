//! Scalar traits shared by the exact and the numerical halves of the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{Float, FromPrimitive, Signed, ToPrimitive};

/// Exact integer ring used for boundary matrices, Smith normal forms and
/// cochains. Implemented for `i64`, `i128` and `num_bigint::BigInt`.
///
/// Fixed-width types overflow silently on large inputs; homology entry points
/// re-exported at the crate root use `BigInt`.
pub trait IntScalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn of(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("integer scalar holds every i64")
    }
}

impl<T> IntScalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Floating-point scalar for the sampled smooth constructions.
pub trait Real: Float + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static {
    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("float literal")
    }

    /// Tolerance used when checking that barycentric coordinates sum to one.
    fn sum_tolerance() -> Self {
        let floor = Self::lit(1e-12);
        let eps = Self::epsilon() * Self::lit(16.0);
        if eps > floor {
            eps
        } else {
            floor
        }
    }
}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static {}
