//! Scalar abstractions.
//!
//! Everything numerical in this crate is written against [`Real`], which is
//! implemented for `f32` and `f64`. The closed-form bound derivation only needs
//! field arithmetic and an ordering, so it is written against [`Field`] and can
//! run on exact rationals (`num_rational::Rational64`) as well as on floats.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Tolerance used when validating states (Hermiticity, unit trace, unit norm).
    fn state_tol() -> Self;
    /// Tolerance for algebraic identities that should hold up to round-off.
    fn exact_tol() -> Self;
    /// Allowed negative slack on eigenvalues for a state to count as positive.
    fn feasibility_tol() -> Self;
    /// Off-diagonal Frobenius norm (relative to the matrix scale) at which
    /// Jacobi iterations stop.
    fn jacobi_tol() -> Self;

    /// Converts an `f64` literal. Panics only for values the type cannot
    /// represent at all, which never happens for the literals used here.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn state_tol() -> Self {
        1e-9
    }
    fn exact_tol() -> Self {
        1e-12
    }
    fn feasibility_tol() -> Self {
        1e-12
    }
    fn jacobi_tol() -> Self {
        1e-14
    }
}

impl Real for f32 {
    fn state_tol() -> Self {
        1e-4
    }
    fn exact_tol() -> Self {
        1e-5
    }
    fn feasibility_tol() -> Self {
        1e-5
    }
    fn jacobi_tol() -> Self {
        1e-7
    }
}

/// Ordered field: enough structure to solve the linear boundary equations of
/// the closed-form bound exactly.
pub trait Field: Num + Signed + PartialOrd + Copy + Debug {
    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl<T> Field for T where T: Num + Signed + PartialOrd + Copy + Debug {}
