//! Scalar trait bundles for generic exact linear algebra.
//!
//! Three levels of capability are distinguished:
//!
//! * [`Scalar`] — exact commutative ring with ordering; enough for matrix
//!   arithmetic. Implemented by `BigInt`, `BigRational` and `i64` (the last
//!   with the workspace-wide `overflow-checks = on` so that silent wraparound
//!   cannot corrupt an exact computation).
//! * [`IntScalar`] — Euclidean integers; enough for Hermite/Smith normal
//!   forms and exact-division (Bareiss) determinants.
//! * [`FieldScalar`] — exact fields; enough for Gaussian elimination,
//!   inverses and congruent diagonalization.

use num_traits::{FromPrimitive, One, Signed, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact ordered commutative ring scalar.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Ord
    + Debug
    + Display
    + Zero
    + One
    + Signed
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Embed a machine integer.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("i64 embeds into every exact scalar")
    }
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Eq
        + Ord
        + Debug
        + Display
        + Zero
        + One
        + Signed
        + FromPrimitive
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Euclidean integer scalar: exact division where divisibility is known,
/// gcd, and floor division with remainder.
pub trait IntScalar: Scalar + num_integer::Integer + Div<Output = Self> {}

impl<T> IntScalar for T where T: Scalar + num_integer::Integer + Div<Output = T> {}

/// Exact field scalar.
pub trait FieldScalar: Scalar + Div<Output = Self> {
    /// Multiplicative inverse; panics on zero (callers check first).
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl FieldScalar for num_rational::BigRational {}
