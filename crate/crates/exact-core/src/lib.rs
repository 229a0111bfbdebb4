//! Exact integer and rational linear algebra for lattice computations.
//!
//! This crate is the arithmetic foundation of the workspace: dense matrices
//! over exact scalars, Hermite and Smith normal forms with unimodular
//! transforms, integral lattices given by Gram matrices, dual lattices, and
//! discriminant groups with their finite quadratic forms.
//!
//! Conventions used throughout the workspace:
//!
//! * **Row vectors acting from the right.** A lattice element is a row vector
//!   `x`; an isometry is a matrix `P` with `P · G · Pᵀ = G` acting by
//!   `x ↦ x · P`.
//! * **No floating point.** Every scalar is an exact integer or rational;
//!   rationals appear only where an algorithm genuinely demands them (dual
//!   vectors, congruent diagonalization).
//!
//! The matrix type [`Mat`] is generic over the scalar through small trait
//! bundles built on `num-traits`; the concrete aliases [`IMat`] (arbitrary
//! precision integers), [`QMat`] (arbitrary precision rationals) and
//! [`SmallMat`] (machine integers with overflow checks, for hot loops whose
//! value ranges are provably small) are the types the rest of the workspace
//! uses.

pub mod disc;
pub mod error;
pub mod hnf;
pub mod json;
pub mod lattice;
pub mod mat;
pub mod scalar;
pub mod snf;

pub use disc::{DiscriminantForm, F2Quadratic};
pub use error::CoreError;
pub use hnf::{hermite_normal_form, integral_kernel, solve_integral, HnfResult};
pub use json::{lattice_from_json, lattice_to_json};
pub use lattice::{Lattice, SignatureStats};
pub use mat::{Mat, Vector};
pub use snf::{smith_normal_form, SnfResult};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Dense matrix of arbitrary-precision integers.
pub type IMat = Mat<BigInt>;
/// Dense matrix of arbitrary-precision rationals.
pub type QMat = Mat<BigRational>;
/// Dense matrix of checked machine integers for provably small value ranges.
pub type SmallMat = Mat<i64>;

/// Row vector of arbitrary-precision integers.
pub type IVec = Vector<BigInt>;
/// Row vector of arbitrary-precision rationals.
pub type QVec = Vector<BigRational>;

/// Convert an integer matrix to a rational one.
pub fn to_rational(m: &IMat) -> QMat {
    m.map(|x| BigRational::from_integer(x.clone()))
}

/// Convert an integer vector to a rational one.
pub fn vec_to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Convert a rational with unit denominator to an integer.
///
/// Returns `None` if the denominator is non-trivial.
pub fn rat_to_int(x: &BigRational) -> Option<BigInt> {
    if num_traits::One::is_one(x.denom()) {
        Some(x.numer().clone())
    } else {
        None
    }
}

/// Convert a rational matrix with unit denominators back to integers.
///
/// Returns `None` if any entry has a non-trivial denominator.
pub fn to_integral(m: &QMat) -> Option<IMat> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for x in m.entries() {
        if !num_traits::One::is_one(x.denom()) {
            return None;
        }
        out.push(x.numer().clone());
    }
    Some(Mat::from_vec(m.rows(), m.cols(), out))
}

/// Convert a small-integer matrix to arbitrary precision.
pub fn small_to_big(m: &SmallMat) -> IMat {
    m.map(|x| BigInt::from(*x))
}

/// Convert an arbitrary-precision matrix to machine integers.
///
/// Returns `None` if any entry is out of `i64` range.
pub fn big_to_small(m: &IMat) -> Option<SmallMat> {
    use num_traits::ToPrimitive;
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for x in m.entries() {
        out.push(x.to_i64()?);
    }
    Some(Mat::from_vec(m.rows(), m.cols(), out))
}
