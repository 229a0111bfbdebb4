//! Definite integral quadratic forms.

use crate::error::{EnumError, EnumResult};
use exact_core::IMat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// A positive definite integral Gram matrix. Negative definite input is
/// accepted and negated once on construction, so enumeration and norms
/// always refer to the positive definite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiniteForm {
    gram: IMat,
    negated: bool,
}

impl DefiniteForm {
    pub fn new(gram: IMat) -> EnumResult<Self> {
        if gram.rows() != gram.cols() || gram.rows() == 0 {
            return Err(EnumError::NotDefinite(format!(
                "gram must be square and nonempty, got {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric() {
            return Err(EnumError::NotDefinite("gram is not symmetric".into()));
        }
        let negated = gram.at(0, 0).is_negative();
        let gram = if negated { gram.map(|x| -x.clone()) } else { gram };
        // Sylvester's criterion: all leading principal minors positive.
        for k in 1..=gram.rows() {
            let idx: Vec<usize> = (0..k).collect();
            let minor = exact_core::mat::det_int(&gram.submatrix(&idx, &idx));
            if !minor.is_positive() {
                return Err(EnumError::NotDefinite(format!(
                    "leading principal minor {k} is {minor}"
                )));
            }
        }
        Ok(DefiniteForm { gram, negated })
    }

    pub fn from_i64(rank: usize, entries: &[i64]) -> EnumResult<Self> {
        Self::new(IMat::from_i64(rank, rank, entries))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// The positive definite Gram matrix in use.
    pub fn gram(&self) -> &IMat {
        &self.gram
    }

    /// True when the constructor received a negative definite matrix.
    pub fn was_negated(&self) -> bool {
        self.negated
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        assert_eq!(x.len(), self.rank());
        assert_eq!(y.len(), self.rank());
        let mut acc = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    acc += xi * self.gram.at(i, j) * yj;
                }
            }
        }
        acc
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.pair(x, x)
    }
}
