//! Rational matrix groups preserving a designated lattice and its Gram
//! matrix, the common currency of this crate.

use exact_core::mat::inverse_field;
use exact_core::{to_integral, to_rational, IMat, QMat};
use num_traits::Signed;

use crate::error::{GroupError, GroupResult};
use crate::latorbit::{lattice_key, LatKey};

/// A finitely generated subgroup of GL_n(Q) whose generators preserve both
/// a nondegenerate symmetric bilinear form (exactly) and a designated
/// full-rank lattice in Q^n. Matrices act on row vectors from the right.
#[derive(Clone, Debug)]
pub struct IsoGroup {
    gram: QMat,
    basis: QMat,
    gens: Vec<QMat>,
    key: LatKey,
}

impl IsoGroup {
    /// Build a group after verifying every generator against the Gram and
    /// the lattice. `basis` rows span the preserved lattice in the ambient
    /// coordinates the generators act on.
    pub fn new(gram: QMat, basis: QMat, gens: Vec<QMat>) -> GroupResult<Self> {
        let n = gram.rows();
        if !gram.is_square() || !gram.is_symmetric() {
            return Err(GroupError::Domain(
                "gram matrix must be square and symmetric".into(),
            ));
        }
        if basis.rows() != n || basis.cols() != n {
            return Err(GroupError::Domain(format!(
                "lattice basis must be {n}x{n} (full rank), got {}x{}",
                basis.rows(),
                basis.cols()
            )));
        }
        let key = lattice_key(&basis);
        if key.hermite.rows() != n {
            return Err(GroupError::Domain(
                "lattice basis rows are linearly dependent".into(),
            ));
        }
        let group = IsoGroup {
            gram,
            basis,
            gens: Vec::new(),
            key,
        };
        let mut out = group;
        for g in gens {
            out.check_member(&g)?;
            out.gens.push(g);
        }
        Ok(out)
    }

    /// Group with integral Gram and generators preserving Z^n.
    pub fn from_integral(gram: &IMat, gens: Vec<IMat>) -> GroupResult<Self> {
        let n = gram.rows();
        IsoGroup::new(
            to_rational(gram),
            QMat::identity(n),
            gens.iter().map(to_rational).collect(),
        )
    }

    /// Verify that `p` is an isometry of the Gram preserving the lattice.
    pub fn check_member(&self, p: &QMat) -> GroupResult<()> {
        let n = self.gram.rows();
        if p.rows() != n || p.cols() != n {
            return Err(GroupError::Domain(format!(
                "matrix is {}x{}, ambient dimension is {n}",
                p.rows(),
                p.cols()
            )));
        }
        if p.mul(&self.gram).mul(&p.transpose()) != self.gram {
            return Err(GroupError::NotIsometry(
                "P·Gram·Pᵀ ≠ Gram".into(),
            ));
        }
        if lattice_key(&self.basis.mul(p)) != self.key {
            return Err(GroupError::NotPreserving(
                "generator moves the designated lattice".into(),
            ));
        }
        Ok(())
    }

    /// Whether `p` is an isometry of the Gram preserving the lattice
    /// (membership in the ambient isometry group of the pair, not
    /// necessarily in the subgroup generated by `gens`).
    pub fn is_member(&self, p: &QMat) -> bool {
        self.check_member(p).is_ok()
    }

    pub fn ambient_dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    pub fn gens(&self) -> &[QMat] {
        &self.gens
    }

    pub fn key(&self) -> &LatKey {
        &self.key
    }

    /// Generators as integer matrices, when the preserved lattice is Z^n
    /// in the ambient coordinates and the generators are integral.
    pub fn integral_gens(&self) -> Option<Vec<IMat>> {
        self.gens.iter().map(to_integral).collect()
    }

    /// Replace the designated lattice by another lattice invariant under
    /// the same generators (verified).
    pub fn with_basis(&self, basis: QMat) -> GroupResult<Self> {
        IsoGroup::new(self.gram.clone(), basis, self.gens.clone())
    }
}

/// Exact check P·gram·Pᵀ = gram.
pub fn is_isometry(gram: &QMat, p: &QMat) -> bool {
    p.rows() == gram.rows()
        && p.cols() == gram.rows()
        && p.mul(gram).mul(&p.transpose()) == *gram
}

/// Exact check P·g2·Pᵀ = g1, the transport condition for a map written in
/// coordinates from a (g1-)lattice to a (g2-)lattice.
pub fn is_gram_transport(g1: &QMat, g2: &QMat, p: &QMat) -> bool {
    p.mul(g2).mul(&p.transpose()) == *g1
}

/// Integral with determinant ±1.
pub fn is_unimodular_int(m: &IMat) -> bool {
    m.is_square() && exact_core::mat::det_int(m).abs() == num_bigint::BigInt::from(1)
}

/// Rational matrix that is integral and unimodular.
pub fn as_unimodular(m: &QMat) -> Option<IMat> {
    let i = to_integral(m)?;
    is_unimodular_int(&i).then_some(i)
}

/// Inverse of a rational matrix, as a `GroupResult`.
pub fn inv(m: &QMat) -> GroupResult<QMat> {
    Ok(inverse_field(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::lattice::hyperbolic_plane;

    #[test]
    fn constructor_rejects_non_isometries() {
        let u = hyperbolic_plane(1);
        let swap = IMat::from_i64(2, 2, &[0, 1, 1, 0]);
        let shear = IMat::from_i64(2, 2, &[1, 1, 0, 1]);
        assert!(IsoGroup::from_integral(&u.gram, vec![swap]).is_ok());
        assert!(matches!(
            IsoGroup::from_integral(&u.gram, vec![shear]),
            Err(GroupError::NotIsometry(_))
        ));
    }

    #[test]
    fn constructor_rejects_lattice_movers() {
        // diag(2, 1/2) is an isometry of U but moves Z².
        let u = hyperbolic_plane(1);
        let g = QMat::from_rows(vec![
            vec![
                num_rational::BigRational::from_integer(2.into()),
                num_rational::BigRational::from_integer(0.into()),
            ],
            vec![
                num_rational::BigRational::from_integer(0.into()),
                num_rational::BigRational::new(1.into(), 2.into()),
            ],
        ]);
        let r = IsoGroup::new(to_rational(&u.gram), QMat::identity(2), vec![g]);
        assert!(matches!(r, Err(GroupError::NotPreserving(_))));
    }
}
