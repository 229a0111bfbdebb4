//! Integral lattices presented by Gram matrices.
//!
//! A lattice here is `Zⁿ` equipped with the symmetric bilinear form given by
//! an integer Gram matrix; elements are integer row vectors in that basis.
//! When a lattice arises inside another one, `basis_in_ambient` records the
//! rows expressing its basis in the ambient coordinates.

use crate::error::{CoreError, CoreResult};
use crate::hnf::integral_kernel;
use crate::mat::{det_int, gram_pair, Mat};
use crate::{to_rational, IMat, QMat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact signature data of a symmetric form: `p` positive eigenvalues,
/// `q` negative ones, `k`-dimensional integral kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureStats {
    pub p: usize,
    pub q: usize,
    pub k: usize,
}

impl SignatureStats {
    /// The smaller of `p` and `q`; the induction depth of the indefinite
    /// algorithms.
    pub fn s(&self) -> usize {
        self.p.min(self.q)
    }

    /// The larger of `p` and `q`.
    pub fn r(&self) -> usize {
        self.p.max(self.q)
    }
}

/// A lattice with an integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    /// Human-readable name, used in reports and JSON round-trips.
    pub name: String,
    /// Symmetric integer Gram matrix.
    pub gram: IMat,
    /// Optional rows expressing this lattice's basis in an ambient lattice.
    pub basis_in_ambient: Option<IMat>,
    /// Rational rescaling factor relative to a reference form, recorded when
    /// a lattice is constructed as `L(c)`; purely informational.
    pub scale: BigRational,
}

impl Lattice {
    /// Construct from a symmetric Gram matrix.
    pub fn new(name: impl Into<String>, gram: IMat) -> CoreResult<Self> {
        if !gram.is_symmetric() {
            return Err(CoreError::NotSymmetric);
        }
        Ok(Lattice {
            name: name.into(),
            gram,
            basis_in_ambient: None,
            scale: BigRational::one(),
        })
    }

    /// Construct from machine-integer Gram entries (fixtures, tests).
    pub fn from_i64(name: impl Into<String>, n: usize, entries: &[i64]) -> CoreResult<Self> {
        Self::new(name, IMat::from_i64(n, n, entries))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// Determinant of the Gram matrix.
    pub fn det(&self) -> BigInt {
        det_int(&self.gram)
    }

    /// A lattice is even when every vector has even norm, i.e. the Gram
    /// diagonal is even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (self.gram.at(i, i) % BigInt::from(2)).is_zero())
    }

    /// Bilinear pairing of two lattice vectors.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        gram_pair(x, &self.gram, y)
    }

    /// Norm `x · G · xᵀ`.
    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.pair(x, x)
    }

    /// Exact signature by congruent diagonalization over the rationals.
    pub fn signature(&self) -> SignatureStats {
        signature_of(&to_rational(&self.gram))
    }

    /// Rescaled lattice `L(c)`: same module, form multiplied by `c`.
    pub fn rescale(&self, c: i64) -> Lattice {
        let ci = BigInt::from(c);
        Lattice {
            name: format!("{}({})", self.name, c),
            gram: self.gram.scale(&ci),
            basis_in_ambient: self.basis_in_ambient.clone(),
            scale: &self.scale * BigRational::from_integer(ci),
        }
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice {
            name: format!("{}+{}", self.name, other.name),
            gram: Mat::block_diag(&[self.gram.clone(), other.gram.clone()]),
            basis_in_ambient: None,
            scale: BigRational::one(),
        }
    }

    /// The saturated orthogonal complement `{x ∈ L : x · s = 0 ∀ s ∈ S}` of
    /// the row span of `s_rows` (rows given in this lattice's coordinates).
    ///
    /// The result's `basis_in_ambient` expresses its basis in `self`'s
    /// coordinates. The complement of an isotropic vector contains that
    /// vector; degenerate results are expected and allowed.
    pub fn orthogonal_complement(&self, s_rows: &IMat) -> CoreResult<Lattice> {
        if s_rows.cols() != self.rank() {
            return Err(CoreError::DimensionMismatch(format!(
                "generators have {} coordinates, lattice has rank {}",
                s_rows.cols(),
                self.rank()
            )));
        }
        // x · (G · Sᵀ) = 0 row-kernel; HNF kernels are saturated.
        let pairing = self.gram.mul(&s_rows.transpose());
        let basis = integral_kernel(&pairing);
        let gram = basis.mul(&self.gram).mul(&basis.transpose());
        Ok(Lattice {
            name: format!("{}-perp", self.name),
            gram,
            basis_in_ambient: Some(basis),
            scale: self.scale.clone(),
        })
    }

    /// Denominator of the dual lattice: the exponent of the discriminant
    /// group (largest elementary divisor of the Gram matrix).
    pub fn dual_exponent(&self) -> CoreResult<BigInt> {
        if self.det().is_zero() {
            return Err(CoreError::Degenerate);
        }
        let snf = crate::snf::smith_normal_form(&self.gram);
        Ok(snf.diagonal().pop().unwrap_or_else(BigInt::one))
    }
}

/// Congruent diagonalization signature count for a symmetric rational matrix.
pub fn signature_of(m: &QMat) -> SignatureStats {
    assert!(m.is_symmetric());
    let n = m.rows();
    let mut a = m.clone();
    let (mut p, mut q, mut k) = (0usize, 0usize, 0usize);
    let mut i = 0usize;
    while i < n {
        if a.at(i, i).is_zero() {
            // Prefer bringing a nonzero diagonal entry to position i.
            if let Some(j) = (i + 1..n).find(|&j| !a.at(j, j).is_zero()) {
                a.swap_rows(i, j);
                a.swap_cols(i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !a.at(i, j).is_zero()) {
                // Hyperbolic-style block: row addition creates 2·a[i][j] on
                // the diagonal while keeping the form congruent.
                let one = BigRational::one();
                a.add_row_multiple(i, j, &one);
                a.add_col_multiple(i, j, &one);
            } else {
                k += 1;
                i += 1;
                continue;
            }
        }
        let piv = a.at(i, i).clone();
        if piv.is_positive() {
            p += 1;
        } else {
            q += 1;
        }
        for j in i + 1..n {
            if a.at(j, i).is_zero() {
                continue;
            }
            let f = -(a.at(j, i).clone() / piv.clone());
            a.add_row_multiple(j, i, &f);
            a.add_col_multiple(j, i, &f);
        }
        i += 1;
    }
    SignatureStats { p, q, k }
}

/// The hyperbolic plane `U(c)`: Gram `[[0, c], [c, 0]]`.
pub fn hyperbolic_plane(c: i64) -> Lattice {
    let name = if c == 1 { "U".to_string() } else { format!("U({c})") };
    Lattice::from_i64(name, 2, &[0, c, c, 0]).expect("symmetric by construction")
}

/// The `E8` root lattice (positive definite, Cartan-matrix basis).
pub fn e8() -> Lattice {
    #[rustfmt::skip]
    let g: [i64; 64] = [
         2, -1,  0,  0,  0,  0,  0,  0,
        -1,  2, -1,  0,  0,  0,  0,  0,
         0, -1,  2, -1,  0,  0,  0,  0,
         0,  0, -1,  2, -1,  0,  0,  0,
         0,  0,  0, -1,  2, -1,  0, -1,
         0,  0,  0,  0, -1,  2, -1,  0,
         0,  0,  0,  0,  0, -1,  2,  0,
         0,  0,  0,  0, -1,  0,  0,  2,
    ];
    Lattice::from_i64("E8", 8, &g).expect("symmetric by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures_of_standard_blocks() {
        assert_eq!(hyperbolic_plane(1).signature(), SignatureStats { p: 1, q: 1, k: 0 });
        assert_eq!(e8().signature(), SignatureStats { p: 8, q: 0, k: 0 });
        assert_eq!(e8().rescale(-1).signature(), SignatureStats { p: 0, q: 8, k: 0 });
        let zero3 = Lattice::from_i64("zero3", 3, &[0; 9]).unwrap();
        assert_eq!(zero3.signature(), SignatureStats { p: 0, q: 0, k: 3 });
    }

    #[test]
    fn signature_invariant_under_unimodular_change() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let l = hyperbolic_plane(1).direct_sum(&e8().rescale(-1));
        let n = l.rank();
        for _ in 0..10 {
            // Random unimodular: product of elementary row operations.
            let mut p = IMat::identity(n);
            for _ in 0..30 {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                if a != b {
                    let f = BigInt::from(rng.gen_range(-2i64..=2));
                    p.add_row_multiple(a, b, &f);
                }
            }
            let g2 = p.mul(&l.gram).mul(&p.transpose());
            let l2 = Lattice::new("conj", g2).unwrap();
            assert_eq!(l2.signature(), l.signature());
        }
    }

    #[test]
    fn complement_of_u_summand_in_u_plus_e8_minus() {
        let l = hyperbolic_plane(1).direct_sum(&e8().rescale(-1));
        let s = IMat::from_i64(2, 10, &{
            let mut v = [0i64; 20];
            v[0] = 1;
            v[11] = 1;
            v
        });
        let c = l.orthogonal_complement(&s).unwrap();
        assert_eq!(c.rank(), 8);
        assert_eq!(c.gram, e8().rescale(-1).gram);
    }

    #[test]
    fn complement_of_isotropic_vector_contains_it() {
        let l = hyperbolic_plane(1).direct_sum(&hyperbolic_plane(2));
        let e1 = IMat::from_i64(1, 4, &[1, 0, 0, 0]);
        let c = l.orthogonal_complement(&e1).unwrap();
        assert_eq!(c.rank(), 3);
        // e1 itself lies in its own complement: signature has a kernel.
        let sig = c.signature();
        assert_eq!(sig.k, 1);
    }

    #[test]
    fn even_and_determinant() {
        let l = hyperbolic_plane(2);
        assert!(l.is_even());
        assert_eq!(l.det(), BigInt::from(-4));
        assert_eq!(l.dual_exponent().unwrap(), BigInt::from(2));
    }
}
