//! Discriminant groups and their torsion quadratic forms.
//!
//! For a nondegenerate even lattice `L` with Gram matrix `G`, the dual is
//! `L* = Zⁿ·G⁻¹` and the discriminant group is `D = L*/L ≅ Zⁿ/Zⁿ·G`.
//! Smith normal form `U·G·V = diag(d₁,…,dₙ)` turns membership in `Zⁿ·G`
//! into divisibility: `c ∈ Zⁿ·G ⟺ dᵢ | (c·V)ᵢ`, so the classes are the
//! tuples `(zᵢ mod dᵢ)` and the generator of the `i`-th cyclic factor is
//! row `i` of `(G·V)⁻¹`.
//!
//! The quadratic form `q: D → Q/2Z` and pairing `b: D → Q/Z` are computed on
//! dual-vector representatives. The 2-elementary even case is additionally
//! packaged as an `F₂`-vector-space form with bitmask arithmetic.

use crate::error::{CoreError, CoreResult};
use crate::lattice::Lattice;
use crate::mat::{gram_pair, inverse_field};
use crate::snf::smith_normal_form;
use crate::{to_rational, QMat, QVec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Reduce a rational to the canonical representative in `[0, m)`.
fn reduce_mod(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let q = (x / &m).floor();
    x - q * m
}

/// The discriminant group `D(L) = L*/L` of a nondegenerate even lattice,
/// with its torsion quadratic form.
#[derive(Clone, Debug)]
pub struct DiscriminantForm {
    /// Gram matrix of the underlying lattice.
    pub gram: QMat,
    /// Orders `dᵢ > 1` of the cyclic factors, in divisibility order.
    pub orders: Vec<BigInt>,
    /// Dual-vector representatives generating the cyclic factors (one row
    /// per entry of `orders`).
    pub gens: QMat,
    /// Column transform `V` of the Smith normal form of the Gram matrix.
    snf_v: QMat,
    /// Full Smith diagonal including trivial factors.
    snf_diag: Vec<BigInt>,
}

impl DiscriminantForm {
    pub fn of(lattice: &Lattice) -> CoreResult<Self> {
        if lattice.det().is_zero() {
            return Err(CoreError::Degenerate);
        }
        let g = &lattice.gram;
        let snf = smith_normal_form(g);
        let diag = snf.diagonal();
        let gv = g.mul(&snf.v);
        let gv_inv = inverse_field(&to_rational(&gv))?;
        let mut orders = Vec::new();
        let mut gen_rows = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if d.abs() > BigInt::one() {
                orders.push(d.abs());
                gen_rows.push(gv_inv.row(i).to_vec());
            }
        }
        let dim = lattice.rank();
        let gens = if gen_rows.is_empty() {
            QMat::zero(0, dim)
        } else {
            QMat::from_rows(gen_rows)
        };
        Ok(DiscriminantForm {
            gram: to_rational(g),
            orders,
            gens,
            snf_v: to_rational(&snf.v),
            snf_diag: diag,
        })
    }

    /// Number of nontrivial cyclic factors.
    pub fn num_factors(&self) -> usize {
        self.orders.len()
    }

    /// Group order `∏ dᵢ`.
    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    /// Coordinates `(zᵢ mod dᵢ)` of a dual vector, one entry per nontrivial
    /// cyclic factor. Errors when the vector is not in the dual lattice.
    pub fn class_of(&self, dual_vec: &[BigRational]) -> CoreResult<Vec<BigInt>> {
        let c = crate::mat::row_mul(dual_vec, &self.gram);
        let c_int: Option<Vec<BigInt>> = c.iter().map(crate::rat_to_int).collect();
        let c_int = c_int.ok_or_else(|| {
            CoreError::NotInLattice("vector does not pair integrally with the lattice".into())
        })?;
        let z = crate::mat::row_mul(
            &c_int.iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>(),
            &self.snf_v,
        );
        let mut coords = Vec::new();
        for (i, d) in self.snf_diag.iter().enumerate() {
            if d.abs() > BigInt::one() {
                let zi = crate::rat_to_int(&z[i]).expect("integral by construction");
                coords.push(zi.mod_floor(&d.abs()));
            }
        }
        Ok(coords)
    }

    /// Dual-vector representative of a class given by factor coordinates.
    pub fn vector_of(&self, coords: &[BigInt]) -> QVec {
        assert_eq!(coords.len(), self.num_factors());
        let dim = self.gram.rows();
        let mut v = vec![BigRational::zero(); dim];
        for (i, c) in coords.iter().enumerate() {
            let cq = BigRational::from_integer(c.clone());
            for (j, vj) in v.iter_mut().enumerate() {
                *vj += &cq * self.gens.at(i, j);
            }
        }
        v
    }

    /// Quadratic value `q(x) = x·G·xᵀ ∈ Q/2Z`, reduced to `[0, 2)`.
    pub fn q_value(&self, dual_vec: &[BigRational]) -> BigRational {
        reduce_mod(&gram_pair(dual_vec, &self.gram, dual_vec), 2)
    }

    /// Pairing `b(x, y) = x·G·yᵀ ∈ Q/Z`, reduced to `[0, 1)`.
    pub fn b_value(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        reduce_mod(&gram_pair(x, &self.gram, y), 1)
    }

    /// Whether every cyclic factor has order 2.
    pub fn is_two_elementary(&self) -> bool {
        self.orders.iter().all(|d| *d == BigInt::from(2))
    }
}

/// A finite quadratic form on `F₂^m` with `F₂`-valued `q` (even type):
/// `q(x) = Σᵢ xᵢ q(gᵢ) + Σ_{i<j} xᵢxⱼ B(i,j) (mod 2)` where `B = 2b`.
///
/// Points are bitmasks (`m ≤ 63`); bit `i` is the coordinate on the `i`-th
/// generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Quadratic {
    pub dim: usize,
    /// Row bitmasks of the symmetric `F₂` pairing matrix `B = 2b`.
    pub b_rows: Vec<u64>,
    /// Bitmask of `q` values on the generators.
    pub q_basis: u64,
}

impl F2Quadratic {
    /// Extract the `F₂` quadratic space from a 2-elementary even-type
    /// discriminant form. Fails when some factor has order ≠ 2 or some
    /// generator has non-integral `q` (odd type).
    pub fn from_discriminant(disc: &DiscriminantForm) -> CoreResult<Self> {
        if !disc.is_two_elementary() {
            return Err(CoreError::NotInLattice(
                "discriminant group is not 2-elementary".into(),
            ));
        }
        let dim = disc.num_factors();
        assert!(dim <= 63, "bitmask representation limited to 63 generators");
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut q_basis = 0u64;
        for i in 0..dim {
            let qi = disc.q_value(disc.gens.row(i));
            let qi_int = crate::rat_to_int(&qi).ok_or_else(|| {
                CoreError::NotInLattice("generator with non-integral q (odd type)".into())
            })?;
            if qi_int.is_odd() {
                q_basis |= 1 << i;
            }
        }
        let mut b_rows = vec![0u64; dim];
        for i in 0..dim {
            for j in 0..dim {
                let bij = disc.b_value(disc.gens.row(i), disc.gens.row(j));
                // b ∈ (1/2)Z/Z here; B = 2b ∈ {0, 1}.
                if bij == half {
                    b_rows[i] |= 1 << j;
                } else if !bij.is_zero() {
                    return Err(CoreError::NotInLattice(
                        "pairing not (1/2)-integral on a 2-elementary group".into(),
                    ));
                }
            }
        }
        Ok(F2Quadratic { dim, b_rows, q_basis })
    }

    /// `q(x) ∈ {0, 1}` for a point bitmask.
    pub fn point_q(&self, x: u64) -> u8 {
        let mut val = (self.q_basis & x).count_ones() as u64;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // Strictly-above-diagonal part of the quadratic refinement.
            val += (self.b_rows[i] & rest).count_ones() as u64;
        }
        (val & 1) as u8
    }

    /// Pairing `B(x, y) ∈ {0, 1}`.
    pub fn pair(&self, x: u64, y: u64) -> u8 {
        let mut val = 0u32;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            val += (self.b_rows[i] & y).count_ones();
        }
        (val & 1) as u8
    }

    /// Number of points (including 0) with `q = 0` and with `q = 1`.
    pub fn census(&self) -> (usize, usize) {
        let mut zero = 0usize;
        for x in 0..(1u64 << self.dim) {
            if self.point_q(x) == 0 {
                zero += 1;
            }
        }
        (zero, (1usize << self.dim) - zero)
    }

    /// Rank of the `F₂` pairing matrix.
    pub fn b_rank(&self) -> usize {
        let mut rows = self.b_rows.clone();
        let mut rank = 0usize;
        for col in 0..self.dim {
            let bit = 1u64 << col;
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) {
                rows.swap(rank, p);
                let pivot = rows[rank];
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != rank && *row & bit != 0 {
                        *row ^= pivot;
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    /// Arf invariant of a nondegenerate form, read off from the census:
    /// the majority value of `q` is the Arf invariant.
    pub fn arf(&self) -> u8 {
        let (zero, one) = self.census();
        assert_ne!(zero, one, "degenerate form has no Arf invariant");
        u8::from(one > zero)
    }

    /// Class bitmask of a dual vector with respect to the generator order of
    /// the discriminant form this space was built from.
    pub fn mask_of_class(coords: &[BigInt]) -> u64 {
        let mut mask = 0u64;
        for (i, c) in coords.iter().enumerate() {
            if c.is_odd() {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// All nonzero point masks, in increasing order.
    pub fn nonzero_points(&self) -> impl Iterator<Item = u64> {
        1..(1u64 << self.dim)
    }
}

/// Convenience: dual basis rows `G⁻¹` of a nondegenerate lattice.
pub fn dual_basis(lattice: &Lattice) -> CoreResult<QMat> {
    inverse_field(&to_rational(&lattice.gram))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{e8, hyperbolic_plane};
    use num_traits::ToPrimitive;

    #[test]
    fn unimodular_lattice_has_trivial_discriminant() {
        let u = hyperbolic_plane(1);
        let d = DiscriminantForm::of(&u).unwrap();
        assert_eq!(d.num_factors(), 0);
        assert_eq!(d.order(), BigInt::one());
        let e = e8();
        assert_eq!(DiscriminantForm::of(&e).unwrap().num_factors(), 0);
    }

    #[test]
    fn scaled_hyperbolic_plane_discriminant() {
        let u2 = hyperbolic_plane(2);
        let d = DiscriminantForm::of(&u2).unwrap();
        assert_eq!(d.orders, vec![BigInt::from(2), BigInt::from(2)]);
        let f2 = F2Quadratic::from_discriminant(&d).unwrap();
        // The three nonzero classes take q-values 0, 0, 1.
        let mut vals: Vec<u8> = f2.nonzero_points().map(|x| f2.point_q(x)).collect();
        vals.sort_unstable();
        assert_eq!(vals, vec![0, 0, 1]);
        assert_eq!(f2.b_rank(), 2);
    }

    fn rank_twelve_fixture() -> Lattice {
        hyperbolic_plane(1)
            .direct_sum(&hyperbolic_plane(2))
            .direct_sum(&e8().rescale(-2))
    }

    #[test]
    fn rank_twelve_fixture_discriminant_structure() {
        let n = rank_twelve_fixture();
        assert_eq!(n.det(), BigInt::from(1024));
        let d = DiscriminantForm::of(&n).unwrap();
        assert_eq!(d.num_factors(), 10);
        assert!(d.is_two_elementary());
        assert_eq!(d.order(), BigInt::from(1024));
        // Generators pair integrally with the lattice and reduce to the unit
        // coordinate vectors.
        for i in 0..10 {
            let coords = d.class_of(d.gens.row(i)).unwrap();
            let expected: Vec<BigInt> =
                (0..10).map(|j| BigInt::from(u64::from(j == i))).collect();
            assert_eq!(coords, expected);
        }
    }

    #[test]
    fn rank_twelve_fixture_f2_census_and_arf() {
        let n = rank_twelve_fixture();
        let d = DiscriminantForm::of(&n).unwrap();
        let f2 = F2Quadratic::from_discriminant(&d).unwrap();
        assert_eq!(f2.dim, 10);
        assert_eq!(f2.b_rank(), 10);
        assert_eq!(f2.census(), (528, 496));
        assert_eq!(f2.arf(), 0);
    }

    #[test]
    fn q_is_well_defined_modulo_lattice() {
        let n = rank_twelve_fixture();
        let d = DiscriminantForm::of(&n).unwrap();
        let g0: Vec<BigRational> = d.gens.row(0).to_vec();
        // Shift a representative by a lattice vector: q is unchanged mod 2Z.
        let mut shifted = g0.clone();
        shifted[3] += BigRational::from_integer(BigInt::from(5));
        shifted[11] -= BigRational::from_integer(BigInt::from(2));
        assert_eq!(d.q_value(&g0), d.q_value(&shifted));
        assert_eq!(d.class_of(&g0).unwrap(), d.class_of(&shifted).unwrap());
    }

    #[test]
    fn point_q_matches_rational_q_on_fixture() {
        let n = rank_twelve_fixture();
        let d = DiscriminantForm::of(&n).unwrap();
        let f2 = F2Quadratic::from_discriminant(&d).unwrap();
        for mask in [0u64, 1, 3, 7, 0x155, 0x3ff, 0x2aa, 0x123] {
            let coords: Vec<BigInt> =
                (0..10).map(|i| BigInt::from((mask >> i) & 1)).collect();
            let v = d.vector_of(&coords);
            let q = d.q_value(&v);
            let q_int = crate::rat_to_int(&q).expect("even type");
            assert_eq!(
                f2.point_q(mask) as i64,
                q_int.to_i64().unwrap() & 1,
                "mask {mask:#x}"
            );
        }
    }
}
