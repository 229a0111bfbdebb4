//! Reduction of vectors into the fundamental chamber and wall subsets.

use crate::chamber::CoxeterChamber;
use crate::error::{ChamberError, ChamberResult};
use exact_core::mat::inverse_field;
use exact_core::{to_rational, IMat, IVec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

const REFLECTION_CAP: u64 = 1_000_000;

/// A vector in the closed chamber, with its coordinates on the rays, its
/// norm, primitivity, and the labels of the walls it lies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberVector {
    /// Coefficients on the rays (all ≥ 0); requires the rays to be a basis.
    pub coords_g: Vec<BigInt>,
    /// Coordinates in the ambient lattice basis.
    pub coords_std: IVec,
    pub norm: BigInt,
    /// Whether the coordinate gcd is 1.
    pub primitive: bool,
    /// Labels of the simple roots orthogonal to the vector, sorted.
    pub wall_subset: Vec<i32>,
}

impl ChamberVector {
    /// Build from ambient coordinates of a vector already in the closed
    /// chamber.
    pub fn from_std(chamber: &CoxeterChamber, v: IVec) -> ChamberResult<Self> {
        for (i, r) in chamber.simple_roots.iter().enumerate() {
            if chamber.pair(&v, r).is_negative() {
                return Err(ChamberError::NotReduced(format!(
                    "negative pairing with simple root {i}"
                )));
            }
        }
        if !chamber.rays_are_basis {
            return Err(ChamberError::Domain(
                "ray coordinates require the rays to form a basis".into(),
            ));
        }
        let ray_mat = IMat::from_rows(chamber.rays.clone());
        let inv = inverse_field(&to_rational(&ray_mat))?;
        let coords_g: Vec<BigInt> = (0..chamber.rays.len())
            .map(|j| {
                let c: BigRational = (0..v.len())
                    .map(|i| inv.at(i, j) * BigRational::from_integer(v[i].clone()))
                    .sum();
                exact_core::rat_to_int(&c).ok_or_else(|| {
                    ChamberError::Domain("non-integral ray coordinates".into())
                })
            })
            .collect::<ChamberResult<_>>()?;
        debug_assert!(coords_g.iter().all(|a| !a.is_negative()));
        let norm = chamber.lattice.norm(&v);
        let gcd = v.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e));
        let wall_subset = {
            let mut s: Vec<i32> = chamber
                .simple_roots
                .iter()
                .zip(chamber.root_labels.iter())
                .filter(|(r, _)| chamber.pair(&v, r).is_zero())
                .map(|(_, &l)| l)
                .collect();
            s.sort_unstable();
            s
        };
        Ok(ChamberVector {
            coords_g,
            coords_std: v,
            norm,
            primitive: gcd == BigInt::from(1),
            wall_subset,
        })
    }
}

/// Reflect `v` into the closed chamber. Returns the reduced vector and the
/// word of simple-reflection indices applied (left to right) to reach it.
pub fn reduce_to_chamber(
    chamber: &CoxeterChamber,
    v: &[BigInt],
) -> ChamberResult<(ChamberVector, Vec<usize>)> {
    if v.len() != chamber.rank() {
        return Err(ChamberError::Domain(format!(
            "vector has length {}, rank is {}",
            v.len(),
            chamber.rank()
        )));
    }
    if v.iter().all(Zero::is_zero) {
        return Err(ChamberError::Domain("zero vector cannot be reduced".into()));
    }
    if chamber.lattice.norm(v).is_negative() {
        return Err(ChamberError::Domain(
            "negative-norm vectors lie on no chamber".into(),
        ));
    }
    let side = chamber.pair(v, chamber.interior_point());
    if !side.is_positive() {
        return Err(ChamberError::WrongCone(format!(
            "pairing with the chamber interior is {side}; negate the input"
        )));
    }

    let mut current = v.to_vec();
    let mut word = Vec::new();
    for _ in 0..REFLECTION_CAP {
        let wall = chamber
            .simple_roots
            .iter()
            .position(|r| chamber.pair(&current, r).is_negative());
        match wall {
            None => {
                let reduced = ChamberVector::from_std(chamber, current)?;
                return Ok((reduced, word));
            }
            Some(i) => {
                current = chamber.reflect(i, &current);
                word.push(i);
            }
        }
    }
    Err(ChamberError::NonTerminating(
        "reflection count exceeded the safety cap".into(),
    ))
}

/// Labels of the walls containing the reduced vector: the stabilizer of the
/// vector in the full isometry group is the Coxeter subgroup generated by
/// exactly these reflections.
pub fn stabilizer_subset(
    chamber: &CoxeterChamber,
    v: &ChamberVector,
) -> ChamberResult<Vec<i32>> {
    for (i, r) in chamber.simple_roots.iter().enumerate() {
        if chamber.pair(&v.coords_std, r).is_negative() {
            return Err(ChamberError::NotReduced(format!(
                "negative pairing with simple root {i}"
            )));
        }
    }
    Ok(v.wall_subset.clone())
}
