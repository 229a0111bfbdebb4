//! The Weyl vector and the minimal isotropic pairing invariant.

use crate::chamber::CoxeterChamber;
use crate::error::{ChamberError, ChamberResult};
use crate::reduce::ChamberVector;
use exact_core::mat::inverse_field;
use exact_core::{to_rational, IMat, IVec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The vector pairing to 1 with every simple root. Exists (integrally and
/// uniquely) for a simplicial chamber of a reflective lattice; in the ray
/// basis it is the all-ones vector exactly when the root/ray duality is
/// unimodular.
pub fn weyl_vector(chamber: &CoxeterChamber) -> ChamberResult<ChamberVector> {
    let n = chamber.rank();
    if chamber.simple_roots.len() != n {
        return Err(ChamberError::NoWeylVector(format!(
            "{} simple roots in rank {n}: the pairing system is not square",
            chamber.simple_roots.len()
        )));
    }
    // Solve h·(G·Rᵀ) = (1, …, 1).
    let root_mat = IMat::from_rows(chamber.simple_roots.clone());
    let pairing = chamber.lattice.gram.mul(&root_mat.transpose());
    let inv = inverse_field(&to_rational(&pairing))
        .map_err(|e| ChamberError::NoWeylVector(format!("singular pairing matrix: {e}")))?;
    let h: IVec = (0..n)
        .map(|col| {
            let c: BigRational = (0..n).map(|row| inv.at(row, col).clone()).sum();
            exact_core::rat_to_int(&c)
                .ok_or_else(|| ChamberError::NoWeylVector("non-integral solution".into()))
        })
        .collect::<ChamberResult<_>>()?;
    for r in &chamber.simple_roots {
        debug_assert!(chamber.pair(&h, r).is_one());
    }
    ChamberVector::from_std(chamber, h)
}

/// Minimum of h·E over isotropic E in the positive cone, computed by
/// reflection descent from the isotropic chamber ray. The chamber must have
/// a single cusp (one isotropic ray), which makes the isotropic orbit
/// unique and the descent exact.
pub fn phi_invariant(chamber: &CoxeterChamber, h: &ChamberVector) -> ChamberResult<BigInt> {
    if !h.norm.is_positive() {
        return Err(ChamberError::Domain(format!(
            "phi requires a positive-norm vector, got norm {}",
            h.norm
        )));
    }
    let iso: Vec<usize> = (0..chamber.rays.len())
        .filter(|&i| chamber.ray_gram.at(i, i).is_zero())
        .collect();
    let &[i0] = iso.as_slice() else {
        return Err(ChamberError::Domain(format!(
            "phi requires exactly one isotropic ray (single cusp), found {}",
            iso.len()
        )));
    };

    let mut e = chamber.rays[i0].clone();
    let mut value = chamber.pair(&h.coords_std, &e);
    loop {
        let step = chamber.simple_roots.iter().enumerate().find_map(|(i, r)| {
            let delta = chamber.pair(&e, r) * chamber.pair(&h.coords_std, r);
            delta.is_negative().then_some((i, delta))
        });
        match step {
            Some((i, delta)) => {
                e = chamber.reflect(i, &e);
                value += delta;
                debug_assert_eq!(chamber.pair(&h.coords_std, &e), value);
            }
            None => break,
        }
    }
    if !value.is_positive() {
        return Err(ChamberError::Domain(
            "descent ended at a nonpositive pairing; input outside the positive cone".into(),
        ));
    }
    Ok(value)
}
