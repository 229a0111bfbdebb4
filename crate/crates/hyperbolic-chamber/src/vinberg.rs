//! Vinberg's algorithm: accumulate mirrors of norm-(−2) roots in order of
//! increasing distance from a controlling vector until they cut a chamber of
//! finite covolume.

use crate::chamber::CoxeterChamber;
use crate::error::{ChamberError, ChamberResult};
use crate::solver::{lex_positive, vectors_with_norm_and_pairing};
use exact_core::hnf::integral_kernel;
use exact_core::mat::{dot, row_mul};
use exact_core::{IMat, IVec, Lattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::HashSet;

const TIER_CAP: u64 = 40;

/// Fundamental chamber of the norm-(−2) reflection subgroup around the
/// controlling vector `v0` (which must be timelike). Roots orthogonal to
/// `v0` are resolved into a simple system first (positivity by the
/// lexicographic functional, then indecomposability); farther roots are
/// accepted in order of increasing `v0`-distance when they pair ≥ 0 with
/// everything accepted so far. The search stops when the accepted roots cut
/// a simplicial cone whose extreme rays all have norm ≥ 0 — finite
/// covolume, hence the complete wall set.
pub fn vinberg_simple_roots(l: &Lattice, v0: &[BigInt]) -> ChamberResult<CoxeterChamber> {
    let n = l.rank();
    let sig = l.signature();
    if !(sig.p == 1 && sig.k == 0 && n >= 2) {
        return Err(ChamberError::NotHyperbolic(format!(
            "signature ({}, {}) with kernel rank {}",
            sig.p, sig.q, sig.k
        )));
    }
    if !l.is_even() {
        return Err(ChamberError::Domain("only even lattices are supported".into()));
    }
    if v0.len() != n {
        return Err(ChamberError::BadControl(format!(
            "controlling vector has length {}, rank is {n}",
            v0.len()
        )));
    }
    if !l.norm(v0).is_positive() {
        return Err(ChamberError::BadControl(
            "controlling vector must have positive norm".into(),
        ));
    }

    // Stage 0: the finite root system orthogonal to v0.
    let minus_two = BigInt::from(-2);
    let stage0 = vectors_with_norm_and_pairing(l, v0, &BigInt::zero(), &minus_two)?;
    let positives: Vec<IVec> = stage0.into_iter().filter(|r| lex_positive(r)).collect();
    let positive_set: HashSet<IVec> = positives.iter().cloned().collect();
    let mut accepted: Vec<IVec> = positives
        .iter()
        .filter(|r| {
            // Indecomposable: not a sum of two positive roots.
            !positives.iter().any(|p| {
                let rest: IVec = r.iter().zip(p.iter()).map(|(a, b)| a - b).collect();
                rest.iter().any(|e| !e.is_zero()) && positive_set.contains(&rest)
            })
        })
        .cloned()
        .collect();

    // Distances from v0 are multiples of the content of G·v0.
    let gw = row_mul(v0, &l.gram);
    let content = gw
        .iter()
        .fold(BigInt::zero(), |acc, e| acc.gcd(e));
    debug_assert!(content.is_positive());

    let mut empty_streak = 0u32;
    for step in 1..=TIER_CAP {
        let k = &content * BigInt::from(step);
        let candidates = vectors_with_norm_and_pairing(l, v0, &k, &minus_two)?;
        if candidates.is_empty() {
            empty_streak += 1;
        } else {
            empty_streak = 0;
        }
        for r in candidates {
            if accepted
                .iter()
                .all(|a| !l.pair(&r, a).is_negative())
            {
                accepted.push(r);
                if accepted.len() == n {
                    if let Some(chamber) = try_simplicial_closure(l, &accepted)? {
                        return Ok(chamber);
                    }
                }
            }
        }
        if accepted.len() > n {
            return Err(ChamberError::NonTerminating(format!(
                "{} roots accepted in rank {n}; non-simplicial chambers are unsupported",
                accepted.len()
            )));
        }
        if empty_streak >= 3 && n == 2 && accepted.len() == 1 {
            return rank2_halfplane(l, &accepted[0], v0);
        }
    }
    Err(ChamberError::NonTerminating(format!(
        "no finite-covolume chamber within {TIER_CAP} tiers"
    )))
}

/// When exactly `n` roots are accepted, try to read off the simplicial cone:
/// ray i spans the kernel of the pairings with the other n−1 roots, oriented
/// to pair positively with root i. Succeeds only if each kernel is a line
/// and every ray has norm ≥ 0 (the finite-covolume criterion).
fn try_simplicial_closure(
    l: &Lattice,
    roots: &[IVec],
) -> ChamberResult<Option<CoxeterChamber>> {
    let n = l.rank();
    let root_mat = IMat::from_rows(roots.to_vec());
    // Column j of C holds G·r_jᵀ, so x·C_j is the pairing of x with root j.
    let c = l.gram.mul(&root_mat.transpose());
    let mut rays = Vec::with_capacity(n);
    for i in 0..n {
        let other_cols: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let all_rows: Vec<usize> = (0..n).collect();
        let dropped = c.submatrix(&all_rows, &other_cols);
        let kern = integral_kernel(&dropped);
        if kern.rows() != 1 {
            return Ok(None);
        }
        let mut ray = kern.row(0).to_vec();
        let own_col: Vec<BigInt> = (0..n).map(|r| c.at(r, i).clone()).collect();
        let orientation = dot(&ray, &own_col);
        if orientation.is_zero() {
            return Ok(None);
        }
        if orientation.is_negative() {
            ray = ray.iter().map(|e| -e).collect();
        }
        if l.norm(&ray).is_negative() {
            return Ok(None);
        }
        rays.push(ray);
    }
    CoxeterChamber::assemble(l.clone(), roots.to_vec(), rays).map(Some)
}

/// Rank-2 chamber bounded by a single mirror: the two extreme rays are the
/// mirror line (oriented into the cone of `v0`) and the isotropic boundary
/// ray on the positive side of the mirror.
fn rank2_halfplane(l: &Lattice, root: &IVec, v0: &[BigInt]) -> ChamberResult<CoxeterChamber> {
    let g_root = row_mul(root, &l.gram);
    let g_v0 = row_mul(v0, &l.gram);
    let col = IMat::from_rows(g_root.iter().map(|e| vec![e.clone()]).collect());
    let kern = integral_kernel(&col);
    if kern.rows() != 1 {
        return Err(ChamberError::Domain("mirror line is not one-dimensional".into()));
    }
    let mut mirror_ray = kern.row(0).to_vec();
    let side = dot(&mirror_ray, &g_v0);
    if side.is_zero() {
        return Err(ChamberError::Domain("mirror ray orthogonal to v0".into()));
    }
    if side.is_negative() {
        mirror_ray = mirror_ray.iter().map(|e| -e).collect();
    }
    if l.norm(&mirror_ray).is_negative() {
        return Err(ChamberError::NonTerminating(
            "rank-2 chamber is not of finite covolume".into(),
        ));
    }

    let mut iso_ray: Option<IVec> = None;
    'outer: for a in -12i64..=12 {
        for b in -12i64..=12 {
            let x = vec![BigInt::from(a), BigInt::from(b)];
            if x.iter().all(Zero::is_zero) || BigInt::from(a).gcd(&BigInt::from(b)) != 1.into() {
                continue;
            }
            if !l.norm(&x).is_zero() {
                continue;
            }
            if dot(&x, &g_v0).is_positive() && !dot(&x, &g_root).is_negative() {
                iso_ray = Some(x);
                break 'outer;
            }
        }
    }
    let iso = iso_ray.ok_or_else(|| {
        ChamberError::Domain("no isotropic boundary ray found in the search box".into())
    })?;
    CoxeterChamber::assemble(l.clone(), vec![root.clone()], vec![iso, mirror_ray])
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::lattice::hyperbolic_plane;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn chamber_of_the_hyperbolic_plane() {
        let u = hyperbolic_plane(1);
        let chamber = vinberg_simple_roots(&u, &[bi(1), bi(1)]).unwrap();
        assert_eq!(chamber.simple_roots, vec![vec![bi(1), bi(-1)]]);
        // Rays sorted by norm: the isotropic boundary, then the mirror line.
        assert_eq!(chamber.rays, vec![vec![bi(0), bi(1)], vec![bi(1), bi(1)]]);
        let w: Vec<i64> = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| {
                use num_traits::ToPrimitive;
                chamber.ray_gram.at(i, j).to_i64().unwrap()
            })
            .collect();
        assert_eq!(w, vec![0, 1, 1, 2]);
        assert!(chamber.rays_are_basis);
        assert!(chamber.diagram.is_empty());
    }

    #[test]
    fn indefinite_controlling_vector_is_rejected() {
        let u = hyperbolic_plane(1);
        assert!(matches!(
            vinberg_simple_roots(&u, &[bi(1), bi(0)]),
            Err(ChamberError::BadControl(_))
        ));
        assert!(matches!(
            vinberg_simple_roots(&u, &[bi(1), bi(-1)]),
            Err(ChamberError::BadControl(_))
        ));
    }

    #[test]
    fn definite_lattice_is_rejected() {
        let e8 = exact_core::lattice::e8();
        let v0: Vec<BigInt> = (0..8).map(|_| bi(1)).collect();
        assert!(matches!(
            vinberg_simple_roots(&e8, &v0),
            Err(ChamberError::NotHyperbolic(_))
        ));
    }
}
