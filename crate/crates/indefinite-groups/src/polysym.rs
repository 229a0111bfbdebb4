//! Isometries between reflective polytopes by wall matching.
//!
//! Any isometry L1 → L2 maps the fundamental polytope of W(L1) onto some
//! chamber of W(L2); composing with an element of W(L2) moves that chamber
//! onto the fundamental polytope. Hence L1 ≅ L2 exactly when some
//! pairing-preserving bijection of wall systems extends to an integral
//! isometry, and the wall-matching backtrack below is a complete decision
//! procedure. With p1 = p2 it computes the full symmetry group of the
//! polytope (the complement of the reflection subgroup in O⁺).

use std::collections::HashSet;

use exact_core::mat::inverse_field;
use exact_core::{to_integral, to_rational, IMat, QMat};
use num_bigint::BigInt;

use crate::error::{GroupError, GroupResult};
use crate::group::is_unimodular_int;
use crate::reflective::ReflectivePolytope;

/// All integral isometries mapping `p1`'s polytope wall-to-wall onto
/// `p2`'s (as row-action matrices: x in L1-coordinates ↦ x·P in
/// L2-coordinates). With `first_only`, stops after one.
pub fn polytope_maps(
    p1: &ReflectivePolytope,
    p2: &ReflectivePolytope,
    first_only: bool,
) -> GroupResult<Vec<IMat>> {
    let n = p1.rank();
    if p2.rank() != n || p1.walls.len() != p2.walls.len() {
        return Ok(Vec::new());
    }
    let r1 = IMat::from_rows(p1.walls.clone());
    let r2 = IMat::from_rows(p2.walls.clone());
    let wg1 = r1.mul(&p1.lattice.gram).mul(&r1.transpose());
    let wg2 = r2.mul(&p2.lattice.gram).mul(&r2.transpose());

    // A pivot set of walls of p1 with full rank n, found greedily.
    let mut pivots: Vec<usize> = Vec::new();
    for i in 0..p1.walls.len() {
        if pivots.len() == n {
            break;
        }
        let mut trial: Vec<Vec<BigInt>> = pivots.iter().map(|&j| p1.walls[j].clone()).collect();
        trial.push(p1.walls[i].clone());
        if exact_core::hnf::hermite_normal_form(&IMat::from_rows(trial.clone())).rank()
            == trial.len()
        {
            pivots.push(i);
        }
    }
    if pivots.len() < n {
        return Err(GroupError::Domain(
            "polytope walls do not span the ambient space".into(),
        ));
    }
    let r1piv = IMat::from_rows(pivots.iter().map(|&i| p1.walls[i].clone()).collect());
    let r1piv_inv = inverse_field(&to_rational(&r1piv))?;

    let wallset2: HashSet<Vec<BigInt>> = p2.walls.iter().cloned().collect();
    let mut found: Vec<IMat> = Vec::new();
    let mut seen: HashSet<IMat> = HashSet::new();
    let mut assign: Vec<usize> = Vec::new();

    // Depth-first over images of the pivot walls with Gram-compatibility
    // pruning; each complete pivot assignment determines the candidate map.
    fn descend(
        depth: usize,
        n: usize,
        pivots: &[usize],
        assign: &mut Vec<usize>,
        wg1: &IMat,
        wg2: &IMat,
        r1piv_inv: &QMat,
        p1: &ReflectivePolytope,
        p2: &ReflectivePolytope,
        wallset2: &HashSet<Vec<BigInt>>,
        seen: &mut HashSet<IMat>,
        found: &mut Vec<IMat>,
        first_only: bool,
    ) {
        if first_only && !found.is_empty() {
            return;
        }
        if depth == n {
            let r2sel = IMat::from_rows(assign.iter().map(|&j| p2.walls[j].clone()).collect());
            let cand = r1piv_inv.mul(&to_rational(&r2sel));
            let Some(p) = to_integral(&cand) else { return };
            if !is_unimodular_int(&p) {
                return;
            }
            if p.mul(&p2.lattice.gram).mul(&p.transpose()) != p1.lattice.gram {
                return;
            }
            // The full wall system must map onto the full wall system.
            let mut images: HashSet<Vec<BigInt>> = HashSet::new();
            for w in &p1.walls {
                let img = exact_core::mat::row_mul(w, &p);
                if !wallset2.contains(&img) || !images.insert(img) {
                    return;
                }
            }
            if seen.insert(p.clone()) {
                found.push(p);
            }
            return;
        }
        let i = pivots[depth];
        for j in 0..p2.walls.len() {
            if assign.contains(&j) {
                continue;
            }
            if wg2.at(j, j) != wg1.at(i, i) {
                continue;
            }
            if (0..depth).any(|d| wg2.at(assign[d], j) != wg1.at(pivots[d], i)) {
                continue;
            }
            assign.push(j);
            descend(
                depth + 1,
                n,
                pivots,
                assign,
                wg1,
                wg2,
                r1piv_inv,
                p1,
                p2,
                wallset2,
                seen,
                found,
                first_only,
            );
            assign.pop();
        }
    }

    descend(
        0,
        n,
        &pivots,
        &mut assign,
        &wg1,
        &wg2,
        &r1piv_inv,
        p1,
        p2,
        &wallset2,
        &mut seen,
        &mut found,
        first_only,
    );
    Ok(found)
}

/// The symmetry group of the polytope (all isometries of the lattice
/// preserving the polytope wall-to-wall), as explicit matrices including
/// the identity.
pub fn polytope_symmetries(p: &ReflectivePolytope) -> GroupResult<Vec<IMat>> {
    let syms = polytope_maps(p, p, false)?;
    debug_assert!(syms.iter().any(|m| m.is_identity()));
    Ok(syms)
}
