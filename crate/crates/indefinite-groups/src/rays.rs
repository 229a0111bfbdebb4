//! Exact extreme-ray enumeration for pointed polyhedral cones over Q,
//! by the double description method with algebraic adjacency.
//!
//! Input: constraint rows a_i defining C = {x : dot(x, a_i) ≥ 0 ∀i}, with
//! the a_i spanning Q^n (so C is pointed). Output: the primitive integer
//! generators of the extreme rays, sorted lexicographically.

use std::collections::HashSet;

use exact_core::hnf::hermite_normal_form;
use exact_core::mat::{dot, inverse_field};
use exact_core::{to_rational, IMat, IVec, QMat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{GroupError, GroupResult};

/// Divide by the content and fix nothing else (sign is meaningful).
fn primitive(v: &[BigInt]) -> IVec {
    let mut g = BigInt::zero();
    for e in v {
        g = g.gcd(e);
    }
    if g.is_zero() || g == BigInt::from(1) {
        return v.to_vec();
    }
    v.iter().map(|e| e / &g).collect()
}

fn int_rank(rows: &[&IVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = IMat::from_rows(rows.iter().map(|r| (*r).clone()).collect());
    hermite_normal_form(&m).rank()
}

/// Extreme rays of the cone {x : dot(x, a_i) ≥ 0} for the given constraint
/// rows. Errors if the constraints do not span (cone not pointed).
pub fn extreme_rays(constraints: &[IVec]) -> GroupResult<Vec<IVec>> {
    let m = constraints.len();
    if m == 0 {
        return Err(GroupError::Domain("no constraints given".into()));
    }
    let n = constraints[0].len();
    if constraints.iter().any(|c| c.len() != n) {
        return Err(GroupError::Domain("constraint lengths differ".into()));
    }
    if n == 1 {
        let pos = constraints.iter().any(|c| c[0].is_positive());
        let neg = constraints.iter().any(|c| c[0].is_negative());
        return match (pos, neg) {
            (true, false) => Ok(vec![vec![BigInt::from(1)]]),
            (false, true) => Ok(vec![vec![BigInt::from(-1)]]),
            (true, true) => Ok(Vec::new()),
            (false, false) => Err(GroupError::Domain(
                "constraints span rank 0 < 1: cone is not pointed".into(),
            )),
        };
    }

    // Greedy choice of n independent constraints for the initial simplex.
    let mut init: Vec<usize> = Vec::new();
    for i in 0..m {
        if init.len() == n {
            break;
        }
        let mut trial: Vec<&IVec> = init.iter().map(|&j| &constraints[j]).collect();
        trial.push(&constraints[i]);
        if int_rank(&trial) == trial.len() {
            init.push(i);
        }
    }
    if init.len() < n {
        return Err(GroupError::Domain(format!(
            "constraints span rank {} < {n}: cone is not pointed",
            init.len()
        )));
    }

    // Rays of the initial simplicial cone: columns of M⁻¹ for M the chosen
    // constraint rows (ray_j · a_i = δ_ij ≥ 0).
    let minit = QMat::from_rows(
        init.iter()
            .map(|&i| {
                to_rational(&IMat::from_rows(vec![constraints[i].clone()])).row(0).to_vec()
            })
            .collect(),
    );
    let minv = inverse_field(&minit)?;
    let mut rays: Vec<IVec> = (0..n)
        .map(|j| {
            let col = minv.col_vec(j);
            let lcm = col
                .iter()
                .fold(BigInt::from(1), |acc, e| acc.lcm(e.denom()));
            let ints: IVec = col
                .iter()
                .map(|e| (e * num_rational::BigRational::from_integer(lcm.clone())).to_integer())
                .collect();
            primitive(&ints)
        })
        .collect();

    // Insert the remaining constraints one at a time.
    let mut processed: Vec<usize> = init.clone();
    for i in 0..m {
        if init.contains(&i) {
            continue;
        }
        let a = &constraints[i];
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(r, a)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            processed.push(i);
            continue;
        }
        let mut next: Vec<IVec> = Vec::new();
        let mut seen: HashSet<IVec> = HashSet::new();
        for (r, v) in rays.iter().zip(vals.iter()) {
            if !v.is_negative() && seen.insert(r.clone()) {
                next.push(r.clone());
            }
        }
        for (p_idx, vp) in vals.iter().enumerate() {
            if !vp.is_positive() {
                continue;
            }
            for (q_idx, vq) in vals.iter().enumerate() {
                if !vq.is_negative() {
                    continue;
                }
                // Algebraic adjacency: common tight constraints span n−2.
                let tight: Vec<&IVec> = processed
                    .iter()
                    .map(|&t| &constraints[t])
                    .filter(|c| {
                        dot(&rays[p_idx], c).is_zero() && dot(&rays[q_idx], c).is_zero()
                    })
                    .collect();
                if int_rank(&tight) != n - 2 {
                    continue;
                }
                let comb: IVec = rays[q_idx]
                    .iter()
                    .zip(rays[p_idx].iter())
                    .map(|(q, p)| vp * q - vq * p)
                    .collect();
                let nr = primitive(&comb);
                if seen.insert(nr.clone()) {
                    next.push(nr);
                }
            }
        }
        rays = next;
        processed.push(i);
    }

    debug_assert!(rays
        .iter()
        .all(|r| constraints.iter().all(|a| !dot(r, a).is_negative())));
    rays.sort();
    Ok(rays)
}

/// Indices of constraints that support facets: the rays tight on the
/// constraint span a hyperplane (rank n−1).
pub fn facet_indices(constraints: &[IVec], rays: &[IVec]) -> Vec<usize> {
    let n = constraints.first().map(|c| c.len()).unwrap_or(0);
    (0..constraints.len())
        .filter(|&i| {
            let tight: Vec<&IVec> = rays
                .iter()
                .filter(|r| dot(r, &constraints[i]).is_zero())
                .collect();
            int_rank(&tight) == n - 1
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn positive_orthant() {
        let cons = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])];
        let rays = extreme_rays(&cons).unwrap();
        assert_eq!(rays, vec![iv(&[0, 0, 1]), iv(&[0, 1, 0]), iv(&[1, 0, 0])]);
        assert_eq!(facet_indices(&cons, &rays), vec![0, 1, 2]);
    }

    #[test]
    fn square_cone_in_3d() {
        // x ≥ ±y, x ≥ ±z: cone over a square, 4 extreme rays.
        let cons = vec![
            iv(&[1, 1, 0]),
            iv(&[1, -1, 0]),
            iv(&[1, 0, 1]),
            iv(&[1, 0, -1]),
        ];
        let rays = extreme_rays(&cons).unwrap();
        assert_eq!(rays.len(), 4);
        for r in &rays {
            assert!(cons.iter().all(|a| !dot(r, a).is_negative()));
        }
        assert_eq!(facet_indices(&cons, &rays).len(), 4);
    }

    #[test]
    fn redundant_constraint_is_not_a_facet() {
        let cons = vec![
            iv(&[1, 0]),
            iv(&[0, 1]),
            iv(&[1, 1]), // redundant
        ];
        let rays = extreme_rays(&cons).unwrap();
        assert_eq!(rays, vec![iv(&[0, 1]), iv(&[1, 0])]);
        assert_eq!(facet_indices(&cons, &rays), vec![0, 1]);
    }

    #[test]
    fn unpointed_cone_is_rejected() {
        let cons = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0])];
        assert!(matches!(
            extreme_rays(&cons),
            Err(GroupError::Domain(_))
        ));
    }
}
