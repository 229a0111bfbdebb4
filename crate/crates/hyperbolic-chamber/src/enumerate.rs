//! Enumeration of chamber vectors of bounded norm.
//!
//! Every vector of the closed chamber is a non-negative integer combination
//! of the rays. With a single isotropic ray g₁ and all other ray products
//! positive, the split t = β·g₁ + w (w supported on the other rays) makes
//! the search finite: w ranges over a finite set with w² ≤ max_norm, and
//! for each w ≠ 0 the coefficient β is bounded by the norm budget.

use crate::chamber::CoxeterChamber;
use crate::error::{ChamberError, ChamberResult};
use crate::reduce::ChamberVector;
use exact_core::IVec;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// All vectors of the closed chamber with 0 < norm ≤ max_norm, each exactly
/// once, sorted by (norm, ray coefficients). With `primitive_only`, only
/// vectors with coordinate gcd 1 are kept.
pub fn enumerate_chamber_vectors(
    chamber: &CoxeterChamber,
    max_norm: &BigInt,
    primitive_only: bool,
) -> ChamberResult<Vec<ChamberVector>> {
    if *max_norm < BigInt::from(2) {
        return Err(ChamberError::Domain(format!(
            "maximum norm must be at least 2, got {max_norm}"
        )));
    }
    let n = chamber.rank();
    if chamber.rays.len() != n || !chamber.rays_are_basis {
        return Err(ChamberError::Domain(
            "enumeration requires a simplicial chamber with basis rays".into(),
        ));
    }
    let w = &chamber.ray_gram;
    let iso: Vec<usize> = (0..n).filter(|&i| w.at(i, i).is_zero()).collect();
    let &[i0] = iso.as_slice() else {
        return Err(ChamberError::Domain(format!(
            "enumeration requires exactly one isotropic ray, found {}",
            iso.len()
        )));
    };
    let others: Vec<usize> = (0..n).filter(|&j| j != i0).collect();
    for &j in &others {
        if !w.at(i0, j).is_positive() {
            return Err(ChamberError::Domain(
                "the isotropic ray must pair positively with every other ray".into(),
            ));
        }
    }
    let max = max_norm
        .to_i64()
        .ok_or_else(|| ChamberError::Domain("norm bound too large".into()))?;
    let wi: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| w.at(i, j).to_i64().expect("small ray Gram entry"))
                .collect()
        })
        .collect();

    // Stage 1: finite list of w-parts on the non-isotropic rays.
    let mut alphas: Vec<(Vec<i64>, i64)> = Vec::new();
    let mut alpha = vec![0i64; others.len()];
    stage1(&others, &wi, max, 0, 0, &mut alpha, &mut alphas);

    // Stage 2: attach the isotropic coefficient.
    let mut out = Vec::new();
    for (alpha, wnorm) in &alphas {
        if alpha.iter().all(|&a| a == 0) {
            continue; // pure isotropic multiples have norm 0
        }
        let p: i64 = alpha
            .iter()
            .zip(others.iter())
            .map(|(&a, &j)| a * wi[i0][j])
            .sum();
        debug_assert!(p > 0);
        let mut beta = 0i64;
        while wnorm + 2 * beta * p <= max {
            let mut coeffs = vec![0i64; n];
            coeffs[i0] = beta;
            for (&a, &j) in alpha.iter().zip(others.iter()) {
                coeffs[j] = a;
            }
            let gcd = coeffs.iter().fold(0i64, |acc, &c| num_integer::gcd(acc, c));
            if !primitive_only || gcd == 1 {
                out.push((wnorm + 2 * beta * p, coeffs));
            }
            beta += 1;
        }
    }
    out.sort();
    out.dedup();

    out.into_iter()
        .map(|(_, coeffs)| {
            let std: IVec = (0..n)
                .map(|col| {
                    (0..n)
                        .map(|i| BigInt::from(coeffs[i]) * chamber.rays[i][col].clone())
                        .sum()
                })
                .collect();
            ChamberVector::from_std(chamber, std)
        })
        .collect()
}

/// Depth-first walk over non-negative coefficients on the non-isotropic
/// rays; `partial` carries the norm of the prefix combination and `cross[j]`
/// the pairing of the prefix with ray j. All Gram entries are ≥ 0, so the
/// norm only grows and the search can stop as soon as it overshoots.
fn stage1(
    others: &[usize],
    w: &[Vec<i64>],
    max: i64,
    pos: usize,
    partial: i64,
    alpha: &mut Vec<i64>,
    out: &mut Vec<(Vec<i64>, i64)>,
) {
    if pos == others.len() {
        out.push((alpha.clone(), partial));
        return;
    }
    let j = others[pos];
    let mut t = 0i64;
    loop {
        // Norm gained by setting coefficient t at position j.
        let cross: i64 = (0..pos)
            .map(|q| alpha[q] * w[others[q]][j])
            .sum();
        let gained = t * t * w[j][j] + 2 * t * cross;
        if partial + gained > max {
            break;
        }
        alpha[pos] = t;
        stage1(others, w, max, pos + 1, partial + gained, alpha, out);
        t += 1;
    }
    alpha[pos] = 0;
}
