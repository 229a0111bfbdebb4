//! Exact solver for the affine sections used throughout this crate: all
//! lattice vectors with a prescribed pairing against a timelike vector and a
//! prescribed norm.
//!
//! For w with w² > 0 in signature (1, n−1) the orthogonal complement w⊥ is
//! negative definite, so {x : x·w = k} = x₀ + w⊥ and the norm condition
//! becomes an inhomogeneous positive definite problem, solved by the shifted
//! Fincke–Pohst enumeration.

use crate::error::{ChamberError, ChamberResult};
use definite_enum::{enumerate_shifted, DefiniteForm};
use exact_core::hnf::solve_integral;
use exact_core::mat::{dot, inverse_field, row_mul};
use exact_core::{to_rational, IMat, IVec, Lattice};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// All x in the lattice with x·w = k and x² = norm, sorted lexicographically.
/// Requires w timelike (w² > 0), which makes the solution set finite for any
/// norm ≤ 0 and indeed for any fixed norm.
pub fn vectors_with_norm_and_pairing(
    l: &Lattice,
    w: &[BigInt],
    k: &BigInt,
    norm: &BigInt,
) -> ChamberResult<Vec<IVec>> {
    let n = l.rank();
    if w.len() != n {
        return Err(ChamberError::Domain(format!(
            "pairing vector has length {}, lattice has rank {n}",
            w.len()
        )));
    }
    if !num_traits::Signed::is_positive(&l.norm(w)) {
        return Err(ChamberError::Domain(
            "pairing vector must be timelike (positive norm)".into(),
        ));
    }
    // gw = G·wᵀ as a row (G symmetric), so x·w = dot(x, gw).
    let gw = row_mul(w, &l.gram);
    let gw_col = IMat::from_rows(gw.iter().map(|e| vec![e.clone()]).collect());

    let (particular, kernel) = solve_integral(&gw_col, std::slice::from_ref(k));
    let Some(x0) = particular else {
        return Ok(Vec::new());
    };
    if kernel.rows() == 0 {
        return Ok(if l.norm(&x0) == *norm { vec![x0] } else { Vec::new() });
    }

    // Gram of the kernel sublattice; negate to a positive definite form.
    let kernel_gram = kernel.mul(&l.gram).mul(&kernel.transpose());
    let p = DefiniteForm::new(kernel_gram).map_err(|e| {
        ChamberError::Domain(format!("orthogonal complement is not definite: {e}"))
    })?;

    // In coefficients c on the kernel basis K:
    //   (x₀ + cK)² = x₀² + 2 c·b − P(c) with b = K·G·x₀ᵀ,
    // so the constraint reads P(c − μ) = x₀² − norm + P(μ) with μ = P⁻¹b.
    let b: IVec = {
        let gk = row_mul(&x0, &l.gram);
        (0..kernel.rows())
            .map(|i| dot(&gk, &kernel.row(i).to_vec()))
            .collect()
    };
    let p_inv = inverse_field(&to_rational(p.gram()))?;
    let mu: Vec<BigRational> = (0..kernel.rows())
        .map(|i| {
            (0..kernel.rows())
                .map(|j| p_inv.at(i, j) * BigRational::from_integer(b[j].clone()))
                .sum()
        })
        .collect();
    let p_mu: BigRational = (0..kernel.rows())
        .map(|i| &mu[i] * BigRational::from_integer(b[i].clone()))
        .sum();
    let budget = BigRational::from_integer(l.norm(&x0) - norm) + p_mu;

    let center: Vec<BigRational> = mu.iter().map(|m| -m).collect();
    let coeffs = enumerate_shifted(&p, &center, &budget, true)?;

    let mut out: Vec<IVec> = coeffs
        .iter()
        .map(|c| {
            let shift = row_mul(c, &kernel);
            x0.iter().zip(shift.iter()).map(|(a, s)| a + s).collect()
        })
        .collect();
    out.sort();
    debug_assert!(out.iter().all(|x| l.norm(x) == *norm && dot(x, &gw) == *k));
    Ok(out)
}

/// Lexicographic positivity: the first nonzero coordinate is positive. This
/// is closed under addition and total on nonzero vectors, so it serves as
/// the generic linear functional selecting a positive system.
pub fn lex_positive(v: &[BigInt]) -> bool {
    v.iter()
        .find(|e| !e.is_zero())
        .map(num_traits::Signed::is_positive)
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::lattice::{e8, hyperbolic_plane};

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn sections_of_the_hyperbolic_plane() {
        let u = hyperbolic_plane(1);
        let v0: Vec<BigInt> = vec![bi(1), bi(1)];
        // x·v0 = x0 + x1 = 0, x² = 2x0x1 = −2 → ±(1,−1).
        let roots = vectors_with_norm_and_pairing(&u, &v0, &bi(0), &bi(-2)).unwrap();
        assert_eq!(roots, vec![vec![bi(-1), bi(1)], vec![bi(1), bi(-1)]]);
        // x0 + x1 = 1 with 2x0x1 = 0 → (0,1) and (1,0).
        let iso = vectors_with_norm_and_pairing(&u, &v0, &bi(1), &bi(0)).unwrap();
        assert_eq!(iso, vec![vec![bi(0), bi(1)], vec![bi(1), bi(0)]]);
        // x0 + x1 = 1 with norm −2: 2x0x1 = −2 → x0x1 = −1 → no sum-1 pair.
        let none = vectors_with_norm_and_pairing(&u, &v0, &bi(1), &bi(-2)).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn root_counts_in_u_plus_e8_negated() {
        let l = hyperbolic_plane(1).direct_sum(&e8().rescale(-1));
        let mut v0 = vec![bi(0); 10];
        v0[0] = bi(1);
        v0[1] = bi(1);
        // Roots orthogonal to e+f: the A1 pair ±(e−f) and the 240 roots of
        // the definite part.
        let stage0 = vectors_with_norm_and_pairing(&l, &v0, &bi(0), &bi(-2)).unwrap();
        assert_eq!(stage0.len(), 242);
        let positives = stage0.iter().filter(|r| lex_positive(r)).count();
        assert_eq!(positives, 121);
    }

    #[test]
    fn spacelike_pairing_vector_is_rejected() {
        let u = hyperbolic_plane(1);
        let spacelike = vec![bi(1), bi(-1)];
        assert!(vectors_with_norm_and_pairing(&u, &spacelike, &bi(0), &bi(-2)).is_err());
    }
}
