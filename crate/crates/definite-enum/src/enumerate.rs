//! Exact fixed-norm vector enumeration for definite forms
//! (Fincke–Pohst with a rational L·D·Lᵀ decomposition).
//!
//! The quadratic form is written as Q(x) = Σ_k d_k (x_k + Σ_{j>k} c_{kj} x_j)²
//! by repeated completion of the square (Schur complements), all in exact
//! rational arithmetic. Coordinates are chosen from the last down to the
//! first; at each level the remaining budget bounds an interval of integer
//! values computed exactly via integer square roots.

use crate::error::{EnumError, EnumResult};
use crate::form::DefiniteForm;
use exact_core::IVec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

struct Ldl {
    /// Positive pivots d_k.
    d: Vec<BigRational>,
    /// Row k holds c_{kj} for j > k (c[k][j]).
    c: Vec<Vec<BigRational>>,
}

fn ldl(f: &DefiniteForm) -> Ldl {
    let n = f.rank();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(f.gram().at(i, j).clone()))
                .collect()
        })
        .collect();
    let mut d = Vec::with_capacity(n);
    let mut c = vec![vec![BigRational::zero(); n]; n];
    for k in 0..n {
        let pivot = a[k][k].clone();
        assert!(pivot.is_positive(), "definite form has positive pivots");
        for j in k + 1..n {
            c[k][j] = &a[k][j] / &pivot;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let delta = &a[k][i] * &a[k][j] / &pivot;
                a[i][j] -= delta;
            }
        }
        d.push(pivot);
    }
    Ldl { d, c }
}

/// Largest integer y with (y + c)² · d ≤ t (for t ≥ 0, d > 0).
fn upper_bound(c: &BigRational, d: &BigRational, t: &BigRational) -> BigInt {
    let sq = t / d; // (y + c)² ≤ sq
    // Rational lower approximation of √sq: isqrt(p·q)/q for sq = p/q.
    let (p, q) = (sq.numer().clone(), sq.denom().clone());
    let root_low = BigRational::new((&p * &q).sqrt(), q);
    let mut y = (-c + &root_low).floor().to_integer();
    loop {
        let next: BigInt = &y + 1;
        let lhs = (BigRational::from_integer(next.clone()) + c).pow(2) * d;
        if lhs <= *t {
            y = next;
        } else {
            return y;
        }
    }
}

/// Smallest integer y with (y + c)² · d ≤ t (for t ≥ 0, d > 0).
fn lower_bound(c: &BigRational, d: &BigRational, t: &BigRational) -> BigInt {
    let sq = t / d;
    let (p, q) = (sq.numer().clone(), sq.denom().clone());
    let root_low = BigRational::new((&p * &q).sqrt(), q);
    let mut y = (-c - &root_low).ceil().to_integer();
    loop {
        let next: BigInt = &y - 1;
        let lhs = (BigRational::from_integer(next.clone()) + c).pow(2) * d;
        if lhs <= *t {
            y = next;
        } else {
            return y;
        }
    }
}

fn search(
    ldl: &Ldl,
    level: usize,
    budget: &BigRational,
    x: &mut Vec<BigInt>,
    exact: bool,
    out: &mut Vec<IVec>,
) {
    let n = ldl.d.len();
    // Inner shift c_level = Σ_{j>level} c_{level,j} x_j.
    let mut shift = BigRational::zero();
    for j in level + 1..n {
        if !x[j].is_zero() {
            shift += &ldl.c[level][j] * BigRational::from_integer(x[j].clone());
        }
    }
    let d = &ldl.d[level];
    let lo = lower_bound(&shift, d, budget);
    let hi = upper_bound(&shift, d, budget);
    let mut y = lo;
    while y <= hi {
        let term = (BigRational::from_integer(y.clone()) + &shift).pow(2) * d;
        let rest = budget - &term;
        debug_assert!(!rest.is_negative());
        x[level] = y.clone();
        if level == 0 {
            let keep = if exact { rest.is_zero() } else { true };
            if keep && !x.iter().all(Zero::is_zero) {
                out.push(x.clone());
            }
        } else {
            search(ldl, level - 1, &rest, x, exact, out);
        }
        y += 1;
    }
    x[level] = BigInt::zero();
}

fn run(f: &DefiniteForm, beta: &BigInt, exact: bool, up_to_sign: bool) -> EnumResult<Vec<IVec>> {
    if !beta.is_positive() {
        return Err(EnumError::BadNorm(format!(
            "norm bound must be positive, got {beta}"
        )));
    }
    let decomposition = ldl(f);
    let n = f.rank();
    let mut x = vec![BigInt::zero(); n];
    let mut out = Vec::new();
    search(
        &decomposition,
        n - 1,
        &BigRational::from_integer(beta.clone()),
        &mut x,
        exact,
        &mut out,
    );
    if up_to_sign {
        out.retain(|v| {
            v.iter()
                .find(|e| !e.is_zero())
                .map(|e| e.is_positive())
                .unwrap_or(false)
        });
    }
    out.sort();
    if cfg!(debug_assertions) {
        for v in &out {
            let norm = f.norm(v);
            if exact {
                debug_assert_eq!(norm, *beta);
            } else {
                debug_assert!(norm.is_positive() && norm <= *beta);
            }
        }
    }
    Ok(out)
}

fn search_shifted(
    ldl: &Ldl,
    center: &[BigRational],
    level: usize,
    budget: &BigRational,
    x: &mut Vec<BigInt>,
    exact: bool,
    out: &mut Vec<IVec>,
) {
    let n = ldl.d.len();
    // Inner shift: μ_level + Σ_{j>level} c_{level,j} (x_j + μ_j).
    let mut shift = center[level].clone();
    for j in level + 1..n {
        let wj = BigRational::from_integer(x[j].clone()) + &center[j];
        if !wj.is_zero() {
            shift += &ldl.c[level][j] * wj;
        }
    }
    let d = &ldl.d[level];
    let lo = lower_bound(&shift, d, budget);
    let hi = upper_bound(&shift, d, budget);
    let mut y = lo;
    while y <= hi {
        let term = (BigRational::from_integer(y.clone()) + &shift).pow(2) * d;
        let rest = budget - &term;
        debug_assert!(!rest.is_negative());
        x[level] = y.clone();
        if level == 0 {
            if !exact || rest.is_zero() {
                out.push(x.clone());
            }
        } else {
            search_shifted(ldl, center, level - 1, &rest, x, exact, out);
        }
        y += 1;
    }
    x[level] = BigInt::zero();
}

/// All integer vectors y with F(y + μ) = budget (or ≤ budget when `exact`
/// is false), for a rational center μ, in lexicographic order. Unlike the
/// homogeneous enumerations, y = 0 is a perfectly good solution and the
/// budget may be zero.
pub fn enumerate_shifted(
    f: &DefiniteForm,
    center: &[BigRational],
    budget: &BigRational,
    exact: bool,
) -> EnumResult<Vec<IVec>> {
    if center.len() != f.rank() {
        return Err(EnumError::BadNorm(format!(
            "center has length {}, form has rank {}",
            center.len(),
            f.rank()
        )));
    }
    if budget.is_negative() {
        return Ok(Vec::new());
    }
    let decomposition = ldl(f);
    let n = f.rank();
    let mut x = vec![BigInt::zero(); n];
    let mut out = Vec::new();
    search_shifted(&decomposition, center, n - 1, budget, &mut x, exact, &mut out);
    out.sort();
    if cfg!(debug_assertions) {
        for v in &out {
            let w: Vec<BigRational> = v
                .iter()
                .zip(center)
                .map(|(a, m)| BigRational::from_integer(a.clone()) + m)
                .collect();
            let mut norm = BigRational::zero();
            for (i, wi) in w.iter().enumerate() {
                for (j, wj) in w.iter().enumerate() {
                    norm += wi * wj * BigRational::from_integer(f.gram().at(i, j).clone());
                }
            }
            if exact {
                debug_assert_eq!(norm, *budget);
            } else {
                debug_assert!(norm <= *budget);
            }
        }
    }
    Ok(out)
}

/// All nonzero integer vectors with x·F·xᵀ = β, in lexicographic order.
/// With `up_to_sign`, only the representative whose first nonzero entry is
/// positive is kept from each pair {x, −x}.
pub fn enumerate_fixed_norm(
    f: &DefiniteForm,
    beta: &BigInt,
    up_to_sign: bool,
) -> EnumResult<Vec<IVec>> {
    run(f, beta, true, up_to_sign)
}

/// All nonzero integer vectors with 0 < x·F·xᵀ ≤ max, in lexicographic
/// order, with the same sign handling as `enumerate_fixed_norm`.
pub fn enumerate_up_to_norm(
    f: &DefiniteForm,
    max: &BigInt,
    up_to_sign: bool,
) -> EnumResult<Vec<IVec>> {
    run(f, max, false, up_to_sign)
}

/// Norms of a vector batch under `f` (used by callers grouping enumeration
/// output by norm).
pub fn norms_of(f: &DefiniteForm, vecs: &[IVec]) -> Vec<BigInt> {
    vecs.iter().map(|v| f.norm(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ivec(xs: &[i64]) -> IVec {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_one_form() {
        let f = DefiniteForm::from_i64(1, &[2]).unwrap();
        let both = enumerate_fixed_norm(&f, &BigInt::from(2), false).unwrap();
        assert_eq!(both, vec![ivec(&[-1]), ivec(&[1])]);
        let half = enumerate_fixed_norm(&f, &BigInt::from(2), true).unwrap();
        assert_eq!(half, vec![ivec(&[1])]);
        assert!(enumerate_fixed_norm(&f, &BigInt::from(3), false)
            .unwrap()
            .is_empty());
        assert!(enumerate_fixed_norm(&f, &BigInt::from(0), false).is_err());
    }

    #[test]
    fn a2_norm_two_has_six_roots() {
        let f = DefiniteForm::from_i64(2, &[2, -1, -1, 2]).unwrap();
        let roots = enumerate_fixed_norm(&f, &BigInt::from(2), false).unwrap();
        assert_eq!(roots.len(), 6);
        let up = enumerate_fixed_norm(&f, &BigInt::from(2), true).unwrap();
        assert_eq!(up.len(), 3);
        for v in &roots {
            assert_eq!(f.norm(v), BigInt::from(2));
        }
    }

    #[test]
    fn up_to_norm_includes_all_layers() {
        let f = DefiniteForm::from_i64(2, &[2, 0, 0, 2]).unwrap();
        let all = enumerate_up_to_norm(&f, &BigInt::from(4), false).unwrap();
        // Norm 2: ±e1, ±e2. Norm 4: (±1, ±1). Total 8.
        assert_eq!(all.len(), 8);
        let norms = norms_of(&f, &all);
        assert_eq!(norms.iter().filter(|n| **n == BigInt::from(2)).count(), 4);
        assert_eq!(norms.iter().filter(|n| **n == BigInt::from(4)).count(), 4);
    }

    #[test]
    fn shifted_enumeration_around_rational_center() {
        let f = DefiniteForm::from_i64(2, &[1, 0, 0, 1]).unwrap();
        let center = vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::zero(),
        ];
        let budget = BigRational::new(BigInt::from(9), BigInt::from(4));
        // (y0 + 1/2)² + y1² ≤ 9/4 has 8 integer solutions.
        let inside = enumerate_shifted(&f, &center, &budget, false).unwrap();
        assert_eq!(inside.len(), 8);
        assert!(inside.contains(&ivec(&[0, 0])));
        // Exactly 9/4 is attained only at y0 ∈ {−2, 1}, y1 = 0.
        let exact = enumerate_shifted(&f, &center, &budget, true).unwrap();
        assert_eq!(exact, vec![ivec(&[-2, 0]), ivec(&[1, 0])]);
        // Negative budget has no solutions; zero budget hits the center only
        // if it is integral.
        assert!(enumerate_shifted(&f, &center, &-budget, false).unwrap().is_empty());
        let zero_center = vec![BigRational::zero(), BigRational::zero()];
        let origin = enumerate_shifted(&f, &zero_center, &BigRational::zero(), true).unwrap();
        assert_eq!(origin, vec![ivec(&[0, 0])]);
    }

    #[test]
    fn shifted_with_zero_center_matches_homogeneous() {
        let f = DefiniteForm::from_i64(2, &[2, -1, -1, 2]).unwrap();
        let zero_center = vec![BigRational::zero(), BigRational::zero()];
        let four = BigRational::from_integer(BigInt::from(4));
        let mut shifted = enumerate_shifted(&f, &zero_center, &four, false).unwrap();
        shifted.retain(|v| !v.iter().all(Zero::is_zero));
        let plain = enumerate_up_to_norm(&f, &BigInt::from(4), false).unwrap();
        assert_eq!(shifted, plain);
    }
}
