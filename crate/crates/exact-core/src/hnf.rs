//! Hermite normal form with unimodular row transform, integral kernels,
//! saturation, and integral linear solving.
//!
//! Row convention: for an `m × n` integer matrix `A` we compute a unimodular
//! `U` (m × m) with `U · A = H` in row Hermite normal form: pivot columns
//! strictly increase, pivots are positive, entries above a pivot are reduced
//! into `[0, pivot)`, and zero rows come last. `H` is the canonical basis of
//! the row lattice of `A`, which makes it usable as a dictionary key for
//! sublattices.

use crate::mat::{row_mul, Mat};
use crate::scalar::IntScalar;

/// Result of a Hermite normal form computation: `u · a = h`.
#[derive(Clone, Debug)]
pub struct HnfResult<T: IntScalar> {
    /// Unimodular transform.
    pub u: Mat<T>,
    /// The Hermite normal form (same shape as the input).
    pub h: Mat<T>,
    /// Pivot (row, column) positions in `h`.
    pub pivots: Vec<(usize, usize)>,
}

impl<T: IntScalar> HnfResult<T> {
    /// Rank of the input matrix.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of `h`: canonical basis of the row lattice.
    pub fn row_basis(&self) -> Mat<T> {
        let idx: Vec<usize> = (0..self.rank()).collect();
        let cols: Vec<usize> = (0..self.h.cols()).collect();
        self.h.submatrix(&idx, &cols)
    }

    /// Rows of `u` spanning the integral left kernel `{x : x · a = 0}`.
    pub fn kernel(&self) -> Mat<T> {
        let idx: Vec<usize> = (self.rank()..self.h.rows()).collect();
        let cols: Vec<usize> = (0..self.u.cols()).collect();
        self.u.submatrix(&idx, &cols)
    }
}

/// Compute the row Hermite normal form `u · a = h`.
pub fn hermite_normal_form<T: IntScalar>(a: &Mat<T>) -> HnfResult<T> {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = Mat::<T>::identity(m);
    let mut prow = 0usize;
    let mut pivots = Vec::new();

    for col in 0..n {
        if prow == m {
            break;
        }
        // Euclidean elimination in this column below prow.
        loop {
            // Find the row with the smallest nonzero |entry| at or below prow.
            let mut best: Option<usize> = None;
            for r in prow..m {
                if !h.at(r, col).is_zero()
                    && best.map_or(true, |b| h.at(r, col).abs() < h.at(b, col).abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(prow, b);
            u.swap_rows(prow, b);
            let piv = h.at(prow, col).clone();
            let mut done = true;
            for r in prow + 1..m {
                if h.at(r, col).is_zero() {
                    continue;
                }
                let q = -h.at(r, col).clone().div_floor(&piv);
                h.add_row_multiple(r, prow, &q);
                u.add_row_multiple(r, prow, &q);
                if !h.at(r, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.at(prow, col).is_zero() {
            continue;
        }
        if h.at(prow, col).is_negative() {
            h.negate_row(prow);
            u.negate_row(prow);
        }
        // Reduce the entries above the pivot into [0, pivot).
        let piv = h.at(prow, col).clone();
        for r in 0..prow {
            if h.at(r, col).is_zero() {
                continue;
            }
            let q = -h.at(r, col).clone().div_floor(&piv);
            h.add_row_multiple(r, prow, &q);
            u.add_row_multiple(r, prow, &q);
        }
        pivots.push((prow, col));
        prow += 1;
    }
    HnfResult { u, h, pivots }
}

/// Canonical Hermite basis of the row lattice of `a` (nonzero rows only).
pub fn row_lattice_basis<T: IntScalar>(a: &Mat<T>) -> Mat<T> {
    hermite_normal_form(a).row_basis()
}

/// Basis of the integral left kernel `{x ∈ Zᵐ : x · a = 0}`, as rows.
pub fn integral_kernel<T: IntScalar>(a: &Mat<T>) -> Mat<T> {
    hermite_normal_form(a).kernel()
}

/// Solve `x · a = b` in integers. Returns a particular solution if one
/// exists, together with a basis of the integral solution kernel.
pub fn solve_integral<T: IntScalar>(a: &Mat<T>, b: &[T]) -> (Option<Vec<T>>, Mat<T>) {
    assert_eq!(b.len(), a.cols());
    let hnf = hermite_normal_form(a);
    let mut rem = b.to_vec();
    let mut coeff = vec![T::zero(); a.rows()];
    for &(r, c) in &hnf.pivots {
        if rem[c].is_zero() {
            continue;
        }
        let piv = hnf.h.at(r, c);
        let (q, s) = rem[c].div_rem(piv);
        if !s.is_zero() {
            return (None, hnf.kernel());
        }
        for j in 0..a.cols() {
            rem[j] = rem[j].clone() - q.clone() * hnf.h.at(r, j).clone();
        }
        coeff[r] = q;
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return (None, hnf.kernel());
    }
    (Some(row_mul(&coeff, &hnf.u)), hnf.kernel())
}

/// Saturation of the row span of `s` inside `Zⁿ`: the set of integer vectors
/// lying in the rational span, returned as a canonical Hermite basis.
pub fn saturate_rows<T: IntScalar>(s: &Mat<T>) -> Mat<T> {
    // The rational row span is the orthogonal complement (plain dot product)
    // of the right null space. HNF kernels are primitive, so two integral
    // kernel computations give the saturation without any rational step:
    //   K = {v : s · vᵀ = 0},  saturation = {x : x · Kᵀ = 0}.
    let right_kernel = integral_kernel(&s.transpose());
    row_lattice_basis(&integral_kernel(&right_kernel.transpose()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::row_mul;
    use num_bigint::BigInt;

    type IM = Mat<BigInt>;

    fn check_hnf(a: &IM) {
        let r = hermite_normal_form(a);
        // U·A = H re-multiplies exactly.
        assert_eq!(r.u.mul(a), r.h);
        // U unimodular.
        let d = crate::mat::det_int(&r.u);
        assert!(d == BigInt::from(1) || d == BigInt::from(-1), "det U = ±1, got {d}");
        // Pivots positive, above-pivot entries reduced.
        for &(pr, pc) in &r.pivots {
            assert!(r.h.at(pr, pc) > &BigInt::from(0));
            for above in 0..pr {
                assert!(r.h.at(above, pc) >= &BigInt::from(0));
                assert!(r.h.at(above, pc) < r.h.at(pr, pc));
            }
        }
    }

    #[test]
    fn hnf_identity() {
        let a = IM::identity(5);
        let r = hermite_normal_form(&a);
        assert_eq!(r.h, a);
        assert_eq!(r.rank(), 5);
    }

    #[test]
    fn hnf_random_shapes() {
        let cases: Vec<IM> = vec![
            IM::from_i64(2, 3, &[2, 4, 4, -6, 6, 12]),
            IM::from_i64(3, 3, &[0, 0, 5, 0, 3, 0, 7, 0, 0]),
            IM::from_i64(3, 2, &[1, 2, 2, 4, 3, 6]),
            IM::from_i64(4, 4, &[2, 3, 6, 2, 5, 6, 1, 6, 8, 3, 1, 1, 0, 0, 0, 0]),
        ];
        for a in &cases {
            check_hnf(a);
        }
    }

    #[test]
    fn kernel_annihilates() {
        let a = IM::from_i64(3, 2, &[1, 2, 2, 4, 3, 6]);
        let k = integral_kernel(&a);
        assert_eq!(k.rows(), 2);
        assert!(k.mul(&a).is_zero());
        // Kernel is primitive: HNF of kernel has unit elementary structure.
        let d = crate::snf::smith_normal_form(&k);
        for i in 0..k.rows() {
            assert_eq!(d.d.at(i, i), &BigInt::from(1));
        }
    }

    #[test]
    fn solve_integral_identity_and_parity() {
        let a = IM::identity(3);
        let b = vec![BigInt::from(7), BigInt::from(-2), BigInt::from(0)];
        let (x, _) = solve_integral(&a, &b);
        assert_eq!(x.unwrap(), b);

        let two = IM::from_i64(2, 2, &[2, 0, 0, 2]);
        let b2 = vec![BigInt::from(1), BigInt::from(0)];
        let (x2, _) = solve_integral(&two, &b2);
        assert!(x2.is_none(), "odd target is not in 2Z²");
    }

    #[test]
    fn solve_integral_brute_force_cross_check() {
        // Small systems against an exhaustive oracle over a box.
        let a = IM::from_i64(2, 2, &[2, 1, 3, 4]);
        for bx in -6i64..=6 {
            for by in -6i64..=6 {
                let b = vec![BigInt::from(bx), BigInt::from(by)];
                let (x, _) = solve_integral(&a, &b);
                let brute = (-10i64..=10).flat_map(|u| (-10i64..=10).map(move |v| (u, v))).find(
                    |&(u, v)| {
                        let xv = vec![BigInt::from(u), BigInt::from(v)];
                        row_mul(&xv, &a) == b
                    },
                );
                assert_eq!(x.is_some(), brute.is_some(), "b = ({bx},{by})");
                if let Some(x) = x {
                    assert_eq!(row_mul(&x, &a), b);
                }
            }
        }
    }

    #[test]
    fn saturation_divides_content() {
        // Row span of (2,4) is index 2 in its saturation (1,2).
        let s = IM::from_i64(1, 2, &[2, 4]);
        let sat = saturate_rows(&s);
        assert_eq!(sat.rows(), 1);
        assert_eq!(sat.row(0), &[BigInt::from(1), BigInt::from(2)][..]);
    }
}
