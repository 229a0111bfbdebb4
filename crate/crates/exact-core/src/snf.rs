//! Smith normal form with unimodular transforms on both sides.

use crate::mat::Mat;
use crate::scalar::IntScalar;

/// Result of a Smith normal form computation: `u · m · v = d` with `u`, `v`
/// unimodular and `d` diagonal with a divisibility chain
/// `d₁ | d₂ | … | d_r`, entries non-negative, zeros last.
#[derive(Clone, Debug)]
pub struct SnfResult<T: IntScalar> {
    pub u: Mat<T>,
    pub d: Mat<T>,
    pub v: Mat<T>,
}

impl<T: IntScalar> SnfResult<T> {
    /// The diagonal entries of `d` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.at(i, i).clone()).collect()
    }

    /// Diagonal entries larger than 1: the orders of the nontrivial cyclic
    /// factors of `coker(m)`.
    pub fn elementary_divisors(&self) -> Vec<T> {
        self.diagonal().into_iter().filter(|x| x > &T::one()).collect()
    }
}

/// Compute the Smith normal form of `m`.
pub fn smith_normal_form<T: IntScalar>(m: &Mat<T>) -> SnfResult<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = Mat::<T>::identity(rows);
    let mut v = Mat::<T>::identity(cols);
    let limit = rows.min(cols);

    let mut k = 0usize;
    while k < limit {
        // Find a pivot: the entry of smallest nonzero absolute value in the
        // untouched lower-right block.
        let mut best: Option<(usize, usize)> = None;
        for r in k..rows {
            for c in k..cols {
                if !d.at(r, c).is_zero()
                    && best.map_or(true, |(br, bc)| d.at(r, c).abs() < d.at(br, bc).abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        d.swap_rows(k, br);
        u.swap_rows(k, br);
        d.swap_cols(k, bc);
        v.swap_cols(k, bc);

        // Clear row and column k; restart if a division leaves a remainder
        // smaller than the pivot (new smaller pivot appears).
        let mut clean = true;
        for r in k + 1..rows {
            if d.at(r, k).is_zero() {
                continue;
            }
            let q = -d.at(r, k).clone().div_floor(d.at(k, k));
            d.add_row_multiple(r, k, &q);
            u.add_row_multiple(r, k, &q);
            if !d.at(r, k).is_zero() {
                clean = false;
            }
        }
        for c in k + 1..cols {
            if d.at(k, c).is_zero() {
                continue;
            }
            let q = -d.at(k, c).clone().div_floor(d.at(k, k));
            d.add_col_multiple(c, k, &q);
            v.add_col_multiple(c, k, &q);
            if !d.at(k, c).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue; // smaller remainders exist; re-pivot at the same k
        }
        // Divisibility fix-up: the pivot must divide every entry of the
        // remaining block. If some d[r][c] is not divisible, mix its row in
        // and repeat.
        let piv = d.at(k, k).clone();
        let offender = (k + 1..rows)
            .flat_map(|r| (k + 1..cols).map(move |c| (r, c)))
            .find(|&(r, c)| !d.at(r, c).clone().mod_floor(&piv).is_zero());
        if let Some((r, _)) = offender {
            let one = T::one();
            d.add_row_multiple(k, r, &one);
            u.add_row_multiple(k, r, &one);
            continue;
        }
        if d.at(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    SnfResult { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::det_int;
    use num_bigint::BigInt;
    use num_traits::Zero;

    type IM = Mat<BigInt>;

    fn check(m: &IM) {
        let s = smith_normal_form(m);
        // u·m·v = d re-multiplies exactly.
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        // Transforms unimodular.
        for t in [&s.u, &s.v] {
            let det = det_int(t);
            assert!(det == BigInt::from(1) || det == BigInt::from(-1));
        }
        // Diagonal, non-negative, divisibility chain.
        let diag = s.diagonal();
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    assert!(s.d.at(r, c).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!(
                    (&w[1] % &w[0]).is_zero(),
                    "divisibility chain broken: {} ∤ {}",
                    w[0],
                    w[1]
                );
            } else {
                assert!(w[1].is_zero());
            }
        }
    }

    #[test]
    fn identity_case() {
        let m = IM::identity(5);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, IM::identity(5));
        check(&m);
    }

    #[test]
    fn assorted_matrices() {
        let cases = vec![
            IM::from_i64(2, 2, &[2, 4, 4, 8]),
            IM::from_i64(2, 2, &[0, 1, 1, 0]),
            IM::from_i64(3, 3, &[2, 0, 0, 0, 3, 0, 0, 0, 5]),
            IM::from_i64(3, 2, &[6, 4, 2, 8, 10, 2]),
            IM::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]),
            IM::from_i64(3, 3, &[0, 0, 0, 0, 0, 0, 0, 0, 0]),
        ];
        for m in &cases {
            check(m);
        }
    }

    #[test]
    fn hyperbolic_plane_and_rescaling() {
        // U has determinant -1: divisors (1, 1); U(2) gives (2, 2).
        let u = IM::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(smith_normal_form(&u).elementary_divisors(), Vec::<BigInt>::new());
        let u2 = IM::from_i64(2, 2, &[0, 2, 2, 0]);
        assert_eq!(
            smith_normal_form(&u2).elementary_divisors(),
            vec![BigInt::from(2), BigInt::from(2)]
        );
    }
}
