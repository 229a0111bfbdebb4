//! Dense matrices over exact scalars, in row-major layout.
//!
//! The workspace convention is that vectors are rows and groups act on the
//! right: `x ↦ x · P`. All helpers here follow that convention; in
//! particular kernels are *left* kernels `{x : x · A = 0}`.

use crate::error::{CoreError, CoreResult};
use crate::scalar::{FieldScalar, IntScalar, Scalar};

/// Row vectors are plain `Vec`s; a dedicated wrapper would only add noise.
pub type Vector<T> = Vec<T>;

/// Dense `rows × cols` matrix over an exact scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Build from a row-major entry vector.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must match shape");
        Mat { rows, cols, data }
    }

    /// Build from a list of equal-length rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    /// Build from machine integers (convenience for fixtures and tests).
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Mat::from_vec(rows, cols, entries.iter().map(|&v| T::from_int(v)).collect())
    }

    /// Diagonal matrix with the given entries.
    pub fn diag(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[Mat<T>]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zero(rows, cols);
        let (mut ro, mut co) = (0usize, 0usize);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(ro + i, co + j, b.at(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry accessor.
    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    /// Borrow row `r` as a slice.
    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Clone row `r` into a vector.
    pub fn row_vec(&self, r: usize) -> Vector<T> {
        self.row(r).to_vec()
    }

    /// Clone column `c` into a vector.
    pub fn col_vec(&self, c: usize) -> Vector<T> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Iterate all entries row-major.
    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    /// All rows as vectors.
    pub fn to_rows(&self) -> Vec<Vector<T>> {
        (0..self.rows).map(|r| self.row_vec(r)).collect()
    }

    /// Entry-wise transform into another scalar type.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.at(r, c).clone());
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self.at(i, j).is_one() } else { self.at(i, j).is_zero() }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data =
            self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data =
            self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut m = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = m.at(r, c).clone() + a.clone() * other.at(k, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// Select a sub-block by row and column index lists.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        let mut m = Self::zero(row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                m.set(i, j, self.at(r, c).clone());
            }
        }
        m
    }

    /// Stack vertically: rows of `self` above rows of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Stack horizontally.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.at(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.at(r, c).clone());
            }
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[a] += f * row[b]
    pub fn add_row_multiple(&mut self, a: usize, b: usize, f: &T) {
        for c in 0..self.cols {
            let v = self.at(a, c).clone() + f.clone() * self.at(b, c).clone();
            self.set(a, c, v);
        }
    }

    /// col[a] += f * col[b]
    pub fn add_col_multiple(&mut self, a: usize, b: usize, f: &T) {
        for r in 0..self.rows {
            let v = self.at(r, a).clone() + f.clone() * self.at(r, b).clone();
            self.set(r, a, v);
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            self.set(r, c, v);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, c).clone();
            self.set(r, c, v);
        }
    }
}

use num_traits::Zero;

impl<T: Scalar> std::fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `x · M` for a row vector `x`.
pub fn row_mul<T: Scalar>(x: &[T], m: &Mat<T>) -> Vector<T> {
    assert_eq!(x.len(), m.rows());
    let mut out = vec![T::zero(); m.cols()];
    for (k, xk) in x.iter().enumerate() {
        if xk.is_zero() {
            continue;
        }
        for c in 0..m.cols() {
            out[c] = out[c].clone() + xk.clone() * m.at(k, c).clone();
        }
    }
    out
}

/// Plain dot product of two equal-length vectors.
pub fn dot<T: Scalar>(x: &[T], y: &[T]) -> T {
    assert_eq!(x.len(), y.len());
    let mut s = T::zero();
    for (a, b) in x.iter().zip(y) {
        s = s + a.clone() * b.clone();
    }
    s
}

/// Bilinear pairing `x · G · yᵀ`.
pub fn gram_pair<T: Scalar>(x: &[T], gram: &Mat<T>, y: &[T]) -> T {
    dot(&row_mul(x, gram), y)
}

/// Determinant by fraction-free (Bareiss) elimination over the integers.
pub fn det_int<T: IntScalar>(m: &Mat<T>) -> T {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            match (k + 1..n).find(|&r| !a.at(r, k).is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.at(k, k).clone() * a.at(i, j).clone()
                    - a.at(i, k).clone() * a.at(k, j).clone();
                // Bareiss guarantees exact divisibility by the previous pivot.
                a.set(i, j, num / prev.clone());
            }
            a.set(i, k, T::zero());
        }
        prev = a.at(k, k).clone();
    }
    sign * a.at(n - 1, n - 1).clone()
}

/// Gaussian elimination over a field: returns (row echelon form, rank,
/// determinant if square, pivot column list).
fn gauss<T: FieldScalar>(m: &Mat<T>) -> (Mat<T>, usize, T, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut det = T::one();
    let mut rank = 0usize;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let piv = (rank..rows).find(|&r| !a.at(r, c).is_zero());
        let Some(piv) = piv else {
            det = T::zero();
            continue;
        };
        if piv != rank {
            a.swap_rows(piv, rank);
            det = -det;
        }
        det = det * a.at(rank, c).clone();
        let inv = a.at(rank, c).inv();
        for j in c..cols {
            let v = a.at(rank, j).clone() * inv.clone();
            a.set(rank, j, v);
        }
        for r in 0..rows {
            if r != rank && !a.at(r, c).is_zero() {
                let f = -a.at(r, c).clone();
                a.add_row_multiple(r, rank, &f);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rank < rows.min(cols) {
        det = T::zero();
    }
    (a, rank, det, pivots)
}

/// Rank over a field.
pub fn rank_field<T: FieldScalar>(m: &Mat<T>) -> usize {
    gauss(m).1
}

/// Determinant over a field.
pub fn det_field<T: FieldScalar>(m: &Mat<T>) -> T {
    assert!(m.is_square());
    if m.rows() == 0 {
        return T::one();
    }
    gauss(m).2
}

/// Inverse over a field.
pub fn inverse_field<T: FieldScalar>(m: &Mat<T>) -> CoreResult<Mat<T>> {
    assert!(m.is_square());
    let n = m.rows();
    let aug = m.hstack(&Mat::identity(n));
    let (red, rank, _, _) = gauss(&aug);
    if rank < n {
        return Err(CoreError::Singular);
    }
    // gauss produced reduced row echelon form; with full rank the left block
    // is the identity and the right block is the inverse.
    let idx: Vec<usize> = (n..2 * n).collect();
    let rows_idx: Vec<usize> = (0..n).collect();
    Ok(red.submatrix(&rows_idx, &idx))
}

/// Basis of the left kernel `{x : x · M = 0}` over a field, as rows.
pub fn left_kernel_field<T: FieldScalar>(m: &Mat<T>) -> Mat<T> {
    // Left kernel of M = right kernel of Mᵀ: solve the transposed system by
    // elimination and read nullspace vectors from the free columns.
    let mt = m.transpose();
    let (red, rank, _, pivots) = gauss(&mt);
    let free: Vec<usize> = (0..mt.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut rows = Vec::new();
    for &fc in &free {
        let mut v = vec![T::zero(); mt.cols()];
        v[fc] = T::one();
        for (r, &pc) in pivots.iter().enumerate().take(rank) {
            v[pc] = -red.at(r, fc).clone();
        }
        rows.push(v);
    }
    if rows.is_empty() {
        Mat::zero(0, mt.cols())
    } else {
        Mat::from_rows(rows)
    }
}

/// Solve `x · M = b` over a field; returns one solution if consistent.
pub fn solve_left_field<T: FieldScalar>(m: &Mat<T>, b: &[T]) -> Option<Vector<T>> {
    // x · M = b  ⟺  Mᵀ · xᵀ = bᵀ; run elimination on the augmented system.
    assert_eq!(b.len(), m.cols());
    let mt = m.transpose();
    let bt = Mat::from_rows(vec![b.to_vec()]).transpose();
    let aug = mt.hstack(&bt);
    let (red, _, _, pivots) = gauss(&aug);
    let ncols = mt.cols();
    // Inconsistent if a pivot lands in the augmented column.
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![T::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = red.at(r, ncols).clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type IM = Mat<BigInt>;
    type QM = Mat<BigRational>;

    #[test]
    fn product_and_identity() {
        let a = IM::from_i64(2, 2, &[1, 2, 3, 4]);
        let id = IM::identity(2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
    }

    #[test]
    fn bareiss_determinant_matches_field_determinant() {
        let a = IM::from_i64(3, 3, &[2, -1, 0, -1, 2, -1, 0, -1, 2]);
        assert_eq!(det_int(&a), BigInt::from(4));
        let q = a.map(|x| BigRational::from_integer(x.clone()));
        assert_eq!(det_field(&q), BigRational::from_integer(BigInt::from(4)));
    }

    #[test]
    fn singular_determinant_is_zero() {
        let a = IM::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(det_int(&a), BigInt::from(0));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = QM::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 2, 3, 1]);
        let inv = inverse_field(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
    }

    #[test]
    fn left_kernel_pairs_to_zero() {
        let a = QM::from_i64(3, 2, &[1, 0, 0, 1, 1, 1]);
        let k = left_kernel_field(&a);
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&a).is_zero());
    }

    #[test]
    fn solve_left_consistent_and_inconsistent() {
        let m = QM::from_i64(2, 2, &[1, 1, 0, 1]);
        let b = vec![
            BigRational::from_integer(BigInt::from(2)),
            BigRational::from_integer(BigInt::from(3)),
        ];
        let x = solve_left_field(&m, &b).unwrap();
        assert_eq!(row_mul(&x, &m), b);

        let sing = QM::from_i64(2, 2, &[1, 0, 1, 0]);
        let b2 = vec![
            BigRational::from_integer(BigInt::from(0)),
            BigRational::from_integer(BigInt::from(1)),
        ];
        assert!(solve_left_field(&sing, &b2).is_none());
    }
}
