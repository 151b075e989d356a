//! Dense exact linear algebra over any [`Scalar`]: elimination, rank, kernel,
//! solving, determinants and inverses.
//!
//! Pivoting is always "first nonzero in column order", so every routine is
//! deterministic: the same input produces the same elimination, the same
//! kernel basis and the same solution vector.

use std::any::TypeId;
use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{Rational, Scalar};

/// A dense row-major matrix. May have zero rows or columns.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn empty(cols: usize) -> Self {
        Matrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [S] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[S]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn push_row(&mut self, row: Vec<S>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<S>> {
        self.iter_rows().map(<[S]>::to_vec).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (a, b) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(b * self.cols);
        head[a * self.cols..(a + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    pub fn transpose(&self) -> Matrix<S> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        self.iter_rows().map(|row| crate::arith::dot(row, v)).collect()
    }

    pub fn mul_mat(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a.clone() * b;
                        out[(i, j)] = std::mem::replace(&mut out[(i, j)], S::zero()) + prod;
                    }
                }
            }
        }
        out
    }

    pub fn select_rows(&self, indices: &[usize]) -> Matrix<S> {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: indices.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, indices: &[usize]) -> Matrix<S> {
        let mut data = Vec::with_capacity(indices.len() * self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            for &j in indices {
                data.push(row[j].clone());
            }
        }
        Matrix {
            rows: self.rows,
            cols: indices.len(),
            data,
        }
    }

    /// Sorts the rows lexicographically (scalar order entry by entry).
    pub fn sort_rows(&mut self) {
        let mut rows = self.to_row_vecs();
        rows.sort_by(|a, b| lex_cmp(a, b));
        *self = Matrix::from_rows_with_cols(rows, self.cols);
    }

    /// Like [`Matrix::from_rows`] but keeps a declared width for empty input.
    pub fn from_rows_with_cols(rows: Vec<Vec<S>>, cols: usize) -> Self {
        if rows.is_empty() {
            Matrix::empty(cols)
        } else {
            let m = Matrix::from_rows(rows);
            assert_eq!(m.cols, cols, "row width mismatch");
            m
        }
    }
}

impl<S: Scalar> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Lexicographic comparison of two equal-length rows.
pub fn lex_cmp<S: Scalar>(a: &[S], b: &[S]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Reduces `m` in place to reduced row echelon form; returns the pivot
/// columns in increasing order. Deterministic: the pivot in each column is
/// the first row with a nonzero entry.
pub fn rref<S: Scalar>(m: &mut Matrix<S>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..m.cols() {
        if pivot_row == m.rows() {
            break;
        }
        let Some(found) = (pivot_row..m.rows()).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(pivot_row, found);
        let inv = S::one().try_div(&m[(pivot_row, col)]).expect("nonzero pivot");
        for j in col..m.cols() {
            let scaled = std::mem::replace(&mut m[(pivot_row, j)], S::zero()) * &inv;
            m[(pivot_row, j)] = scaled;
        }
        for r in 0..m.rows() {
            if r == pivot_row || m[(r, col)].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut m[(r, col)], S::zero());
            for j in (col + 1)..m.cols() {
                let delta = factor.clone() * &m[(pivot_row, j)];
                let updated = std::mem::replace(&mut m[(r, j)], S::zero()) - delta;
                m[(r, j)] = updated;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    m.data.truncate(pivot_row * m.cols());
    m.rows = pivot_row;
    pivots
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// A basis (as matrix rows) of the right kernel `{x : m x = 0}`.
pub fn kernel<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    let cols = m.cols();
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; cols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut x = vec![S::zero(); cols];
        x[free] = S::one();
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = -work[(prow, free)].clone();
        }
        basis.push(x);
    }
    Matrix::from_rows_with_cols(basis, cols)
}

/// Solves `A x = b` exactly. Returns `None` when inconsistent; when the
/// solution space has positive dimension, the free variables (non-pivot
/// columns under column-order elimination) are set to 0.
///
/// Panics if `b.len() != A.rows()`.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    assert_eq!(b.len(), a.rows(), "dimension mismatch");
    let mut aug = Matrix::zeros(a.rows(), a.cols() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols())] = b[i].clone();
    }
    let pivots = rref(&mut aug);
    // A pivot in the augmented column means 0 = 1: inconsistent.
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![S::zero(); a.cols()];
    for (prow, &pcol) in pivots.iter().enumerate() {
        x[pcol] = aug[(prow, a.cols())].clone();
    }
    Some(x)
}

/// Exact determinant.
///
/// Square matrices of integers (over [`Rational`]) take a fraction-free
/// Bareiss elimination to keep intermediate values small; everything else
/// uses plain Gaussian elimination over the field.
pub fn det<S: Scalar>(m: &Matrix<S>) -> S {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return S::one();
    }
    if TypeId::of::<S>() == TypeId::of::<Rational>() {
        if let Some(d) = det_integer_fast(m) {
            return d;
        }
    }
    let mut work = m.clone();
    let mut sign_flips = 0usize;
    let mut result = S::one();
    for col in 0..n {
        let Some(found) = (col..n).find(|&r| !work[(r, col)].is_zero()) else {
            return S::zero();
        };
        if found != col {
            work.swap_rows(col, found);
            sign_flips += 1;
        }
        let pivot = work[(col, col)].clone();
        result = result * &pivot;
        let inv = S::one().try_div(&pivot).expect("nonzero pivot");
        for r in (col + 1)..n {
            if work[(r, col)].is_zero() {
                continue;
            }
            let factor = work[(r, col)].clone() * &inv;
            for j in (col + 1)..n {
                let delta = factor.clone() * &work[(col, j)];
                let updated = std::mem::replace(&mut work[(r, j)], S::zero()) - delta;
                work[(r, j)] = updated;
            }
        }
    }
    if sign_flips % 2 == 1 {
        result = -result;
    }
    result
}

/// Bareiss fraction-free determinant for all-integer rational matrices.
/// Returns `None` when some entry is not an integer.
fn det_integer_fast<S: Scalar>(m: &Matrix<S>) -> Option<S> {
    let any: &dyn std::any::Any = m;
    let m = any.downcast_ref::<Matrix<Rational>>().expect("checked TypeId");
    let n = m.rows();
    let mut w: Vec<BigInt> = Vec::with_capacity(n * n);
    for v in &m.data {
        w.push(v.to_integer()?);
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if w[k * n + k].is_zero() {
            let Some(found) = ((k + 1)..n).find(|&r| !w[r * n + k].is_zero()) else {
                return Some(S::zero());
            };
            for j in 0..n {
                w.swap(k * n + j, found * n + j);
            }
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &w[i * n + j] * &w[k * n + k] - &w[i * n + k] * &w[k * n + j];
                w[i * n + j] = num / &prev;
            }
            w[i * n + k] = BigInt::zero();
        }
        prev = w[k * n + k].clone();
    }
    let mut out = w[n * n - 1].clone();
    if sign < 0 {
        out = -out;
    }
    let out = Rational::from_integer(out);
    let any_out: Box<dyn std::any::Any> = Box::new(out);
    Some(*any_out.downcast::<S>().expect("checked TypeId"))
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert<S: Scalar>(m: &Matrix<S>) -> Option<Matrix<S>> {
    assert_eq!(m.rows(), m.cols(), "inverse of a non-square matrix");
    let n = m.rows();
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = S::one();
    }
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = aug[(i, n + j)].clone();
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn solve_identity() {
        let a = Matrix::<Rational>::identity(3);
        let b = vec![q("1"), q("2"), q("3")];
        assert_eq!(solve(&a, &b).unwrap(), b);
    }

    #[test]
    fn solve_matches_cramer() {
        // Cramer on [[2,3],[5,8]] x = (1,1): det = 1, x1 = det[[1,3],[1,8]] = 5,
        // x2 = det[[2,1],[5,1]] = -3.
        let a = mat(&[&[2, 3], &[5, 8]]);
        assert_eq!(solve(&a, &[q("1"), q("1")]).unwrap(), vec![q("5"), q("-3")]);
        assert_eq!(det(&a), q("1"));
    }

    #[test]
    fn solve_inconsistent() {
        let a = mat(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&a, &[q("0"), q("1")]), None);
    }

    #[test]
    fn solve_underdetermined_sets_free_vars_to_zero() {
        let a = mat(&[&[1, 1, 1]]);
        let x = solve(&a, &[q("5")]).unwrap();
        assert_eq!(x, vec![q("5"), q("0"), q("0")]);
    }

    #[test]
    fn rank_and_kernel() {
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
        let k = kernel(&mat(&[&[1, 1, 1]]));
        assert_eq!(k.rows(), 2);
        for row in k.iter_rows() {
            let s = row.iter().fold(q("0"), |acc, v| acc + v);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn det_on_non_integer_entries() {
        let a = Matrix::from_rows(vec![
            vec![q("1/2"), q("1/3")],
            vec![q("1/4"), q("1/5")],
        ]);
        assert_eq!(det(&a), q("1/60"));
    }

    #[test]
    fn det_needs_pivot_swap() {
        let a = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&a), q("-1"));
        let b = mat(&[&[0, 2, 1], &[1, 0, 0], &[0, 0, 3]]);
        assert_eq!(det(&b), q("-6"));
    }

    #[test]
    fn invert_round_trip() {
        let a = mat(&[&[2, 3], &[5, 8]]);
        let inv = invert(&a).unwrap();
        assert_eq!(a.mul_mat(&inv), Matrix::identity(2));
        assert_eq!(invert(&mat(&[&[1, 2], &[2, 4]])), None);
    }
}
