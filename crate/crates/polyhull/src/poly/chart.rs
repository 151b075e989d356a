//! Affine-hull charts: when a polyhedron satisfies nontrivial equations, the
//! chart maps between ambient coordinates and coordinates on the affine hull
//! so hull algorithms can run full-dimensionally.

use crate::arith::Scalar;
use crate::linalg::{rref, Matrix};

/// The equation system reduced so that each pivot coordinate is expressed in
/// the remaining (free) coordinates. Rows are stored in the usual affine
/// layout `(c, a₁, …, a_d)` meaning `c + Σ aᵢxᵢ = 0`, with entry 1 at each
/// row's pivot coordinate.
#[derive(Clone, Debug)]
pub struct AffineChart<S: Scalar> {
    ambient_dim: usize,
    rows: Matrix<S>,
    /// Pivot coordinate indices (0-based), one per row, strictly increasing.
    pivots: Vec<usize>,
    /// The non-pivot coordinate indices; these are the chart axes.
    free: Vec<usize>,
}

/// The equations alone are contradictory (they reduce to `1 = 0`).
#[derive(Clone, Copy, PartialEq, Eq, Debug, thiserror::Error)]
#[error("equation system is infeasible")]
pub struct InfeasibleEquations;

impl<S: Scalar> AffineChart<S> {
    /// Builds the chart from equation rows in affine layout. Elimination
    /// pivots on coordinate columns first and the constant column last, so a
    /// constant-column pivot is exactly an inconsistent system.
    pub fn from_equations(
        ambient_dim: usize,
        equations: &Matrix<S>,
    ) -> Result<Self, InfeasibleEquations> {
        let d = ambient_dim;
        let mut work = Matrix::zeros(equations.rows(), d + 1);
        for i in 0..equations.rows() {
            for j in 0..d {
                work[(i, j)] = equations[(i, 1 + j)].clone();
            }
            work[(i, d)] = equations[(i, 0)].clone();
        }
        let pivots = rref(&mut work);
        if pivots.last() == Some(&d) {
            return Err(InfeasibleEquations);
        }
        let mut rows = Matrix::zeros(work.rows(), d + 1);
        for i in 0..work.rows() {
            rows[(i, 0)] = work[(i, d)].clone();
            for j in 0..d {
                rows[(i, 1 + j)] = work[(i, j)].clone();
            }
        }
        let free = (0..d).filter(|c| !pivots.contains(c)).collect();
        Ok(AffineChart {
            ambient_dim: d,
            rows,
            pivots,
            free,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull (number of chart axes).
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn pivot_coords(&self) -> &[usize] {
        &self.pivots
    }

    pub fn free_coords(&self) -> &[usize] {
        &self.free
    }

    /// The reduced equation rows in affine layout.
    pub fn equation_rows(&self) -> &Matrix<S> {
        &self.rows
    }

    /// Ambient point -> chart point: keep the free coordinates.
    pub fn project_point(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.ambient_dim, "dimension mismatch");
        self.free.iter().map(|&f| x[f].clone()).collect()
    }

    /// Chart point -> ambient point. Pivot coordinates are recovered from the
    /// equations; the result satisfies all of them exactly.
    pub fn lift_point(&self, u: &[S]) -> Vec<S> {
        self.lift(u, true)
    }

    /// Chart direction -> ambient direction (constant terms ignored).
    pub fn lift_vector(&self, u: &[S]) -> Vec<S> {
        self.lift(u, false)
    }

    fn lift(&self, u: &[S], affine: bool) -> Vec<S> {
        assert_eq!(u.len(), self.free.len(), "dimension mismatch");
        let mut x = vec![S::zero(); self.ambient_dim];
        for (ui, &f) in u.iter().zip(&self.free) {
            x[f] = ui.clone();
        }
        for (r, &p) in self.pivots.iter().enumerate() {
            let mut v = if affine {
                -self.rows[(r, 0)].clone()
            } else {
                S::zero()
            };
            for (ui, &f) in u.iter().zip(&self.free) {
                let a = &self.rows[(r, 1 + f)];
                if !a.is_zero() {
                    v = v - a.clone() * ui;
                }
            }
            x[p] = v;
        }
        x
    }

    /// Rewrites an affine constraint row `(c, a)` over ambient coordinates as
    /// an equivalent row over the chart coordinates, substituting the pivot
    /// coordinates out.
    pub fn restrict_row(&self, row: &[S]) -> Vec<S> {
        assert_eq!(row.len(), self.ambient_dim + 1, "dimension mismatch");
        let mut reduced = row.to_vec();
        let cols: Vec<usize> = self.pivots.iter().map(|&p| 1 + p).collect();
        reduce_row_mod(&mut reduced, &self.rows, &cols);
        let mut out = Vec::with_capacity(1 + self.free.len());
        out.push(reduced[0].clone());
        for &f in &self.free {
            out.push(reduced[1 + f].clone());
        }
        out
    }
}

/// Subtracts multiples of `rows` (each having entry 1 in its pivot column)
/// from `row` so that `row` becomes zero in every pivot column.
pub(crate) fn reduce_row_mod<S: Scalar>(row: &mut [S], rows: &Matrix<S>, pivot_cols: &[usize]) {
    for (r, &col) in pivot_cols.iter().enumerate() {
        if row[col].is_zero() {
            continue;
        }
        let factor = std::mem::replace(&mut row[col], S::zero());
        for j in 0..row.len() {
            if j == col {
                continue;
            }
            let a = &rows[(r, j)];
            if !a.is_zero() {
                let delta = factor.clone() * a;
                let updated = std::mem::replace(&mut row[j], S::zero()) - delta;
                row[j] = updated;
            }
        }
    }
}
