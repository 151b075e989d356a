//! Redundancy removal for both kinds of description.
//!
//! Points are filtered geometrically: build the facets of the set once, then
//! keep exactly the points whose active constraints span the whole space.
//! Inequalities are filtered by linear programming: detect implicit
//! equalities first, then drop each row that stays valid without itself.

use crate::arith::Scalar;
use crate::hull::{beneath_beyond, InsertionOrder};
use crate::linalg::{rank, Matrix};
use crate::lp::{solve_lp, LinearProgram, LpStatus, Sense};

use super::{eval_affine_row, HRep};

/// Indices of the points that are vertices of the convex hull of `points`
/// (rows are plain coordinate vectors), in increasing order. Duplicates of a
/// vertex are all reported, since each is a vertex in its own right.
pub fn irredundant_points<S: Scalar>(points: &Matrix<S>) -> Vec<usize> {
    assert!(points.rows() > 0, "need at least one point");
    let (facets, _) = beneath_beyond(points, InsertionOrder::Given);
    vertex_indices(&facets, points)
}

/// Points of `points` whose active rows of `facets` (equations plus tight
/// inequalities) have normals of full rank; those are exactly the vertices.
pub(crate) fn vertex_indices<S: Scalar>(facets: &HRep<S>, points: &Matrix<S>) -> Vec<usize> {
    let d = points.cols();
    (0..points.rows())
        .filter(|&i| {
            let x = points.row(i);
            let mut normals: Vec<Vec<S>> = facets
                .equations
                .iter_rows()
                .map(|r| r[1..].to_vec())
                .collect();
            for r in facets.inequalities.iter_rows() {
                if eval_affine_row(r, x).is_zero() {
                    normals.push(r[1..].to_vec());
                }
            }
            rank(&Matrix::from_rows_with_cols(normals, d)) == d
        })
        .collect()
}

/// An equivalent description without redundant rows, in canonical form.
/// Implicit equalities (inequalities that every feasible point satisfies
/// with equality) move to the equation block; afterwards each remaining
/// inequality is kept only if dropping it changes the region. An infeasible
/// input collapses to the infeasible marker.
pub fn irredundant_inequalities<S: Scalar>(h: &HRep<S>) -> HRep<S> {
    let d = h.ambient_dim();
    let c = h.canonical_form();
    if c.is_infeasible_marker() {
        return c;
    }

    let mut eq_rows: Vec<Vec<S>> = c.equations.to_row_vecs();
    let mut ineq_rows: Vec<Vec<S>> = Vec::new();
    for row in c.inequalities.iter_rows() {
        let r = solve_lp(&LinearProgram {
            region: &c,
            objective: row.to_vec(),
            sense: Sense::Max,
        });
        match r.status {
            LpStatus::Infeasible => return HRep::infeasible(d),
            LpStatus::Optimal if r.optimal_value.as_ref().unwrap().is_zero() => {
                eq_rows.push(row.to_vec());
            }
            _ => ineq_rows.push(row.to_vec()),
        }
    }
    if c.inequalities.rows() == 0 {
        // No rows probed the region above; check feasibility directly.
        let r = solve_lp(&LinearProgram {
            region: &c,
            objective: vec![S::zero(); d + 1],
            sense: Sense::Max,
        });
        if r.status == LpStatus::Infeasible {
            return HRep::infeasible(d);
        }
    }

    let c2 = HRep::from_matrices(
        d,
        Matrix::from_rows_with_cols(ineq_rows, d + 1),
        Matrix::from_rows_with_cols(eq_rows, d + 1),
    )
    .canonical_form();

    let mut kept: Vec<Vec<S>> = c2.inequalities.to_row_vecs();
    let mut i = 0;
    while i < kept.len() {
        let candidate = kept.remove(i);
        let region = HRep::from_matrices(
            d,
            Matrix::from_rows_with_cols(kept.clone(), d + 1),
            c2.equations.clone(),
        );
        let r = solve_lp(&LinearProgram {
            region: &region,
            objective: candidate.clone(),
            sense: Sense::Min,
        });
        let redundant = match r.status {
            LpStatus::Optimal => !r.optimal_value.unwrap().is_negative(),
            _ => false,
        };
        if !redundant {
            kept.insert(i, candidate);
            i += 1;
        }
    }

    HRep::from_matrices(
        d,
        Matrix::from_rows_with_cols(kept, d + 1),
        c2.equations.clone(),
    )
    .canonical_form()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn midpoint_is_not_a_vertex() {
        let m = Matrix::from_rows(vec![
            vec![q("0")],
            vec![q("1")],
            vec![q("1/2")],
        ]);
        assert_eq!(irredundant_points(&m), vec![0, 1]);
    }

    #[test]
    fn duplicate_vertices_are_each_reported() {
        let m = Matrix::from_rows(vec![
            vec![q("0"), q("0")],
            vec![q("1"), q("0")],
            vec![q("0"), q("1")],
            vec![q("0"), q("0")],
        ]);
        assert_eq!(irredundant_points(&m), vec![0, 1, 2, 3]);
    }

    #[test]
    fn all_simplex_corners_survive() {
        let m = Matrix::from_rows(vec![
            vec![q("0"), q("0"), q("0")],
            vec![q("1"), q("0"), q("0")],
            vec![q("0"), q("1"), q("0")],
            vec![q("0"), q("0"), q("1")],
        ]);
        assert_eq!(irredundant_points(&m), vec![0, 1, 2, 3]);
    }

    #[test]
    fn looser_bound_is_dropped() {
        let mut h = HRep::new(1);
        h.push_inequality(vec![q("0"), q("1")]); // x ≥ 0
        h.push_inequality(vec![q("-1"), q("1")]); // x ≥ 1
        let r = irredundant_inequalities(&h);
        assert_eq!(r.inequalities.rows(), 1);
        assert_eq!(r.inequalities.row(0), &[q("-1"), q("1")]);
        assert_eq!(r.equations.rows(), 0);
    }

    #[test]
    fn doubled_cube_rows_collapse() {
        let d = 3;
        let mut h = HRep::new(d);
        for _ in 0..2 {
            for i in 0..d {
                let mut lo = vec![q("0"); d + 1];
                lo[1 + i] = q("1");
                h.push_inequality(lo);
                let mut hi = vec![q("0"); d + 1];
                hi[0] = q("1");
                hi[1 + i] = q("-1");
                h.push_inequality(hi);
            }
        }
        let r = irredundant_inequalities(&h);
        assert_eq!(r.inequalities.rows(), 2 * d);
        assert_eq!(r.equations.rows(), 0);
    }

    #[test]
    fn opposite_inequalities_become_an_equation() {
        let mut h = HRep::new(2);
        h.push_inequality(vec![q("0"), q("1"), q("1")]); // x + y ≥ 0
        h.push_inequality(vec![q("0"), q("-1"), q("-1")]); // x + y ≤ 0
        h.push_inequality(vec![q("1"), q("1"), q("0")]); // x ≥ -1
        let r = irredundant_inequalities(&h);
        assert_eq!(r.equations.rows(), 1);
        assert_eq!(r.inequalities.rows(), 1);
    }

    #[test]
    fn infeasible_system_collapses_to_the_marker() {
        let mut h = HRep::new(2);
        h.push_inequality(vec![q("-2"), q("1"), q("0")]); // x ≥ 2
        h.push_inequality(vec![q("0"), q("-1"), q("0")]); // x ≤ 0
        h.push_inequality(vec![q("0"), q("0"), q("1")]);
        let r = irredundant_inequalities(&h);
        assert!(r.is_infeasible_marker());
    }
}
