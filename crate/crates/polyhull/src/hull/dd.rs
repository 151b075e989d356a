//! Double description: from a cone given by homogeneous inequalities to its
//! extreme rays and lineality basis.
//!
//! The computation runs in three stages. Equations restrict to their solution
//! subspace; the kernel of the remaining inequality matrix is the lineality
//! space, split off by restricting to its orthogonal complement (orthogonal
//! complements behave over any ordered field); what is left is a pointed cone
//! handled by the incremental double description step: start from a maximal
//! linearly independent subset of the rows, then add one inequality at a
//! time, keeping the nonnegative rays and combining adjacent (+,−) pairs
//! into new rays on the hyperplane.

use crate::arith::{dot, Scalar};
use crate::linalg::{invert, kernel, rank, Matrix};
use crate::poly::{Cone, ConeRep};

use super::bitset::BitSet;

/// An extreme ray candidate together with the set of already-processed
/// inequality rows it satisfies with equality. The active set is exact: new
/// rays inherit the intersection of their parents' sets plus the current row.
#[derive(Clone, Debug)]
pub struct RayRecord<S: Scalar> {
    pub ray: Vec<S>,
    pub active: BitSet,
}

/// How the incremental step picks the next inequality row.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum DdRowOrder {
    /// Input order. The default: deterministic and assumption-free.
    #[default]
    Given,
    /// Among the unprocessed rows, take one cutting off the most current
    /// rays (ties to the smallest index). A heuristic, still deterministic.
    MaxCutoff,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DdOptions {
    pub row_order: DdRowOrder,
    /// Decide adjacency by the rank of the common active rows instead of the
    /// combinatorial subset test. Slower; kept for cross-checking.
    pub algebraic_adjacency: bool,
}

/// Converts an inequality description of a cone into a generator description.
/// Rays come out canonically scaled; the lineality basis in echelon form.
pub fn double_description<S: Scalar>(cone: &Cone<S>) -> Cone<S> {
    double_description_with(cone, &DdOptions::default())
}

pub fn double_description_with<S: Scalar>(cone: &Cone<S>, opts: &DdOptions) -> Cone<S> {
    let ConeRep::ByInequalities {
        inequalities,
        equations,
    } = &cone.rep
    else {
        panic!("double description expects an inequality description");
    };
    let n = cone.coord_dim;

    // Stage 1: restrict to the solution space of the equations.
    let eq_basis = if equations.rows() == 0 {
        None
    } else {
        Some(kernel(equations)) // rows: basis of {x : Ex = 0}
    };
    let stage1_dim = eq_basis.as_ref().map_or(n, Matrix::rows);
    let mut rows1: Vec<Vec<S>> = Vec::new();
    for row in inequalities.iter_rows() {
        let r = match &eq_basis {
            None => row.to_vec(),
            Some(b) => b.iter_rows().map(|basis| dot(row, basis)).collect(),
        };
        if !r.iter().all(|v| v.is_zero()) {
            rows1.push(r);
        }
    }
    let a1 = Matrix::from_rows_with_cols(rows1, stage1_dim);

    // Stage 2: split off the lineality (kernel of the inequality rows).
    let lin1 = kernel(&a1); // rows: lineality basis in stage-1 coordinates
    let complement = kernel(&lin1); // rows: basis of the orthogonal complement
    let a2 = if lin1.rows() == 0 {
        a1.clone()
    } else {
        let rows: Vec<Vec<S>> = a1
            .iter_rows()
            .map(|row| complement.iter_rows().map(|basis| dot(row, basis)).collect())
            .collect();
        Matrix::from_rows_with_cols(rows, complement.rows())
    };

    // Stage 3: pointed double description.
    let records = pointed_dd(&a2, opts);

    // Lift back: stage-2 coords -> stage-1 coords -> ambient.
    let lift1 = |v: &[S]| -> Vec<S> {
        match &eq_basis {
            None => v.to_vec(),
            Some(b) => {
                let mut out = vec![S::zero(); n];
                for (c, basis) in v.iter().zip(b.iter_rows()) {
                    if c.is_zero() {
                        continue;
                    }
                    for (o, bv) in out.iter_mut().zip(basis) {
                        let delta = c.clone() * bv;
                        *o = std::mem::replace(o, S::zero()) + delta;
                    }
                }
                out
            }
        }
    };
    let mut rays: Vec<Vec<S>> = Vec::new();
    for rec in &records {
        let v1 = if lin1.rows() == 0 {
            rec.ray.clone()
        } else {
            // Row vector times the complement basis matrix.
            let mut out = vec![S::zero(); stage1_dim];
            for (c, basis) in rec.ray.iter().zip(complement.iter_rows()) {
                if c.is_zero() {
                    continue;
                }
                for (o, bv) in out.iter_mut().zip(basis) {
                    let delta = c.clone() * bv;
                    *o = std::mem::replace(o, S::zero()) + delta;
                }
            }
            out
        };
        let mut amb = lift1(&v1);
        S::canonical_scale_positive(&mut amb);
        rays.push(amb);
    }
    let mut lineality: Vec<Vec<S>> = lin1.iter_rows().map(|row| lift1(row)).collect();
    let mut lin_m = Matrix::from_rows_with_cols(std::mem::take(&mut lineality), n);
    crate::linalg::rref(&mut lin_m);
    let lin_rows: Vec<Vec<S>> = lin_m
        .iter_rows()
        .map(|r| {
            let mut v = r.to_vec();
            S::canonical_scale_positive(&mut v);
            v
        })
        .collect();

    Cone {
        coord_dim: n,
        rep: ConeRep::ByGenerators {
            rays: Matrix::from_rows_with_cols(rays, n),
            lineality: Matrix::from_rows_with_cols(lin_rows, n),
        },
    }
}

/// Incremental double description for a pointed cone (`kernel(a) = 0`).
fn pointed_dd<S: Scalar>(a: &Matrix<S>, opts: &DdOptions) -> Vec<RayRecord<S>> {
    let n = a.cols();
    let m = a.rows();
    if n == 0 {
        return Vec::new();
    }
    debug_assert_eq!(rank(a), n, "pointed stage needs full column rank");

    // Maximal linearly independent row subset, greedily in input order.
    let mut chosen: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<S>> = Vec::new();
    for i in 0..m {
        if chosen.len() == n {
            break;
        }
        acc.push(a.row(i).to_vec());
        if rank(&Matrix::from_rows_with_cols(acc.clone(), n)) == acc.len() {
            chosen.push(i);
        } else {
            acc.pop();
        }
    }
    assert_eq!(chosen.len(), n, "full-rank subset must exist");

    let b = a.select_rows(&chosen);
    let binv = invert(&b).expect("chosen rows are independent");
    let mut processed = vec![false; m];
    for &i in &chosen {
        processed[i] = true;
    }
    let mut rays: Vec<RayRecord<S>> = Vec::new();
    for j in 0..n {
        let mut ray: Vec<S> = (0..n).map(|i| binv[(i, j)].clone()).collect();
        S::canonical_scale_positive(&mut ray);
        let mut active = BitSet::new(m);
        for (i, &row) in chosen.iter().enumerate() {
            if i != j {
                active.insert(row);
            }
        }
        rays.push(RayRecord { ray, active });
    }

    loop {
        let next = match opts.row_order {
            DdRowOrder::Given => (0..m).find(|&i| !processed[i]),
            DdRowOrder::MaxCutoff => (0..m)
                .filter(|&i| !processed[i])
                .max_by_key(|&i| {
                    let cut = rays
                        .iter()
                        .filter(|r| dot(a.row(i), &r.ray).is_negative())
                        .count();
                    (cut, std::cmp::Reverse(i))
                }),
        };
        let Some(row_idx) = next else {
            break;
        };
        processed[row_idx] = true;
        let row = a.row(row_idx);

        let evals: Vec<S> = rays.iter().map(|r| dot(row, &r.ray)).collect();
        let mut pos = Vec::new();
        let mut zero = Vec::new();
        let mut neg = Vec::new();
        for (idx, v) in evals.iter().enumerate() {
            match v.signum() {
                1 => pos.push(idx),
                0 => zero.push(idx),
                _ => neg.push(idx),
            }
        }
        if neg.is_empty() {
            for &z in &zero {
                rays[z].active.insert(row_idx);
            }
            continue;
        }

        let mut new_rays: Vec<RayRecord<S>> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].active.intersection(&rays[q].active);
                if (common.count() as i64) < n as i64 - 2 {
                    continue;
                }
                let adjacent = if opts.algebraic_adjacency {
                    let idx: Vec<usize> = common.iter_ones().collect();
                    rank(&a.select_rows(&idx)) == n - 2
                } else {
                    !rays.iter().enumerate().any(|(ridx, r)| {
                        ridx != p && ridx != q && r.active.contains_all(&common)
                    })
                };
                if !adjacent {
                    continue;
                }
                // s_p · ray_q − s_q · ray_p lands on the new hyperplane and
                // keeps every previously common row active.
                let mut ray: Vec<S> = rays[q]
                    .ray
                    .iter()
                    .zip(&rays[p].ray)
                    .map(|(rq, rp)| evals[p].clone() * rq - evals[q].clone() * rp)
                    .collect();
                S::canonical_scale_positive(&mut ray);
                let mut active = common;
                active.insert(row_idx);
                new_rays.push(RayRecord { ray, active });
            }
        }

        let mut kept: Vec<RayRecord<S>> = Vec::with_capacity(pos.len() + zero.len() + new_rays.len());
        for (idx, r) in rays.into_iter().enumerate() {
            if evals[idx].is_negative() {
                continue;
            }
            let mut r = r;
            if evals[idx].is_zero() {
                r.active.insert(row_idx);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }
    rays
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::linalg::lex_cmp;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn cone_from_rows(coord_dim: usize, ineq: Vec<Vec<Rational>>, eq: Vec<Vec<Rational>>) -> Cone<Rational> {
        Cone {
            coord_dim,
            rep: ConeRep::ByInequalities {
                inequalities: Matrix::from_rows_with_cols(ineq, coord_dim),
                equations: Matrix::from_rows_with_cols(eq, coord_dim),
            },
        }
    }

    fn sorted_rays(c: &Cone<Rational>) -> Vec<Vec<Rational>> {
        let ConeRep::ByGenerators { rays, .. } = &c.rep else {
            panic!("expected generators");
        };
        let mut rows = rays.to_row_vecs();
        rows.sort_by(|a, b| lex_cmp(a, b));
        rows
    }

    #[test]
    fn positive_orthant_rays() {
        let c = cone_from_rows(
            3,
            vec![
                vec![q(1), q(0), q(0)],
                vec![q(0), q(1), q(0)],
                vec![q(0), q(0), q(1)],
            ],
            vec![],
        );
        let out = double_description(&c);
        assert_eq!(
            sorted_rays(&out),
            vec![
                vec![q(0), q(0), q(1)],
                vec![q(0), q(1), q(0)],
                vec![q(1), q(0), q(0)],
            ]
        );
    }

    #[test]
    fn halfspace_has_lineality() {
        // {y : y₀ ≥ 0} in 2 coordinates: ray e₀, lineality e₁.
        let c = cone_from_rows(2, vec![vec![q(1), q(0)]], vec![]);
        let out = double_description(&c);
        let ConeRep::ByGenerators { rays, lineality } = &out.rep else {
            panic!();
        };
        assert_eq!(rays.to_row_vecs(), vec![vec![q(1), q(0)]]);
        assert_eq!(lineality.to_row_vecs(), vec![vec![q(0), q(1)]]);
    }

    #[test]
    fn equations_cut_the_cone() {
        // y₀ ≥ 0, y₁ ≥ 0, y₂ ≥ 0 intersected with y₀ = y₁ + y₂.
        let c = cone_from_rows(
            3,
            vec![
                vec![q(1), q(0), q(0)],
                vec![q(0), q(1), q(0)],
                vec![q(0), q(0), q(1)],
            ],
            vec![vec![q(1), q(-1), q(-1)]],
        );
        let out = double_description(&c);
        assert_eq!(
            sorted_rays(&out),
            vec![vec![q(1), q(0), q(1)], vec![q(1), q(1), q(0)]]
        );
    }

    #[test]
    fn trivial_cone_has_no_rays() {
        // y ≥ 0 and y ≤ 0 in one coordinate.
        let c = cone_from_rows(1, vec![vec![q(1)], vec![q(-1)]], vec![]);
        let out = double_description(&c);
        let ConeRep::ByGenerators { rays, lineality } = &out.rep else {
            panic!();
        };
        assert_eq!(rays.rows(), 0);
        assert_eq!(lineality.rows(), 0);
    }

    #[test]
    fn square_cone_four_rays_all_options() {
        // Homogenized unit square: x₀ ≥ x₁ ≥ 0, x₀ ≥ x₂ ≥ 0.
        let rows = vec![
            vec![q(0), q(1), q(0)],
            vec![q(1), q(-1), q(0)],
            vec![q(0), q(0), q(1)],
            vec![q(1), q(0), q(-1)],
            vec![q(1), q(0), q(0)],
        ];
        let c = cone_from_rows(3, rows, vec![]);
        let expect = vec![
            vec![q(1), q(0), q(0)],
            vec![q(1), q(0), q(1)],
            vec![q(1), q(1), q(0)],
            vec![q(1), q(1), q(1)],
        ];
        for opts in [
            DdOptions::default(),
            DdOptions {
                algebraic_adjacency: true,
                ..DdOptions::default()
            },
            DdOptions {
                row_order: DdRowOrder::MaxCutoff,
                algebraic_adjacency: false,
            },
        ] {
            let out = double_description_with(&c, &opts);
            assert_eq!(sorted_rays(&out), expect, "options {opts:?}");
        }
    }
}
