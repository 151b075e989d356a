//! Beneath-and-beyond: facets of a convex hull of points, built
//! incrementally while maintaining a placing triangulation.
//!
//! The hull boundary is kept as a simplicial complex of facet cells with
//! neighbor links across ridges. Inserting a point evaluates every boundary
//! cell's inequality at it: cells with a strictly negative value are visible
//! and die; each ridge between a visible cell and a non-visible one is a
//! horizon ridge and spawns a replacement cell whose hyperplane is a linear
//! combination of the two incident rows (no linear solve needed). Visible
//! cells joined to the point become new triangulation simplices; a point
//! with no visible cell is already in the hull and changes nothing.
//!
//! Input point sets of lower affine dimension are restricted to a chart on
//! their affine hull first, so the main loop always runs full-dimensionally;
//! the affine hull itself is reported through equation rows.

use std::collections::HashMap;

use crate::arith::Scalar;
use crate::linalg::{kernel, rref, Matrix};
use crate::poly::{eval_affine_row, AffineChart, HRep};

use super::order::{apply_order, InsertionOrder};

/// A placing triangulation of a point set, with the hull facets it produced.
#[derive(Clone, Debug)]
pub struct Triangulation<S: Scalar> {
    /// The deduplicated points in insertion order (plain coordinate rows).
    pub vertices: Matrix<S>,
    /// Index tuples into `vertices`, each of size `dim + 1` where `dim` is
    /// the affine dimension of the point set: full-dimensional simplices of
    /// the affine hull that together cover the convex hull.
    pub simplices: Vec<Vec<usize>>,
    /// Canonical facet description (with affine-hull equations).
    pub facets: HRep<S>,
}

struct Cell<S> {
    /// Sorted indices into the point list; always `dim` of them.
    verts: Vec<usize>,
    /// Chart-coordinate inequality row, canonical, nonnegative on the hull.
    row: Vec<S>,
    /// `neighbors[j]` is the cell across the ridge `verts \ {verts[j]}`.
    neighbors: Vec<u32>,
    alive: bool,
}

/// Computes the facets of `conv(points)` (rows are plain coordinates) and
/// the placing triangulation for the chosen insertion order.
pub fn beneath_beyond<S: Scalar>(
    points: &Matrix<S>,
    order: InsertionOrder,
) -> (HRep<S>, Triangulation<S>) {
    assert!(points.rows() > 0, "hull of an empty point set");
    let d = points.cols();
    let ordered = apply_order(points, order);

    let mut seen: HashMap<Vec<S>, ()> = HashMap::new();
    let mut pts: Vec<Vec<S>> = Vec::new();
    for row in ordered.iter_rows() {
        if seen.insert(row.to_vec(), ()).is_none() {
            pts.push(row.to_vec());
        }
    }

    // Affine hull: normals annihilating all difference vectors.
    let diffs: Vec<Vec<S>> = pts[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(&pts[0])
                .map(|(a, b)| a.clone() - b)
                .collect()
        })
        .collect();
    let normals = kernel(&Matrix::from_rows_with_cols(diffs, d));
    let mut equations: Vec<Vec<S>> = Vec::new();
    for a in normals.iter_rows() {
        let mut row = Vec::with_capacity(d + 1);
        row.push(-crate::arith::dot(a, &pts[0]));
        row.extend_from_slice(a);
        equations.push(row);
    }
    let chart = AffineChart::from_equations(d, &Matrix::from_rows_with_cols(equations, d + 1))
        .expect("point-derived equations are consistent");
    let k = chart.dim();

    let vertices = Matrix::from_rows_with_cols(pts.clone(), d);
    if k == 0 {
        let facets = HRep::from_matrices(
            d,
            Matrix::empty(d + 1),
            chart.equation_rows().clone(),
        )
        .canonical_form();
        let tri = Triangulation {
            vertices,
            simplices: vec![vec![0]],
            facets: facets.clone(),
        };
        return (facets, tri);
    }

    let chart_pts: Vec<Vec<S>> = pts.iter().map(|p| chart.project_point(p)).collect();

    // First simplex: greedily collect k+1 affinely independent points.
    let mut init: Vec<usize> = vec![0];
    let mut acc: Vec<Vec<S>> = Vec::new();
    for i in 1..chart_pts.len() {
        if init.len() == k + 1 {
            break;
        }
        let diff: Vec<S> = chart_pts[i]
            .iter()
            .zip(&chart_pts[0])
            .map(|(a, b)| a.clone() - b)
            .collect();
        acc.push(diff);
        if crate::linalg::rank(&Matrix::from_rows_with_cols(acc.clone(), k)) == acc.len() {
            init.push(i);
        } else {
            acc.pop();
        }
    }
    assert_eq!(init.len(), k + 1, "chart dimension matches point rank");

    let mut simplices: Vec<Vec<usize>> = vec![init.clone()];
    let mut cells: Vec<Cell<S>> = Vec::new();
    for j in 0..=k {
        let mut verts: Vec<usize> = init
            .iter()
            .enumerate()
            .filter(|&(idx, _)| idx != j)
            .map(|(_, &v)| v)
            .collect();
        verts.sort_unstable();
        let row = hyperplane_through(&chart_pts, &verts, &chart_pts[init[j]]);
        let mut neighbors = vec![u32::MAX; k];
        for (idx, &w) in init.iter().enumerate() {
            if idx == j {
                continue;
            }
            let slot = verts.binary_search(&w).expect("vertex of the cell");
            neighbors[slot] = idx as u32;
        }
        cells.push(Cell {
            verts,
            row,
            neighbors,
            alive: true,
        });
    }

    let init_set: Vec<bool> = {
        let mut v = vec![false; pts.len()];
        for &i in &init {
            v[i] = true;
        }
        v
    };
    let mut alive_ids: Vec<u32> = (0..cells.len() as u32).collect();

    for p_idx in 0..pts.len() {
        if init_set[p_idx] {
            continue;
        }
        let up = &chart_pts[p_idx];
        let mut evals: Vec<Option<S>> = vec![None; cells.len()];
        let mut any_visible = false;
        for &id in &alive_ids {
            let e = eval_affine_row(&cells[id as usize].row, up);
            if e.is_negative() {
                any_visible = true;
            }
            evals[id as usize] = Some(e);
        }
        if !any_visible {
            continue;
        }
        let visible: Vec<u32> = alive_ids
            .iter()
            .copied()
            .filter(|&id| evals[id as usize].as_ref().unwrap().is_negative())
            .collect();

        let mut fresh: HashMap<Vec<usize>, (u32, usize)> = HashMap::new();
        let first_new = cells.len() as u32;
        for &fid in &visible {
            for j in 0..k {
                let gid = cells[fid as usize].neighbors[j];
                let g_eval = evals[gid as usize].as_ref().expect("neighbor is alive");
                if g_eval.is_negative() {
                    continue; // internal ridge between two visible cells
                }
                let f = &cells[fid as usize];
                let fp = evals[fid as usize].as_ref().unwrap();
                let g = &cells[gid as usize];
                // Hyperplane through the ridge and the new point: positive
                // combination g(p)·f − f(p)·g of the incident rows.
                let mut row: Vec<S> = f
                    .row
                    .iter()
                    .zip(&g.row)
                    .map(|(fv, gv)| g_eval.clone() * fv - fp.clone() * gv)
                    .collect();
                debug_assert!(!row.iter().all(|v| v.is_zero()));
                S::canonical_scale_positive(&mut row);

                let mut verts: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(s, _)| s != j)
                    .map(|(_, &v)| v)
                    .collect();
                let insert_at = verts.partition_point(|&v| v < p_idx);
                verts.insert(insert_at, p_idx);

                let new_id = cells.len() as u32;
                let mut neighbors = vec![u32::MAX; k];
                neighbors[insert_at] = gid;
                // Point the horizon neighbor back at the replacement cell.
                let ridge_removed = f.verts[j];
                let g_opposite = cells[gid as usize]
                    .verts
                    .iter()
                    .position(|&v| !cells[fid as usize].verts.contains(&v) || v == ridge_removed)
                    .expect("neighbor has an opposite vertex");
                let mut cell = Cell {
                    verts,
                    row,
                    neighbors,
                    alive: true,
                };
                // Link ridges shared between two replacement cells.
                for s in 0..k {
                    if s == insert_at {
                        continue;
                    }
                    let key: Vec<usize> = cell
                        .verts
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != s)
                        .map(|(_, &v)| v)
                        .collect();
                    match fresh.remove(&key) {
                        Some((other_id, other_slot)) => {
                            cell.neighbors[s] = other_id;
                            cells[other_id as usize].neighbors[other_slot] = new_id;
                        }
                        None => {
                            fresh.insert(key, (new_id, s));
                        }
                    }
                }
                cells[gid as usize].neighbors[g_opposite] = new_id;
                cells.push(cell);
            }
        }
        debug_assert!(fresh.is_empty(), "replacement cells must close up");

        for &fid in &visible {
            let mut simplex = cells[fid as usize].verts.clone();
            let at = simplex.partition_point(|&v| v < p_idx);
            simplex.insert(at, p_idx);
            simplices.push(simplex);
            let cell = &mut cells[fid as usize];
            cell.alive = false;
            cell.row = Vec::new();
        }
        alive_ids.retain(|&id| cells[id as usize].alive);
        alive_ids.extend(first_new..cells.len() as u32);
    }

    // Lift the chart facet rows back to ambient coordinates.
    let free = chart.free_coords().to_vec();
    let mut ineq_rows: Vec<Vec<S>> = Vec::new();
    for &id in &alive_ids {
        let row = &cells[id as usize].row;
        let mut amb = vec![S::zero(); d + 1];
        amb[0] = row[0].clone();
        for (fi, &f) in free.iter().enumerate() {
            amb[1 + f] = row[1 + fi].clone();
        }
        ineq_rows.push(amb);
    }
    let facets = HRep::from_matrices(
        d,
        Matrix::from_rows_with_cols(ineq_rows, d + 1),
        chart.equation_rows().clone(),
    )
    .canonical_form();
    let tri = Triangulation {
        vertices,
        simplices,
        facets: facets.clone(),
    };
    (facets, tri)
}

/// The affine row vanishing on the `verts` points, positive at `opposite`.
fn hyperplane_through<S: Scalar>(
    chart_pts: &[Vec<S>],
    verts: &[usize],
    opposite: &[S],
) -> Vec<S> {
    let k = opposite.len();
    let rows: Vec<Vec<S>> = verts
        .iter()
        .map(|&v| {
            let mut r = Vec::with_capacity(k + 1);
            r.push(S::one());
            r.extend_from_slice(&chart_pts[v]);
            r
        })
        .collect();
    let mut m = Matrix::from_rows_with_cols(rows, k + 1);
    let ker = kernel(&{
        rref(&mut m);
        m
    });
    assert_eq!(ker.rows(), 1, "facet points must be affinely independent");
    let mut row = ker.row(0).to_vec();
    match eval_affine_row(&row, opposite).signum() {
        1 => {}
        -1 => {
            for v in &mut row {
                *v = -std::mem::replace(v, S::zero());
            }
        }
        _ => panic!("opposite point lies on the facet hyperplane"),
    }
    S::canonical_scale_positive(&mut row);
    row
}
