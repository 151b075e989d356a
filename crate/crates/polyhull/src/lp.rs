//! Exact linear programming over inequality descriptions.
//!
//! A dense tableau primal simplex over the scalar field, Bland's smallest
//! index rule for both the entering and the leaving variable, so every run
//! terminates and is deterministic. Free variables are split into differences
//! of nonnegative ones; feasibility comes from a phase I with artificial
//! variables. Correctness over speed: objectives at the scales this crate
//! targets finish in milliseconds, and there is no floating point anywhere.

use crate::arith::{dot, Scalar};
use crate::linalg::{kernel, Matrix};
use crate::poly::{eval_affine_row, HRep};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Max,
    Min,
}

/// Optimize `objective[0] + Σ objective[i]·xᵢ` over an [`HRep`] region.
#[derive(Clone, Debug)]
pub struct LinearProgram<'a, S: Scalar> {
    pub region: &'a HRep<S>,
    /// Length `d + 1`; the leading entry is a constant offset of the value.
    pub objective: Vec<S>,
    pub sense: Sense,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LpResult<S: Scalar> {
    pub status: LpStatus,
    pub optimal_vertex: Option<Vec<S>>,
    pub optimal_value: Option<S>,
}

impl<S: Scalar> LpResult<S> {
    fn status_only(status: LpStatus) -> Self {
        LpResult {
            status,
            optimal_vertex: None,
            optimal_value: None,
        }
    }
}

pub fn solve_lp<S: Scalar>(lp: &LinearProgram<S>) -> LpResult<S> {
    let d = lp.region.ambient_dim();
    assert_eq!(lp.objective.len(), d + 1, "objective length mismatch");

    let mut c = lp.objective[1..].to_vec();
    if lp.sense == Sense::Min {
        for v in &mut c {
            *v = -std::mem::replace(v, S::zero());
        }
    }

    let x = match simplex_over_region(lp.region, &c) {
        RegionOpt::Infeasible => return LpResult::status_only(LpStatus::Infeasible),
        RegionOpt::Unbounded => return LpResult::status_only(LpStatus::Unbounded),
        RegionOpt::Optimal(x) => x,
    };
    let x = purify_to_vertex(lp.region, &c, x);
    let value = eval_affine_row(&lp.objective, &x);
    LpResult {
        status: LpStatus::Optimal,
        optimal_vertex: Some(x),
        optimal_value: Some(value),
    }
}

/// Per-coordinate extremes of a region, or the marker that it is empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoordinateBounds<S: Scalar> {
    Empty,
    /// One `(lower, upper)` pair per coordinate; `None` = unbounded that way.
    Bounds(Vec<(Option<S>, Option<S>)>),
}

pub fn coordinate_bounds<S: Scalar>(h: &HRep<S>) -> CoordinateBounds<S> {
    let d = h.ambient_dim();
    let mut out = Vec::with_capacity(d);
    for k in 0..d {
        let mut objective = vec![S::zero(); d + 1];
        objective[1 + k] = S::one();
        let upper = solve_lp(&LinearProgram {
            region: h,
            objective: objective.clone(),
            sense: Sense::Max,
        });
        if upper.status == LpStatus::Infeasible {
            return CoordinateBounds::Empty;
        }
        let lower = solve_lp(&LinearProgram {
            region: h,
            objective,
            sense: Sense::Min,
        });
        out.push((lower.optimal_value, upper.optimal_value));
    }
    if d == 0 {
        // No coordinates to probe; feasibility still decides empty or not.
        let feasible = solve_lp(&LinearProgram {
            region: h,
            objective: vec![S::zero()],
            sense: Sense::Max,
        });
        if feasible.status == LpStatus::Infeasible {
            return CoordinateBounds::Empty;
        }
    }
    CoordinateBounds::Bounds(out)
}

/// Is `target` a nonnegative combination of the rows of `rows`?
///
/// Phase I simplex on `rows^T λ = target, λ ≥ 0` directly, without variable
/// splitting; used for convex-hull membership where the coefficient count is
/// large.
pub fn nonnegative_combination<S: Scalar>(rows: &Matrix<S>, target: &[S]) -> bool {
    assert_eq!(rows.cols(), target.len(), "dimension mismatch");
    let m = target.len();
    let k = rows.rows();
    // Tableau rows: Σ_q rows[q][i] λ_q = target[i], artificial basis.
    let mut t = Tableau::new(m, k);
    for i in 0..m {
        for q in 0..k {
            t.set(i, q, rows[(q, i)].clone());
        }
        t.set_rhs(i, target[i].clone());
    }
    t.fix_rhs_signs();
    t.phase_one().is_some()
}

enum RegionOpt<S> {
    Infeasible,
    Unbounded,
    Optimal(Vec<S>),
}

/// Maximizes `c·x` over the region using the split formulation
/// `x = u - v, u, v ≥ 0` with one slack per inequality.
fn simplex_over_region<S: Scalar>(h: &HRep<S>, c: &[S]) -> RegionOpt<S> {
    let d = h.ambient_dim();
    let mi = h.inequalities.rows();
    let me = h.equations.rows();
    let nvars = 2 * d + mi;
    let mut t = Tableau::new(mi + me, nvars);

    // Inequality row (b, a): a·x + b ≥ 0 becomes -a·u + a·v + s = b.
    for (i, row) in h.inequalities.iter_rows().enumerate() {
        for j in 0..d {
            t.set(i, j, -row[1 + j].clone());
            t.set(i, d + j, row[1 + j].clone());
        }
        t.set(i, 2 * d + i, S::one());
        t.set_rhs(i, row[0].clone());
    }
    // Equation row (b, e): e·u - e·v = -b.
    for (r, row) in h.equations.iter_rows().enumerate() {
        let i = mi + r;
        for j in 0..d {
            t.set(i, j, row[1 + j].clone());
            t.set(i, d + j, -row[1 + j].clone());
        }
        t.set_rhs(i, -row[0].clone());
    }
    t.fix_rhs_signs();

    let Some(()) = t.phase_one() else {
        return RegionOpt::Infeasible;
    };

    // Phase II: minimize -(c·u - c·v).
    let mut cost = vec![S::zero(); t.ncols];
    for j in 0..d {
        cost[j] = -c[j].clone();
        cost[d + j] = c[j].clone();
    }
    if !t.run(&cost) {
        return RegionOpt::Unbounded;
    }

    let y = t.basic_solution();
    let mut x = Vec::with_capacity(d);
    for j in 0..d {
        x.push(y[j].clone() - &y[d + j]);
    }
    RegionOpt::Optimal(x)
}

/// Walks from an optimal point to an optimal *vertex*: while the active
/// constraints leave a nonzero kernel, move along a kernel direction until a
/// new inequality becomes active (each step grows the active rank). If some
/// direction is blocked in neither orientation the optimal face contains a
/// line and no vertex exists; the current point is returned as is.
fn purify_to_vertex<S: Scalar>(h: &HRep<S>, c: &[S], mut x: Vec<S>) -> Vec<S> {
    let d = h.ambient_dim();
    loop {
        let mut active: Vec<Vec<S>> = h
            .equations
            .iter_rows()
            .map(|r| r[1..].to_vec())
            .collect();
        let mut slack: Vec<(usize, S)> = Vec::new();
        for (i, row) in h.inequalities.iter_rows().enumerate() {
            let v = eval_affine_row(row, &x);
            if v.is_zero() {
                active.push(row[1..].to_vec());
            } else {
                slack.push((i, v));
            }
        }
        let ker = kernel(&Matrix::from_rows_with_cols(active, d));
        if ker.rows() == 0 {
            return x;
        }
        let w = ker.row(0);
        debug_assert!(dot(c, w).is_zero(), "kernel direction changes the optimum");
        let step = |dir: &[S]| -> Option<S> {
            let mut best: Option<S> = None;
            for (i, v) in &slack {
                let advance = dot(&h.inequalities.row(*i)[1..], dir);
                if advance.is_negative() {
                    let t = v.clone().try_div(&-advance).expect("nonzero divisor");
                    if best.as_ref().is_none_or(|b| t < *b) {
                        best = Some(t);
                    }
                }
            }
            best
        };
        let (dir, t) = if let Some(t) = step(w) {
            (w.to_vec(), t)
        } else {
            let neg: Vec<S> = w.iter().map(|v| -v.clone()).collect();
            match step(&neg) {
                Some(t) => (neg, t),
                // The face contains a full line; there is no vertex to reach.
                None => return x,
            }
        };
        for (xi, wi) in x.iter_mut().zip(&dir) {
            let delta = t.clone() * wi;
            *xi = std::mem::replace(xi, S::zero()) + delta;
        }
    }
}

/// Dense simplex tableau: `nrows` constraint rows, a cost row, `ncols`
/// structural columns plus artificials appended by phase I, rhs held
/// separately per row. All pivoting is exact.
struct Tableau<S> {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    cost: Vec<S>,
    /// Negative of the current objective value.
    cost_rhs: S,
    basis: Vec<usize>,
}

impl<S: Scalar> Tableau<S> {
    fn new(nrows: usize, ncols: usize) -> Self {
        Tableau {
            nrows,
            ncols,
            rows: vec![vec![S::zero(); ncols]; nrows],
            rhs: vec![S::zero(); nrows],
            cost: Vec::new(),
            cost_rhs: S::zero(),
            basis: vec![usize::MAX; nrows],
        }
    }

    fn set(&mut self, i: usize, j: usize, v: S) {
        self.rows[i][j] = v;
    }

    fn set_rhs(&mut self, i: usize, v: S) {
        self.rhs[i] = v;
    }

    fn fix_rhs_signs(&mut self) {
        for i in 0..self.nrows {
            if self.rhs[i].is_negative() {
                for v in &mut self.rows[i] {
                    *v = -std::mem::replace(v, S::zero());
                }
                self.rhs[i] = -std::mem::replace(&mut self.rhs[i], S::zero());
            }
        }
    }

    /// Minimizes the sum of one artificial per row; `Some(())` iff it reaches
    /// zero, i.e. the constraints are feasible. Slack columns that already
    /// form identity entries are used as the initial basis where possible.
    fn phase_one(&mut self) -> Option<()> {
        let structural = self.ncols;
        // Prefer an existing unit column (a slack) as basis for each row.
        for i in 0..self.nrows {
            let unit = (0..structural).find(|&j| {
                self.rows[i][j].is_one()
                    && (0..self.nrows).all(|r| r == i || self.rows[r][j].is_zero())
            });
            if let Some(j) = unit {
                self.basis[i] = j;
            }
        }
        let mut art_cols = Vec::new();
        for i in 0..self.nrows {
            if self.basis[i] != usize::MAX {
                continue;
            }
            let j = self.ncols;
            for (r, row) in self.rows.iter_mut().enumerate() {
                row.push(if r == i { S::one() } else { S::zero() });
            }
            self.ncols += 1;
            self.basis[i] = j;
            art_cols.push(j);
        }
        if art_cols.is_empty() {
            return Some(());
        }
        let mut cost = vec![S::zero(); self.ncols];
        for &j in &art_cols {
            cost[j] = S::one();
        }
        let bounded = self.run(&cost);
        debug_assert!(bounded, "phase one objective is bounded below by zero");
        if !self.cost_rhs.is_zero() {
            return None;
        }
        // Pivot leftover artificials out of the basis, or drop their rows.
        let is_art = |j: usize| j >= structural;
        for i in 0..self.nrows {
            if !is_art(self.basis[i]) {
                continue;
            }
            debug_assert!(self.rhs[i].is_zero());
            match (0..structural).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => self.pivot(i, j),
                None => self.basis[i] = usize::MAX, // redundant constraint row
            }
        }
        let keep: Vec<usize> = (0..self.nrows)
            .filter(|&i| self.basis[i] != usize::MAX)
            .collect();
        if keep.len() != self.nrows {
            self.rows = keep.iter().map(|&i| std::mem::take(&mut self.rows[i])).collect();
            self.rhs = keep.iter().map(|&i| std::mem::replace(&mut self.rhs[i], S::zero())).collect();
            self.basis = keep.iter().map(|&i| self.basis[i]).collect();
            self.nrows = keep.len();
        }
        for row in &mut self.rows {
            row.truncate(structural);
        }
        self.ncols = structural;
        Some(())
    }

    /// Runs simplex minimizing `objective` from the current basis. Returns
    /// false on unboundedness. Entering: smallest column index with negative
    /// reduced cost; leaving: smallest basis index among the ratio-test ties.
    fn run(&mut self, objective: &[S]) -> bool {
        self.cost = objective.to_vec();
        self.cost_rhs = S::zero();
        for i in 0..self.nrows {
            let cb = self.cost[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !self.rows[i][j].is_zero() {
                    let delta = cb.clone() * &self.rows[i][j];
                    self.cost[j] = std::mem::replace(&mut self.cost[j], S::zero()) - delta;
                }
            }
            let delta = cb * &self.rhs[i];
            self.cost_rhs = std::mem::replace(&mut self.cost_rhs, S::zero()) - delta;
        }
        loop {
            let Some(enter) = (0..self.ncols).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, S)> = None;
            for i in 0..self.nrows {
                if !self.rows[i][enter].is_positive() {
                    continue;
                }
                let ratio = self.rhs[i].clone().try_div(&self.rows[i][enter]).expect("positive pivot");
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, enter);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = S::one().try_div(&self.rows[row][col]).expect("nonzero pivot");
        for v in &mut self.rows[row] {
            if !v.is_zero() {
                *v = std::mem::replace(v, S::zero()) * &inv;
            }
        }
        self.rhs[row] = std::mem::replace(&mut self.rhs[row], S::zero()) * &inv;
        for i in 0..self.nrows {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !self.rows[row][j].is_zero() {
                    let delta = factor.clone() * &self.rows[row][j];
                    self.rows[i][j] = std::mem::replace(&mut self.rows[i][j], S::zero()) - delta;
                }
            }
            let delta = factor * &self.rhs[row];
            self.rhs[i] = std::mem::replace(&mut self.rhs[i], S::zero()) - delta;
        }
        if !self.cost.is_empty() {
            let factor = self.cost[col].clone();
            if !factor.is_zero() {
                for j in 0..self.ncols {
                    if !self.rows[row][j].is_zero() {
                        let delta = factor.clone() * &self.rows[row][j];
                        self.cost[j] = std::mem::replace(&mut self.cost[j], S::zero()) - delta;
                    }
                }
                let delta = factor * &self.rhs[row];
                self.cost_rhs = std::mem::replace(&mut self.cost_rhs, S::zero()) - delta;
            }
        }
        self.basis[row] = col;
    }

    fn basic_solution(&self) -> Vec<S> {
        let mut y = vec![S::zero(); self.ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            y[b] = self.rhs[i].clone();
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::linalg::rank;
    use num_traits::Zero;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn qrow(vals: &[&str]) -> Vec<Rational> {
        vals.iter().map(|v| q(v)).collect()
    }

    fn cube(d: usize) -> HRep<Rational> {
        let mut h = HRep::new(d);
        for i in 0..d {
            let mut lo = vec![q("0"); d + 1];
            lo[1 + i] = q("1");
            h.push_inequality(lo);
            let mut hi = vec![q("0"); d + 1];
            hi[0] = q("1");
            hi[1 + i] = q("-1");
            h.push_inequality(hi);
        }
        h
    }

    fn fib_knapsack_5_40() -> HRep<Rational> {
        // 2x₁+3x₂+5x₃+8x₄+13x₅ ≤ 40, x ≥ 0.
        let mut h = HRep::new(5);
        h.push_inequality(qrow(&["40", "-2", "-3", "-5", "-8", "-13"]));
        for i in 0..5 {
            let mut r = vec![q("0"); 6];
            r[1 + i] = q("1");
            h.push_inequality(r);
        }
        h
    }

    fn assert_is_vertex(h: &HRep<Rational>, x: &[Rational]) {
        assert!(h.contains(x), "optimal point must be feasible");
        let mut active: Vec<Vec<Rational>> =
            h.equations.iter_rows().map(|r| r[1..].to_vec()).collect();
        for row in h.inequalities.iter_rows() {
            if eval_affine_row(row, x).is_zero() {
                active.push(row[1..].to_vec());
            }
        }
        let m = Matrix::from_rows_with_cols(active, x.len());
        assert_eq!(rank(&m), x.len(), "vertex needs full active rank");
    }

    #[test]
    fn cube_corner() {
        let h = cube(3);
        let r = solve_lp(&LinearProgram {
            region: &h,
            objective: qrow(&["0", "1", "0", "0"]),
            sense: Sense::Max,
        });
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.optimal_value.as_ref().unwrap(), &q("1"));
        assert_is_vertex(&h, r.optimal_vertex.as_ref().unwrap());
    }

    #[test]
    fn knapsack_objective_pins_value_and_vertex() {
        let h = fib_knapsack_5_40();
        let r = solve_lp(&LinearProgram {
            region: &h,
            objective: qrow(&["0", "1", "2", "1", "2", "1"]),
            sense: Sense::Max,
        });
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.optimal_value.as_ref().unwrap(), &q("80/3"));
        assert_eq!(
            r.optimal_vertex.as_ref().unwrap(),
            &qrow(&["0", "40/3", "0", "0", "0"])
        );
        assert_is_vertex(&h, r.optimal_vertex.as_ref().unwrap());
    }

    #[test]
    fn positive_scaling_keeps_the_vertex() {
        let h = cube(4);
        let objective = qrow(&["0", "1", "1", "0", "2"]);
        let r1 = solve_lp(&LinearProgram {
            region: &h,
            objective: objective.clone(),
            sense: Sense::Max,
        });
        let scaled: Vec<Rational> = objective.iter().map(|c| c.clone() * &q("7/3")).collect();
        let r2 = solve_lp(&LinearProgram {
            region: &h,
            objective: scaled,
            sense: Sense::Max,
        });
        assert_eq!(r1.optimal_vertex, r2.optimal_vertex);
        assert_eq!(
            r2.optimal_value.unwrap(),
            r1.optimal_value.unwrap() * &q("7/3")
        );
    }

    #[test]
    fn zero_objective_still_returns_a_vertex() {
        let h = cube(3);
        let r = solve_lp(&LinearProgram {
            region: &h,
            objective: qrow(&["5", "0", "0", "0"]),
            sense: Sense::Max,
        });
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.optimal_value.unwrap(), q("5"));
        assert_is_vertex(&h, r.optimal_vertex.as_ref().unwrap());
    }

    #[test]
    fn unbounded_and_infeasible_statuses() {
        let mut half = HRep::new(1);
        half.push_inequality(qrow(&["0", "1"])); // x ≥ 0
        let up = solve_lp(&LinearProgram {
            region: &half,
            objective: qrow(&["0", "1"]),
            sense: Sense::Max,
        });
        assert_eq!(up.status, LpStatus::Unbounded);
        let down = solve_lp(&LinearProgram {
            region: &half,
            objective: qrow(&["0", "1"]),
            sense: Sense::Min,
        });
        assert_eq!(down.status, LpStatus::Optimal);
        assert_eq!(down.optimal_value.unwrap(), q("0"));

        let mut empty = HRep::new(1);
        empty.push_inequality(qrow(&["-1", "1"])); // x ≥ 1
        empty.push_inequality(qrow(&["0", "-1"])); // x ≤ 0
        let r = solve_lp(&LinearProgram {
            region: &empty,
            objective: qrow(&["0", "1"]),
            sense: Sense::Max,
        });
        assert_eq!(r.status, LpStatus::Infeasible);
        assert_eq!(coordinate_bounds(&empty), CoordinateBounds::Empty);
    }

    #[test]
    fn equations_are_respected() {
        // On x + y = 1 inside the square, max x - y is 1 at (1, 0).
        let mut h = cube(2);
        h.push_equation(qrow(&["-1", "1", "1"]));
        let r = solve_lp(&LinearProgram {
            region: &h,
            objective: qrow(&["0", "1", "-1"]),
            sense: Sense::Max,
        });
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.optimal_value.unwrap(), q("1"));
        assert_eq!(r.optimal_vertex.unwrap(), qrow(&["1", "0"]));
    }

    #[test]
    fn coordinate_bounds_examples() {
        match coordinate_bounds(&cube(2)) {
            CoordinateBounds::Bounds(b) => {
                assert_eq!(b, vec![(Some(q("0")), Some(q("1"))); 2]);
            }
            CoordinateBounds::Empty => panic!("square is nonempty"),
        }

        let mut half = HRep::new(1);
        half.push_inequality(qrow(&["-3", "1"])); // x ≥ 3
        match coordinate_bounds(&half) {
            CoordinateBounds::Bounds(b) => assert_eq!(b, vec![(Some(q("3")), None)]),
            CoordinateBounds::Empty => panic!("half-line is nonempty"),
        }

        match coordinate_bounds(&fib_knapsack_5_40()) {
            CoordinateBounds::Bounds(b) => {
                assert_eq!(b[0], (Some(q("0")), Some(q("20"))));
                assert_eq!(b[4], (Some(q("0")), Some(q("40/13"))));
            }
            CoordinateBounds::Empty => panic!("knapsack region is nonempty"),
        }
    }

    #[test]
    fn membership_by_nonnegative_combination() {
        // (1, 1/2) is in conv{0, 1} on the line; (1, 2) is not.
        let rows = Matrix::from_rows(vec![qrow(&["1", "0"]), qrow(&["1", "1"])]);
        assert!(nonnegative_combination(&rows, &qrow(&["1", "1/2"])));
        assert!(!nonnegative_combination(&rows, &qrow(&["1", "2"])));
        assert!(nonnegative_combination(&rows, &qrow(&["1", "1"])));
    }
}
