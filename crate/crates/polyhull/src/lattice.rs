//! Lattice-point enumeration and integer hulls.
//!
//! Three independent enumeration methods (a fourth lives in [`crate::hilbert`])
//! return identical sorted point sets on every bounded instance, which the
//! test suite exploits heavily:
//!
//! * [`enumerate_bbox`] scans the integer bounding box and filters by
//!   membership. Simple and exhaustive; the candidate scan drops to `i128`
//!   arithmetic and parallel workers when the data fits.
//! * [`enumerate_projection`] eliminates the last coordinate with
//!   Fourier-Motzkin, prunes each level with LP redundancy removal, recurses,
//!   and reads exact fiber intervals back off the pre-elimination rows.
//! * [`enumerate_zero_one`] is a depth-first scan of `{0,1}^d` with
//!   best-case interval pruning, for polytopes whose lattice points are
//!   known to be 0/1 vectors.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

use crate::arith::{Rational, Scalar};
use crate::hull::{self, Algorithm};
use crate::linalg::{lex_cmp, Matrix};
use crate::poly::{eval_affine_row, HRep, Polytope, VRep};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Bbox,
    Projection,
    Hilbert,
    ZeroOne,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Bbox => "bbox",
            Method::Projection => "projection",
            Method::Hilbert => "hilbert",
            Method::ZeroOne => "zero-one",
        };
        f.write_str(s)
    }
}

/// Unrecognized enumeration method selector.
#[derive(Clone, Debug, thiserror::Error)]
#[error("unknown method {0:?}; expected bbox|projection|hilbert|zero-one")]
pub struct ParseMethodError(pub String);

impl FromStr for Method {
    type Err = ParseMethodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bbox" => Ok(Method::Bbox),
            "projection" => Ok(Method::Projection),
            "hilbert" => Ok(Method::Hilbert),
            "zero-one" => Ok(Method::ZeroOne),
            other => Err(ParseMethodError(other.to_string())),
        }
    }
}

/// The lattice points of a polytope: distinct homogeneous integer rows
/// `(1, x)`, sorted lexicographically, tagged with the method that produced
/// them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticePointSet {
    pub points: Matrix<Rational>,
    pub method: Method,
}

impl LatticePointSet {
    /// Builds the set from plain coordinate rows; sorts and deduplicates.
    pub fn from_coord_rows(
        ambient_dim: usize,
        rows: Vec<Vec<Rational>>,
        method: Method,
    ) -> LatticePointSet {
        let mut hom: Vec<Vec<Rational>> = rows
            .into_iter()
            .map(|r| {
                debug_assert_eq!(r.len(), ambient_dim);
                debug_assert!(r.iter().all(|v| v.is_integer()));
                let mut row = Vec::with_capacity(ambient_dim + 1);
                row.push(Rational::from(1));
                row.extend(r);
                row
            })
            .collect();
        hom.sort_by(|a, b| lex_cmp(a, b));
        hom.dedup();
        LatticePointSet {
            points: Matrix::from_rows_with_cols(hom, ambient_dim + 1),
            method,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.points.cols() - 1
    }

    pub fn count(&self) -> usize {
        self.points.rows()
    }

    /// Coordinates of point `i` (without the leading 1).
    pub fn point(&self, i: usize) -> &[Rational] {
        &self.points.row(i)[1..]
    }

    pub fn to_vrep(&self) -> VRep<Rational> {
        let mut v = VRep::new(self.ambient_dim());
        for i in 0..self.count() {
            v.push_point(self.point(i));
        }
        v
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum EnumerateError {
    #[error("cannot enumerate lattice points of an unbounded polyhedron")]
    Unbounded,
    #[error("enumeration exceeded the cap of {cap} points")]
    TooManyPoints { cap: usize },
}

/// Inequality description for membership tests, computing and caching one
/// if only generators are present.
fn ensure_hrep<'a>(p: &'a Polytope<Rational>) -> &'a HRep<Rational> {
    if p.hrep().is_none() {
        hull::facets(p, Algorithm::DoubleDescription);
    }
    p.hrep().expect("inequality description present")
}

/// Generator description, computing and caching one if needed.
fn ensure_vrep(p: &Polytope<Rational>) {
    if p.vrep().is_none() {
        hull::vertices(p, Algorithm::DoubleDescription);
    }
}

/// Integer bounds `[ceil(lo), floor(hi)]` per coordinate, `Ok(None)` when
/// some coordinate admits no integer, `Err` when unbounded.
fn integer_box(p: &Polytope<Rational>) -> Result<Option<Vec<(BigInt, BigInt)>>, EnumerateError> {
    ensure_vrep(p);
    let Some(bounds) = p.bounding_box() else {
        return if p.is_empty() {
            Ok(Some(Vec::new()))
        } else {
            Err(EnumerateError::Unbounded)
        };
    };
    let mut out = Vec::with_capacity(bounds.len());
    for (lo, hi) in bounds {
        let (l, h) = (lo.ceil(), hi.floor());
        if l > h {
            return Ok(None);
        }
        out.push((l, h));
    }
    Ok(Some(out))
}

/// Number of candidate points in the integer bounding box, if it fits `u128`.
fn candidate_total(box_: &[(BigInt, BigInt)]) -> Option<u128> {
    let mut total: u128 = 1;
    for (l, h) in box_ {
        let w = (h - l + 1u8).to_u128()?;
        total = total.checked_mul(w)?;
    }
    Some(total)
}

/// Constraint rows with `i128` coefficients, available when every
/// coefficient is integer and the worst-case row evaluation over the box
/// cannot overflow.
fn narrow_rows(h: &HRep<Rational>, box_: &[(BigInt, BigInt)]) -> Option<(Vec<Vec<i128>>, usize)> {
    let max_coord: i128 = box_
        .iter()
        .map(|(l, h)| l.abs().max(h.abs()).to_i128())
        .collect::<Option<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let mut rows = Vec::new();
    let mut bound: i128 = 0;
    for r in h.inequalities.iter_rows().chain(h.equations.iter_rows()) {
        let mut out = Vec::with_capacity(r.len());
        for v in r {
            if !v.is_integer() {
                return None;
            }
            out.push(v.numer().to_i128()?);
        }
        let row_bound: i128 = out
            .iter()
            .map(|c| c.checked_abs())
            .collect::<Option<Vec<_>>>()?
            .into_iter()
            .try_fold(0i128, |acc, c| {
                acc.checked_add(c.checked_mul(max_coord.max(1))?)
            })?;
        bound = bound.max(row_bound);
        rows.push(out);
    }
    if bound > i128::MAX / 4 {
        return None;
    }
    Some((rows, h.inequalities.rows()))
}

fn decode_candidate_i128(mut idx: u128, box_: &[(i128, i128)], widths: &[u128]) -> Vec<i128> {
    let mut x = vec![0i128; box_.len()];
    for i in (0..box_.len()).rev() {
        let w = widths[i];
        x[i] = box_[i].0 + (idx % w) as i128;
        idx /= w;
    }
    x
}

/// Scans the integer bounding box and keeps the members. The optional cap
/// bounds the number of emitted points; exceeding it aborts with an error.
pub fn enumerate_bbox(
    p: &Polytope<Rational>,
    cap: Option<usize>,
) -> Result<LatticePointSet, EnumerateError> {
    let d = p.ambient_dim();
    let empty = LatticePointSet::from_coord_rows(d, Vec::new(), Method::Bbox);
    let Some(box_) = integer_box(p)? else {
        return Ok(empty);
    };
    if p.is_empty() || box_.is_empty() && d > 0 {
        return Ok(empty);
    }
    let h = ensure_hrep(p).clone();
    if d == 0 {
        // The only candidate is the empty tuple.
        let member = !h.is_infeasible_marker() && h.contains(&[]);
        let rows = if member { vec![Vec::new()] } else { Vec::new() };
        return Ok(LatticePointSet::from_coord_rows(d, rows, Method::Bbox));
    }
    let total = candidate_total(&box_)
        .filter(|&t| t <= u64::MAX as u128)
        .ok_or(EnumerateError::TooManyPoints {
            cap: cap.unwrap_or(usize::MAX),
        })?;

    const CHUNK: u128 = 1 << 16;
    let mut kept: Vec<Vec<Rational>> = Vec::new();

    if let Some((rows, n_ineq)) = narrow_rows(&h, &box_) {
        let nbox: Vec<(i128, i128)> = box_
            .iter()
            .map(|(l, h)| (l.to_i128().unwrap(), h.to_i128().unwrap()))
            .collect();
        let widths: Vec<u128> = nbox.iter().map(|(l, h)| (h - l + 1) as u128).collect();
        let mut start: u128 = 0;
        while start < total {
            let end = (start + CHUNK).min(total);
            let mut chunk: Vec<Vec<i128>> = (start..end)
                .into_par_iter()
                .filter_map(|idx| {
                    let x = decode_candidate_i128(idx, &nbox, &widths);
                    let ok = rows.iter().enumerate().all(|(k, r)| {
                        let v = r[0] + r[1..].iter().zip(&x).map(|(a, b)| a * b).sum::<i128>();
                        if k < n_ineq {
                            v >= 0
                        } else {
                            v == 0
                        }
                    });
                    ok.then_some(x)
                })
                .collect();
            for x in chunk.drain(..) {
                kept.push(x.into_iter().map(Rational::from_integer).collect());
            }
            if let Some(c) = cap {
                if kept.len() > c {
                    return Err(EnumerateError::TooManyPoints { cap: c });
                }
            }
            start = end;
        }
    } else {
        let widths: Vec<u128> = box_
            .iter()
            .map(|(l, h)| (h - l + 1u8).to_u128().unwrap())
            .collect();
        let mut start: u128 = 0;
        while start < total {
            let end = (start + CHUNK).min(total);
            let mut chunk: Vec<Vec<Rational>> = (start..end)
                .into_par_iter()
                .filter_map(|idx| {
                    let mut rem = idx;
                    let mut x = vec![Rational::zero(); d];
                    for i in (0..d).rev() {
                        let off = rem % widths[i];
                        rem /= widths[i];
                        x[i] = Rational::from(&box_[i].0 + BigInt::from(off));
                    }
                    h.contains(&x).then_some(x)
                })
                .collect();
            kept.append(&mut chunk);
            if let Some(c) = cap {
                if kept.len() > c {
                    return Err(EnumerateError::TooManyPoints { cap: c });
                }
            }
            start = end;
        }
    }
    Ok(LatticePointSet::from_coord_rows(d, kept, Method::Bbox))
}

/// One Fourier-Motzkin elimination step: removes the last coordinate.
/// An equation involving the last coordinate is used for substitution when
/// present; otherwise all positive/negative inequality pairs are combined.
/// The result is reduced with LP redundancy removal to keep levels small.
fn eliminate_last(h: &HRep<Rational>) -> HRep<Rational> {
    let d = h.ambient_dim();
    let last = d; // column index of the last coordinate
    let drop_last = |r: &[Rational]| r[..last].to_vec();

    let subst = (0..h.equations.rows()).find(|&i| !h.equations.row(i)[last].is_zero());

    let mut out = HRep::new(d - 1);
    if let Some(ei) = subst {
        let e = h.equations.row(ei).to_vec();
        let reduce = |r: &[Rational]| -> Vec<Rational> {
            let f = r[last].clone().try_div(&e[last]).expect("nonzero pivot");
            let full: Vec<Rational> = r
                .iter()
                .zip(&e)
                .map(|(a, b)| a.clone() - f.clone() * b)
                .collect();
            drop_last(&full)
        };
        for r in h.inequalities.iter_rows() {
            out.push_inequality(reduce(r));
        }
        for (i, r) in h.equations.iter_rows().enumerate() {
            if i != ei {
                out.push_equation(reduce(r));
            }
        }
    } else {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for r in h.inequalities.iter_rows() {
            match r[last].signum() {
                0 => out.push_inequality(drop_last(r)),
                1 => pos.push(r),
                _ => neg.push(r),
            }
        }
        for p in &pos {
            for n in &neg {
                let combined: Vec<Rational> = p
                    .iter()
                    .zip(n.iter())
                    .map(|(a, b)| (-n[last].clone()) * a + p[last].clone() * b)
                    .collect();
                debug_assert!(combined[last].is_zero());
                out.push_inequality(drop_last(&combined));
            }
        }
        for r in h.equations.iter_rows() {
            debug_assert!(r[last].is_zero(), "substitution path handles these");
            out.push_equation(drop_last(r));
        }
    }
    crate::poly::irredundant_inequalities(&out)
}

/// Integer range of the last coordinate over the fiber of `partial`, using
/// the rows of the pre-elimination system. `None` means the fiber holds no
/// integer; panics if a fiber is unbounded (callers check boundedness).
fn fiber_range(h: &HRep<Rational>, partial: &[Rational]) -> Option<(BigInt, BigInt)> {
    let last = h.ambient_dim();
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    for r in h.inequalities.iter_rows() {
        let a = &r[last];
        if a.is_zero() {
            continue;
        }
        let v = eval_affine_row(&r[..last], partial);
        let q = (-v).try_div(a).expect("nonzero coefficient");
        if a.is_positive() {
            let c = q.ceil();
            lo = Some(lo.map_or(c.clone(), |b| b.max(c)));
        } else {
            let f = q.floor();
            hi = Some(hi.map_or(f.clone(), |b| b.min(f)));
        }
    }
    for r in h.equations.iter_rows() {
        let a = &r[last];
        if a.is_zero() {
            continue;
        }
        let v = eval_affine_row(&r[..last], partial);
        let q = (-v).try_div(a).expect("nonzero coefficient");
        if !q.is_integer() {
            return None;
        }
        let z = q.floor();
        lo = Some(lo.map_or(z.clone(), |b| b.max(z.clone())));
        hi = Some(hi.map_or(z.clone(), |b| b.min(z)));
    }
    let (lo, hi) = (
        lo.expect("bounded fiber has a lower bound"),
        hi.expect("bounded fiber has an upper bound"),
    );
    (lo <= hi).then_some((lo, hi))
}

/// Enumerates lattice points by recursive projection: eliminate the last
/// coordinate level by level, enumerate the one-dimensional base, then walk
/// back up emitting each fiber's exact integer interval.
pub fn enumerate_projection(
    p: &Polytope<Rational>,
    cap: Option<usize>,
) -> Result<LatticePointSet, EnumerateError> {
    let d = p.ambient_dim();
    ensure_vrep(p);
    if p.is_empty() {
        return Ok(LatticePointSet::from_coord_rows(d, Vec::new(), Method::Projection));
    }
    if p.bounding_box().is_none() {
        return Err(EnumerateError::Unbounded);
    }
    if d == 0 {
        return Ok(LatticePointSet::from_coord_rows(
            0,
            vec![Vec::new()],
            Method::Projection,
        ));
    }
    let h = ensure_hrep(p);

    let mut systems = vec![crate::poly::irredundant_inequalities(h)];
    while systems.last().unwrap().ambient_dim() > 1 {
        let next = eliminate_last(systems.last().unwrap());
        systems.push(next);
    }

    let check_cap = |n: usize| match cap {
        Some(c) if n > c => Err(EnumerateError::TooManyPoints { cap: c }),
        _ => Ok(()),
    };

    // Base level: integer points of an interval in one variable.
    let base = systems.last().unwrap();
    let mut level: Vec<Vec<Rational>> = Vec::new();
    if base.is_infeasible_marker() {
        return Ok(LatticePointSet::from_coord_rows(d, Vec::new(), Method::Projection));
    }
    match fiber_range(&{
        // Treat the 1-d system as a fiber over the empty tuple.
        let mut h0 = HRep::new(1);
        for r in base.inequalities.iter_rows() {
            h0.push_inequality(r.to_vec());
        }
        for r in base.equations.iter_rows() {
            h0.push_equation(r.to_vec());
        }
        h0
    }, &[])
    {
        None => {}
        Some((lo, hi)) => {
            let mut x = lo;
            while x <= hi {
                level.push(vec![Rational::from(x.clone())]);
                x += 1u8;
            }
        }
    }
    check_cap(level.len())?;

    // Walk back up: systems[j] lives in dimension d - j.
    for j in (0..systems.len() - 1).rev() {
        let sys = &systems[j];
        let mut next: Vec<Vec<Rational>> = Vec::new();
        for partial in &level {
            let Some((lo, hi)) = fiber_range(sys, partial) else {
                continue;
            };
            let mut x = lo;
            while x <= hi {
                let mut row = partial.clone();
                row.push(Rational::from(x.clone()));
                next.push(row);
                x += 1u8;
            }
            check_cap(next.len())?;
        }
        level = next;
    }
    Ok(LatticePointSet::from_coord_rows(d, level, Method::Projection))
}

/// Enumerates the 0/1 vectors satisfying `h`, by depth-first coordinate
/// fixing: a subtree is cut when an inequality cannot reach 0 even with the
/// best completion, or an equation cannot reach 0 with any completion.
/// Meaningful when the caller knows all lattice points are 0/1 vectors.
pub fn enumerate_zero_one(
    h: &HRep<Rational>,
    cap: Option<usize>,
) -> Result<LatticePointSet, EnumerateError> {
    let d = h.ambient_dim();
    struct Row {
        coefs: Vec<Rational>,
        is_eq: bool,
        // Best and worst completion of the suffix starting at index k.
        best: Vec<Rational>,
        worst: Vec<Rational>,
    }
    let make = |r: &[Rational], is_eq: bool| -> Row {
        let coefs = r[1..].to_vec();
        let mut best = vec![Rational::zero(); d + 1];
        let mut worst = vec![Rational::zero(); d + 1];
        for k in (0..d).rev() {
            let c = &coefs[k];
            best[k] = best[k + 1].clone() + if c.is_positive() { c.clone() } else { Rational::zero() };
            worst[k] = worst[k + 1].clone() + if c.is_negative() { c.clone() } else { Rational::zero() };
        }
        Row { coefs, is_eq, best, worst }
    };
    let rows: Vec<Row> = h
        .inequalities
        .iter_rows()
        .map(|r| make(r, false))
        .chain(h.equations.iter_rows().map(|r| make(r, true)))
        .collect();

    let mut vals: Vec<Rational> = h
        .inequalities
        .iter_rows()
        .chain(h.equations.iter_rows())
        .map(|r| r[0].clone())
        .collect();
    let mut x = vec![Rational::zero(); d];
    let mut out: Vec<Vec<Rational>> = Vec::new();

    fn dfs(
        k: usize,
        d: usize,
        rows: &[Row],
        vals: &mut Vec<Rational>,
        x: &mut Vec<Rational>,
        out: &mut Vec<Vec<Rational>>,
        cap: Option<usize>,
    ) -> Result<(), EnumerateError> {
        for (r, v) in rows.iter().zip(vals.iter()) {
            if (v.clone() + r.best[k].clone()).is_negative() {
                return Ok(());
            }
            if r.is_eq && (v.clone() + r.worst[k].clone()).is_positive() {
                return Ok(());
            }
        }
        if k == d {
            out.push(x.clone());
            if let Some(c) = cap {
                if out.len() > c {
                    return Err(EnumerateError::TooManyPoints { cap: c });
                }
            }
            return Ok(());
        }
        dfs(k + 1, d, rows, vals, x, out, cap)?;
        for (r, v) in rows.iter().zip(vals.iter_mut()) {
            *v += &r.coefs[k];
        }
        x[k] = Rational::from(1);
        dfs(k + 1, d, rows, vals, x, out, cap)?;
        x[k] = Rational::zero();
        for (r, v) in rows.iter().zip(vals.iter_mut()) {
            *v -= &r.coefs[k];
        }
        Ok(())
    }
    dfs(0, d, &rows, &mut vals, &mut x, &mut out, cap)?;
    Ok(LatticePointSet::from_coord_rows(d, out, Method::ZeroOne))
}

/// All lattice points by the chosen method.
pub fn enumerate(
    p: &Polytope<Rational>,
    method: Method,
    cap: Option<usize>,
) -> Result<LatticePointSet, EnumerateError> {
    match method {
        Method::Bbox => enumerate_bbox(p, cap),
        Method::Projection => enumerate_projection(p, cap),
        Method::Hilbert => crate::hilbert::enumerate_via_hilbert(p, cap),
        Method::ZeroOne => enumerate_zero_one(ensure_hrep(p), cap),
    }
}

/// Lattice-point count by the chosen method.
pub fn count(
    p: &Polytope<Rational>,
    method: Method,
    cap: Option<usize>,
) -> Result<usize, EnumerateError> {
    Ok(enumerate(p, method, cap)?.count())
}

/// Enumeration method for internal callers: the box scan when the candidate
/// box is small, recursive projection otherwise.
fn enumerate_auto(
    p: &Polytope<Rational>,
    cap: Option<usize>,
) -> Result<LatticePointSet, EnumerateError> {
    const SMALL_BOX: u128 = 1 << 21;
    let small = match integer_box(p)? {
        None => true,
        Some(b) => candidate_total(&b).is_some_and(|t| t <= SMALL_BOX),
    };
    if small {
        enumerate_bbox(p, cap)
    } else {
        enumerate_projection(p, cap)
    }
}

/// The convex hull of all lattice points of `p`: generator description is
/// the set of hull vertices, inequality description its facets. Empty when
/// `p` has no lattice points.
pub fn integer_hull(
    p: &Polytope<Rational>,
    cap: Option<usize>,
) -> Result<Polytope<Rational>, EnumerateError> {
    let d = p.ambient_dim();
    let set = enumerate_auto(p, cap)?;
    if set.count() == 0 {
        return Ok(Polytope::empty(d));
    }
    let hull_input = Polytope::from_vrep(set.to_vrep());
    let h = hull::facets(&hull_input, Algorithm::BeneathBeyond);
    let v = hull::vertices(&hull_input, Algorithm::BeneathBeyond);
    Ok(Polytope::from_reps(h, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn coords(set: &LatticePointSet) -> Vec<Vec<Rational>> {
        (0..set.count()).map(|i| set.point(i).to_vec()).collect()
    }

    fn segment01() -> Polytope<Rational> {
        let mut h = HRep::new(1);
        h.push_inequality(vec![q("0"), q("1")]);
        h.push_inequality(vec![q("1"), q("-1")]);
        Polytope::from_hrep(h)
    }

    #[test]
    fn segment_has_its_endpoints() {
        let p = segment01();
        let set = enumerate_bbox(&p, None).unwrap();
        assert_eq!(coords(&set), vec![vec![q("0")], vec![q("1")]]);
        let set2 = enumerate_projection(&p, None).unwrap();
        assert_eq!(set.points, set2.points);
    }

    #[test]
    fn methods_agree_with_equations_present() {
        // x + y + z = 3 inside [0,2]^3.
        let mut h = HRep::new(3);
        for i in 0..3 {
            let mut lo = vec![q("0"); 4];
            lo[1 + i] = q("1");
            h.push_inequality(lo);
            let mut hi = vec![q("0"); 4];
            hi[0] = q("2");
            hi[1 + i] = q("-1");
            h.push_inequality(hi);
        }
        h.push_equation(vec![q("-3"), q("1"), q("1"), q("1")]);
        let p = Polytope::from_hrep(h);
        let a = enumerate_bbox(&p, None).unwrap();
        let b = enumerate_projection(&p, None).unwrap();
        assert_eq!(a.points, b.points);
        assert_eq!(a.count(), 7);
    }

    #[test]
    fn thin_triangle_has_no_lattice_points() {
        let mut v = VRep::new(2);
        v.push_point(&[q("1/3"), q("1/3")]);
        v.push_point(&[q("2/3"), q("1/3")]);
        v.push_point(&[q("1/3"), q("2/3")]);
        let p = Polytope::from_vrep(v);
        assert_eq!(enumerate_bbox(&p, None).unwrap().count(), 0);
        assert_eq!(enumerate_projection(&p, None).unwrap().count(), 0);
        let hull = integer_hull(&p, None).unwrap();
        assert!(hull.is_empty());
    }

    #[test]
    fn unbounded_input_is_an_error() {
        let mut h = HRep::new(2);
        h.push_inequality(vec![q("0"), q("1"), q("0")]);
        h.push_inequality(vec![q("0"), q("0"), q("1")]);
        let p = Polytope::from_hrep(h);
        assert_eq!(enumerate_bbox(&p, None), Err(EnumerateError::Unbounded));
        assert_eq!(enumerate_projection(&p, None), Err(EnumerateError::Unbounded));
    }

    #[test]
    fn empty_polytope_counts_zero() {
        let p = Polytope::<Rational>::empty(3);
        for m in [Method::Bbox, Method::Projection] {
            assert_eq!(count(&p, m, None).unwrap(), 0);
        }
    }

    #[test]
    fn zero_one_cube_has_all_corners() {
        let mut h = HRep::new(3);
        for i in 0..3 {
            let mut lo = vec![q("0"); 4];
            lo[1 + i] = q("1");
            h.push_inequality(lo);
            let mut hi = vec![q("0"); 4];
            hi[0] = q("1");
            hi[1 + i] = q("-1");
            h.push_inequality(hi);
        }
        let set = enumerate_zero_one(&h, None).unwrap();
        assert_eq!(set.count(), 8);
        let bb = enumerate_bbox(&Polytope::from_hrep(h), None).unwrap();
        assert_eq!(set.points, bb.points);
    }

    #[test]
    fn point_cap_is_enforced() {
        let p = segment01();
        assert_eq!(
            enumerate_bbox(&p, Some(1)),
            Err(EnumerateError::TooManyPoints { cap: 1 })
        );
        assert!(enumerate_bbox(&p, Some(2)).is_ok());
    }

    #[test]
    fn tiny_knapsack_integer_hull() {
        // 2x + 3y ≤ 6, x,y ≥ 0: seven lattice points, triangular hull.
        let mut h = HRep::new(2);
        h.push_inequality(vec![q("0"), q("1"), q("0")]);
        h.push_inequality(vec![q("0"), q("0"), q("1")]);
        h.push_inequality(vec![q("6"), q("-2"), q("-3")]);
        let p = Polytope::from_hrep(h);
        assert_eq!(count(&p, Method::Bbox, None).unwrap(), 7);
        let hull = integer_hull(&p, None).unwrap();
        assert_eq!(hull.vrep().unwrap().points.rows(), 3);
        assert_eq!(hull.hrep().unwrap().inequalities.rows(), 3);
        for i in 0..hull.vrep().unwrap().points.rows() {
            let x = hull.vrep().unwrap().point(i).to_vec();
            assert!(x.iter().all(|c| c.is_integer()));
            assert!(p.contains(&x));
        }
        // Idempotence.
        let again = integer_hull(&hull, None).unwrap();
        assert_eq!(
            again.hrep().unwrap(),
            hull.hrep().unwrap()
        );
        assert_eq!(again.vrep().unwrap(), hull.vrep().unwrap());
    }

    #[test]
    fn integral_cube_is_its_own_integer_hull() {
        let mut v = VRep::new(3);
        for mask in 0..8 {
            let pt: Vec<Rational> = (0..3)
                .map(|i| {
                    if (mask >> i) & 1 == 1 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            v.push_point(&pt);
        }
        let p = Polytope::from_vrep(v.clone());
        let hull = integer_hull(&p, None).unwrap();
        assert_eq!(hull.vrep().unwrap(), &v.canonical_form());
        assert_eq!(hull.hrep().unwrap().inequalities.rows(), 6);
    }
}
