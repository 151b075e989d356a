//! Representation conversion: facets from generators and generators from
//! facets, by two independent algorithms, plus exact volume.
//!
//! * [`double_description`] works on the homogenized cone and converts in
//!   either direction through polarity: the polar of an inequality
//!   description is a generator description of the polar cone and vice
//!   versa, so one algorithm serves both conversions.
//! * [`beneath_beyond`] builds facets of a point set directly (with a
//!   placing triangulation as by-product). For the opposite direction it is
//!   applied to a polar point set: with an interior point translated to the
//!   origin, the facets of `conv{0, -aᵢ/βᵢ}` are exactly the vertices and
//!   extreme rays of the original region.
//!
//! Both conversions return canonical forms, so results from the two
//! algorithms are comparable with `==`.

mod bb;
mod bitset;
mod dd;
mod order;

use std::fmt;
use std::str::FromStr;

use crate::arith::Scalar;
use crate::linalg::{det, Matrix};
use crate::lp::{solve_lp, LinearProgram, LpStatus, Sense};
use crate::poly::{
    dehomogenize, eval_affine_row, homogenize, irredundant_inequalities, AffineChart, Cone,
    ConeRep, HRep, Polytope, VRep,
};

pub use bb::{beneath_beyond, Triangulation};
pub use bitset::BitSet;
pub use dd::{double_description, double_description_with, DdOptions, DdRowOrder, RayRecord};
pub use order::{apply_order, InsertionOrder, ParseOrderError};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Algorithm {
    DoubleDescription,
    BeneathBeyond,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::DoubleDescription => write!(f, "dd"),
            Algorithm::BeneathBeyond => write!(f, "bb"),
        }
    }
}

/// Unrecognized hull algorithm selector.
#[derive(Clone, Debug, thiserror::Error)]
#[error("unknown algorithm {0:?}; expected dd|bb")]
pub struct ParseAlgorithmError(pub String);

impl FromStr for Algorithm {
    type Err = ParseAlgorithmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dd" => Ok(Algorithm::DoubleDescription),
            "bb" => Ok(Algorithm::BeneathBeyond),
            other => Err(ParseAlgorithmError(other.to_string())),
        }
    }
}

/// The irredundant facet description, computed with the chosen algorithm and
/// cached on the polytope. Generator input converts through the hull
/// algorithms; pure inequality input is reduced by LP redundancy removal.
/// The empty polytope yields the infeasible marker.
pub fn facets<S: Scalar>(p: &Polytope<S>, algo: Algorithm) -> HRep<S> {
    facets_with(p, algo, InsertionOrder::Given)
}

pub fn facets_with<S: Scalar>(p: &Polytope<S>, algo: Algorithm, order: InsertionOrder) -> HRep<S> {
    let d = p.ambient_dim();
    if let Some(v) = p.vrep() {
        if v.is_empty() {
            let h = HRep::infeasible(d);
            p.store_hrep(h.clone());
            return h;
        }
        let bounded = v.rays.rows() == 0 && v.lineality.rows() == 0;
        let h = match algo {
            // Beneath-and-beyond is an affine point algorithm; generator
            // input with rays or lineality goes through the cone instead.
            Algorithm::BeneathBeyond if bounded => {
                beneath_beyond(&v.point_coords_matrix(), order).0
            }
            _ => facets_via_dd(p),
        };
        p.store_hrep(h.clone());
        return h;
    }
    let h = p.hrep().expect("a polytope carries at least one description");
    irredundant_inequalities(h)
}

/// Facets via the polar cone: the generators of the polytope become
/// inequality rows of the polar, whose extreme rays are the facets.
fn facets_via_dd<S: Scalar>(p: &Polytope<S>) -> HRep<S> {
    let cone = homogenize(p);
    let ConeRep::ByGenerators { rays, lineality } = cone.rep else {
        unreachable!("generator description was present");
    };
    let polar = Cone {
        coord_dim: cone.coord_dim,
        rep: ConeRep::ByInequalities {
            inequalities: rays,
            equations: lineality,
        },
    };
    let out = double_description(&polar);
    let ConeRep::ByGenerators { rays, lineality } = out.rep else {
        unreachable!("double description returns generators");
    };
    HRep::from_matrices(cone.coord_dim - 1, rays, lineality).canonical_form()
}

/// The irredundant generator description: vertices, extreme rays and a
/// lineality basis, canonical, cached on the polytope. The empty polytope
/// yields empty matrices.
pub fn vertices<S: Scalar>(p: &Polytope<S>, algo: Algorithm) -> VRep<S> {
    let d = p.ambient_dim();
    if let Some(v) = p.vrep() {
        if v.is_empty() {
            return VRep::new(d);
        }
        if v.rays.rows() == 0 && v.lineality.rows() == 0 {
            let f = facets(p, algo);
            let coords = v.point_coords_matrix();
            let keep = crate::poly::redundancy::vertex_indices(&f, &coords);
            let mut out = VRep::new(d);
            for i in keep {
                out.push_point(coords.row(i));
            }
            return out.canonical_form();
        }
        // Generator input with rays: reduce through a full double conversion.
        let f = facets(p, algo);
        return vertices_from_hrep(&f, algo);
    }
    let h = p.hrep().expect("a polytope carries at least one description");
    let v = vertices_from_hrep(h, algo);
    p.store_vrep(v.clone());
    v
}

fn vertices_from_hrep<S: Scalar>(h: &HRep<S>, algo: Algorithm) -> VRep<S> {
    match algo {
        Algorithm::DoubleDescription => vertices_via_dd(h),
        Algorithm::BeneathBeyond => vertices_via_polar_bb(h),
    }
}

fn vertices_via_dd<S: Scalar>(h: &HRep<S>) -> VRep<S> {
    let p = Polytope::from_hrep(h.clone());
    let cone = homogenize(&p);
    let gens = double_description(&cone);
    let back = dehomogenize(&gens);
    let v = back.vrep().expect("dehomogenization yields generators");
    if v.is_empty() {
        return VRep::new(h.ambient_dim());
    }
    v.canonical_form()
}

/// H-to-V via beneath-and-beyond on a polar point set. Needs a relatively
/// interior point, found by maximizing the minimum slack; implicit equalities
/// are split off first so the restricted region is full-dimensional.
fn vertices_via_polar_bb<S: Scalar>(h: &HRep<S>) -> VRep<S> {
    let d = h.ambient_dim();
    let irr = irredundant_inequalities(h);
    if irr.is_infeasible_marker() {
        return VRep::new(d);
    }
    let chart = AffineChart::from_equations(d, &irr.equations)
        .expect("irredundant equations are consistent");
    let k = chart.dim();
    let rows: Vec<Vec<S>> = irr
        .inequalities
        .iter_rows()
        .map(|r| chart.restrict_row(r))
        .collect();

    let mut out = VRep::new(d);
    if rows.is_empty() {
        // The region is the whole affine hull: one point plus its directions.
        out.push_point(&chart.lift_point(&vec![S::zero(); k]));
        for i in 0..k {
            let mut u = vec![S::zero(); k];
            u[i] = S::one();
            out.push_lineality(&chart.lift_vector(&u));
        }
        return out.canonical_form();
    }

    // Interior point: maximize s subject to slack(row) ≥ s for every row
    // and s ≤ 1, in k+1 variables (s last).
    let mut inner = HRep::new(k + 1);
    for r in &rows {
        let mut row = Vec::with_capacity(k + 2);
        row.extend_from_slice(r);
        row.push(-S::one());
        inner.push_inequality(row);
    }
    let mut cap = vec![S::zero(); k + 2];
    cap[0] = S::one();
    cap[k + 1] = -S::one();
    inner.push_inequality(cap);
    let mut objective = vec![S::zero(); k + 2];
    objective[k + 1] = S::one();
    let sol = solve_lp(&LinearProgram {
        region: &inner,
        objective,
        sense: Sense::Max,
    });
    assert_eq!(sol.status, LpStatus::Optimal, "bounded slack program");
    let opt = sol.optimal_vertex.expect("optimal vertex present");
    assert!(
        opt[k].is_positive(),
        "redundancy removal leaves a full-dimensional region"
    );
    let z = &opt[..k];

    // Polar points: 0 and -aᵢ/βᵢ where βᵢ is the slack of row i at z.
    let mut polar_rows: Vec<Vec<S>> = vec![vec![S::zero(); k]];
    for r in &rows {
        let beta = eval_affine_row(r, z);
        polar_rows.push(
            r[1..]
                .iter()
                .map(|a| (-a.clone()).try_div(&beta).expect("positive slack"))
                .collect(),
        );
    }
    let (fq, _) = beneath_beyond(&Matrix::from_rows_with_cols(polar_rows, k), InsertionOrder::Given);

    // Facets of the polar map back: constant > 0 is a vertex, = 0 a ray;
    // equations of the polar are lineality directions.
    for row in fq.inequalities.iter_rows() {
        let c = &row[0];
        if c.is_positive() {
            let mut x: Vec<S> = row[1..]
                .iter()
                .zip(z)
                .map(|(w, zi)| zi.clone() - w.clone().try_div(c).expect("positive constant"))
                .collect();
            let lifted = chart.lift_point(&x);
            x.clear();
            out.push_point(&lifted);
        } else {
            debug_assert!(c.is_zero(), "polar contains the origin");
            let dir: Vec<S> = row[1..].iter().map(|w| -w.clone()).collect();
            out.push_ray(&chart.lift_vector(&dir));
        }
    }
    for row in fq.equations.iter_rows() {
        debug_assert!(row[0].is_zero(), "polar contains the origin");
        out.push_lineality(&chart.lift_vector(&row[1..]));
    }
    out.canonical_form()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, thiserror::Error)]
pub enum VolumeError {
    #[error("volume of an empty polytope")]
    Empty,
    #[error("volume of an unbounded polyhedron")]
    Unbounded,
}

/// Exact volume in the dimension of the affine hull: the sum of
/// `|det(edge matrix)| / dim!` over a beneath-and-beyond triangulation,
/// measured in the chart coordinates of the affine hull (for
/// full-dimensional input this is the ordinary volume). A single point has
/// volume 1 by the empty-product convention.
pub fn volume<S: Scalar>(p: &Polytope<S>) -> Result<S, VolumeError> {
    if p.vrep().is_none() {
        vertices(p, Algorithm::DoubleDescription);
    }
    let v = p.vrep().expect("generator description computed above");
    if v.is_empty() {
        return Err(VolumeError::Empty);
    }
    if v.rays.rows() > 0 || v.lineality.rows() > 0 {
        return Err(VolumeError::Unbounded);
    }
    let coords = v.point_coords_matrix();
    let (_, tri) = beneath_beyond(&coords, InsertionOrder::Given);
    let d = coords.cols();

    let diffs: Vec<Vec<S>> = (1..tri.vertices.rows())
        .map(|i| {
            tri.vertices
                .row(i)
                .iter()
                .zip(tri.vertices.row(0))
                .map(|(a, b)| a.clone() - b)
                .collect()
        })
        .collect();
    let normals = crate::linalg::kernel(&Matrix::from_rows_with_cols(diffs, d));
    let mut eq_rows: Vec<Vec<S>> = Vec::new();
    for a in normals.iter_rows() {
        let mut row = Vec::with_capacity(d + 1);
        row.push(-crate::arith::dot(a, tri.vertices.row(0)));
        row.extend_from_slice(a);
        eq_rows.push(row);
    }
    let chart = AffineChart::from_equations(d, &Matrix::from_rows_with_cols(eq_rows, d + 1))
        .expect("point-derived equations are consistent");
    let k = chart.dim();
    if k == 0 {
        return Ok(S::one());
    }
    let chart_pts: Vec<Vec<S>> = tri
        .vertices
        .iter_rows()
        .map(|r| chart.project_point(r))
        .collect();

    let mut total = S::zero();
    for simplex in &tri.simplices {
        let base = &chart_pts[simplex[0]];
        let rows: Vec<Vec<S>> = simplex[1..]
            .iter()
            .map(|&i| {
                chart_pts[i]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a.clone() - b)
                    .collect()
            })
            .collect();
        total = total + det(&Matrix::from_rows_with_cols(rows, k)).abs();
    }
    let mut fact = S::one();
    for i in 2..=k as i64 {
        fact = fact * S::from_i64(i);
    }
    Ok(total.try_div(&fact).expect("factorial is nonzero"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::linalg::lex_cmp;
    use num_traits::Zero;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn pts(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
                .collect(),
        )
    }

    fn cube_points(d: usize) -> Matrix<Rational> {
        let rows: Vec<Vec<Rational>> = (0..1u32 << d)
            .map(|mask| {
                (0..d)
                    .map(|i| Rational::from_integer(((mask >> i) & 1) as i64))
                    .collect()
            })
            .collect();
        Matrix::from_rows_with_cols(rows, d)
    }

    #[test]
    fn square_facets_and_triangulation() {
        let (h, tri) = beneath_beyond(&cube_points(2), InsertionOrder::Given);
        assert_eq!(h.inequalities.rows(), 4);
        assert_eq!(h.equations.rows(), 0);
        assert_eq!(tri.simplices.len(), 2);
        for p in tri.vertices.iter_rows() {
            assert!(h.contains(p));
        }
    }

    #[test]
    fn cube_conversions_agree_both_ways() {
        for d in 1..=4 {
            let p_from_points = Polytope::from_vrep({
                let mut v = VRep::new(d);
                for row in cube_points(d).iter_rows() {
                    v.push_point(row);
                }
                v
            });
            let via_bb = facets(&p_from_points, Algorithm::BeneathBeyond);
            let fresh = Polytope::from_vrep(p_from_points.vrep().unwrap().clone());
            let via_dd = facets(&fresh, Algorithm::DoubleDescription);
            assert_eq!(via_bb, via_dd, "facet sets in dimension {d}");
            assert_eq!(via_bb.inequalities.rows(), 2 * d);

            let from_h = Polytope::from_hrep(via_dd.clone());
            let back_dd = vertices(&from_h, Algorithm::DoubleDescription);
            let from_h2 = Polytope::from_hrep(via_dd.clone());
            let back_bb = vertices(&from_h2, Algorithm::BeneathBeyond);
            assert_eq!(back_dd, back_bb, "vertex sets in dimension {d}");
            assert_eq!(back_dd.points.rows(), 1 << d);
        }
    }

    #[test]
    fn redundant_points_are_not_vertices() {
        let m = pts(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1], &[2, 0]]);
        let p = Polytope::from_vrep({
            let mut v = VRep::new(2);
            for row in m.iter_rows() {
                v.push_point(row);
            }
            v
        });
        let v = vertices(&p, Algorithm::BeneathBeyond);
        let mut got = v.points.to_row_vecs();
        got.sort_by(|a, b| lex_cmp(a, b));
        assert_eq!(
            got,
            vec![
                vec![q("1"), q("0"), q("0")],
                vec![q("1"), q("0"), q("2")],
                vec![q("1"), q("2"), q("0")],
            ]
        );
    }

    #[test]
    fn lower_dimensional_points_get_equations() {
        // A segment inside the plane z = x + y.
        let m = pts(&[&[0, 0, 0], &[1, 1, 2], &[2, 2, 4]]);
        let (h, tri) = beneath_beyond(&m, InsertionOrder::Given);
        assert_eq!(h.equations.rows(), 2);
        assert_eq!(h.inequalities.rows(), 2);
        // Placing the far endpoint after the midpoint splits the segment.
        assert_eq!(tri.simplices, vec![vec![0, 1], vec![1, 2]]);
        for p in m.iter_rows() {
            assert!(h.contains(p));
        }
    }

    #[test]
    fn single_point_is_all_equations() {
        let m = pts(&[&[3, 5]]);
        let (h, tri) = beneath_beyond(&m, InsertionOrder::Given);
        assert_eq!(h.equations.rows(), 2);
        assert_eq!(h.inequalities.rows(), 0);
        assert_eq!(tri.simplices, vec![vec![0]]);
    }

    #[test]
    fn unbounded_region_vertices_and_rays() {
        // x ≥ 1, y ≥ 0, y ≤ 2 in the plane: two vertices, one ray.
        let mut h = HRep::new(2);
        h.push_inequality(vec![q("-1"), q("1"), q("0")]);
        h.push_inequality(vec![q("0"), q("0"), q("1")]);
        h.push_inequality(vec![q("2"), q("0"), q("-1")]);
        let via_dd = vertices_from_hrep(&h, Algorithm::DoubleDescription);
        let via_bb = vertices_from_hrep(&h, Algorithm::BeneathBeyond);
        assert_eq!(via_dd, via_bb);
        assert_eq!(via_dd.points.rows(), 2);
        assert_eq!(via_dd.rays.rows(), 1);
        assert_eq!(via_dd.rays.row(0)[1..], [q("1"), q("0")]);
    }

    #[test]
    fn lineality_region_round_trips() {
        // |x| ≤ 1 in the plane: a vertical strip with lineality e_y.
        let mut h = HRep::new(2);
        h.push_inequality(vec![q("1"), q("1"), q("0")]);
        h.push_inequality(vec![q("1"), q("-1"), q("0")]);
        let via_dd = vertices_from_hrep(&h, Algorithm::DoubleDescription);
        let via_bb = vertices_from_hrep(&h, Algorithm::BeneathBeyond);
        assert_eq!(via_dd, via_bb);
        assert_eq!(via_dd.lineality.rows(), 1);
        assert_eq!(via_dd.points.rows(), 2);
        assert_eq!(via_dd.rays.rows(), 0);
    }

    #[test]
    fn empty_region_has_no_generators() {
        let mut h = HRep::new(1);
        h.push_inequality(vec![q("-1"), q("1")]);
        h.push_inequality(vec![q("0"), q("-1")]);
        for algo in [Algorithm::DoubleDescription, Algorithm::BeneathBeyond] {
            let v = vertices_from_hrep(&h, algo);
            assert!(v.is_empty());
            assert_eq!(v.rays.rows(), 0);
            assert_eq!(v.lineality.rows(), 0);
        }
    }

    #[test]
    fn facets_of_a_single_point() {
        let p = Polytope::from_vrep({
            let mut v = VRep::new(3);
            v.push_point(&[q("1"), q("2"), q("3")]);
            v
        });
        let h = facets(&p, Algorithm::DoubleDescription);
        assert_eq!(h.equations.rows(), 3);
        assert_eq!(h.inequalities.rows(), 0);
        assert!(h.contains(&[q("1"), q("2"), q("3")]));
    }

    #[test]
    fn volume_examples() {
        let cube = Polytope::from_vrep({
            let mut v = VRep::new(3);
            for row in cube_points(3).iter_rows() {
                v.push_point(row);
            }
            v
        });
        assert_eq!(volume(&cube).unwrap(), q("1"));

        let tri = Polytope::from_vrep({
            let mut v = VRep::new(2);
            v.push_point(&[q("0"), q("0")]);
            v.push_point(&[q("1"), q("0")]);
            v.push_point(&[q("0"), q("1")]);
            v
        });
        assert_eq!(volume(&tri).unwrap(), q("1/2"));

        // Translation by an integer vector and coordinate swap keep volume.
        let tri2 = Polytope::from_vrep({
            let mut v = VRep::new(2);
            v.push_point(&[q("7"), q("-2")]);
            v.push_point(&[q("7"), q("-1")]);
            v.push_point(&[q("8"), q("-2")]);
            v
        });
        assert_eq!(volume(&tri2).unwrap(), q("1/2"));

        let mut strip = HRep::new(2);
        strip.push_inequality(vec![q("1"), q("1"), q("0")]);
        strip.push_inequality(vec![q("1"), q("-1"), q("0")]);
        assert_eq!(
            volume(&Polytope::from_hrep(strip)),
            Err(VolumeError::Unbounded)
        );
        assert_eq!(
            volume(&Polytope::<Rational>::empty(2)),
            Err(VolumeError::Empty)
        );
    }

    #[test]
    fn order_does_not_change_the_facets() {
        let m = pts(&[
            &[0, 0],
            &[4, 0],
            &[0, 4],
            &[4, 4],
            &[2, 2],
            &[1, 3],
            &[3, 1],
            &[2, 0],
        ]);
        let (base, _) = beneath_beyond(&m, InsertionOrder::Given);
        for seed in 0..10 {
            let (h, _) = beneath_beyond(&m, InsertionOrder::Random(seed));
            assert_eq!(h, base, "seed {seed}");
        }
        let (h, _) = beneath_beyond(&m, InsertionOrder::Lex);
        assert_eq!(h, base);
        let (h, _) = beneath_beyond(&m, InsertionOrder::VerticesFirst);
        assert_eq!(h, base);
    }

    #[test]
    fn every_facet_is_tight_on_enough_vertices() {
        let m = pts(&[&[0, 0, 0], &[2, 0, 0], &[0, 3, 0], &[0, 0, 4], &[1, 1, 1]]);
        let (h, _) = beneath_beyond(&m, InsertionOrder::Given);
        let p = Polytope::from_vrep({
            let mut v = VRep::new(3);
            for row in m.iter_rows() {
                v.push_point(row);
            }
            v
        });
        let verts = vertices(&p, Algorithm::DoubleDescription);
        for row in h.inequalities.iter_rows() {
            let tight: Vec<Vec<Rational>> = (0..verts.points.rows())
                .map(|i| verts.point(i).to_vec())
                .filter(|x| eval_affine_row(row, x).is_zero())
                .collect();
            assert!(tight.len() >= 3, "facet tight on at least d vertices");
            let rows: Vec<Vec<Rational>> = tight[1..]
                .iter()
                .map(|x| {
                    x.iter()
                        .zip(&tight[0])
                        .map(|(a, b)| a.clone() - b)
                        .collect()
                })
                .collect();
            assert_eq!(
                crate::linalg::rank(&Matrix::from_rows_with_cols(rows, 3)),
                2,
                "tight vertex set spans the facet"
            );
        }
    }
}
