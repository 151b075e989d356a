//! Polyhedron representations and the operations shared by every algorithm
//! in this crate: inequality and generator descriptions, homogenization,
//! canonical forms, membership and affine-hull charts.
//!
//! Conventions, used everywhere without further comment:
//!
//! * An inequality row `(a₀, a₁, …, a_d)` means `a₀ + Σ aᵢxᵢ ≥ 0`; an
//!   equation row means `a₀ + Σ aᵢxᵢ = 0`.
//! * Generator rows carry a leading homogenizing coordinate: points are
//!   `(1, x)`, rays and lineality directions are `(0, v)`.
//!
//! Canonical forms exist so that two descriptions of the same polyhedron
//! produced by different algorithms compare equal with `==`: equations go to
//! reduced row echelon form, inequalities are reduced modulo the equations
//! and scaled primitive, generators are scaled and sorted.

mod chart;
mod format;
pub(crate) mod redundancy;

use std::sync::OnceLock;

use crate::arith::Scalar;
use crate::linalg::{lex_cmp, rank, rref, Matrix};

pub use chart::{AffineChart, InfeasibleEquations};
pub use format::{uses_symbolic_t, ParseFileError, PolyFile};
pub use redundancy::{irredundant_inequalities, irredundant_points};

/// Attempted to canonicalize an all-zero constraint row.
#[derive(Clone, Copy, PartialEq, Eq, Debug, thiserror::Error)]
#[error("cannot canonicalize a zero row")]
pub struct ZeroRowError;

/// Scales a constraint row to its canonical representative: over the
/// rationals, the unique primitive integer vector with the same orientation.
pub fn canonicalize_row<S: Scalar>(mut row: Vec<S>) -> Result<Vec<S>, ZeroRowError> {
    if row.iter().all(|v| v.is_zero()) {
        return Err(ZeroRowError);
    }
    S::canonical_scale_positive(&mut row);
    Ok(row)
}

/// An intersection of half-spaces and hyperplanes in `ℝ^d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HRep<S: Scalar> {
    ambient_dim: usize,
    pub inequalities: Matrix<S>,
    pub equations: Matrix<S>,
}

impl<S: Scalar> HRep<S> {
    pub fn new(ambient_dim: usize) -> Self {
        HRep {
            ambient_dim,
            inequalities: Matrix::empty(ambient_dim + 1),
            equations: Matrix::empty(ambient_dim + 1),
        }
    }

    pub fn from_matrices(ambient_dim: usize, inequalities: Matrix<S>, equations: Matrix<S>) -> Self {
        assert_eq!(inequalities.cols(), ambient_dim + 1, "inequality width");
        assert_eq!(equations.cols(), ambient_dim + 1, "equation width");
        HRep {
            ambient_dim,
            inequalities,
            equations,
        }
    }

    /// The canonical description of the empty set: the equation `1 = 0`.
    pub fn infeasible(ambient_dim: usize) -> Self {
        let mut row = vec![S::zero(); ambient_dim + 1];
        row[0] = S::one();
        HRep {
            ambient_dim,
            inequalities: Matrix::empty(ambient_dim + 1),
            equations: Matrix::from_rows_with_cols(vec![row], ambient_dim + 1),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn push_inequality(&mut self, row: Vec<S>) {
        self.inequalities.push_row(row);
    }

    pub fn push_equation(&mut self, row: Vec<S>) {
        self.equations.push_row(row);
    }

    /// True when this is (syntactically) the infeasible marker: some equation
    /// has a zero normal part and a nonzero constant.
    pub fn is_infeasible_marker(&self) -> bool {
        self.equations
            .iter_rows()
            .any(|r| !r[0].is_zero() && r[1..].iter().all(|v| v.is_zero()))
    }

    /// Exact membership test.
    pub fn contains(&self, x: &[S]) -> bool {
        assert_eq!(x.len(), self.ambient_dim, "dimension mismatch");
        self.inequalities
            .iter_rows()
            .all(|row| !eval_affine_row(row, x).is_negative())
            && self
                .equations
                .iter_rows()
                .all(|row| eval_affine_row(row, x).is_zero())
    }

    /// The canonical form: equations in reduced echelon form, inequalities
    /// reduced modulo the equations, scaled primitive, sorted and deduplicated.
    /// Rows that reduce to a contradictory constant yield the infeasible
    /// marker. This is a syntactic normal form; use
    /// [`irredundant_inequalities`] to remove LP-redundant rows.
    pub fn canonical_form(&self) -> HRep<S> {
        let d = self.ambient_dim;
        let Ok(chart) = AffineChart::from_equations(d, &self.equations) else {
            return HRep::infeasible(d);
        };
        let mut equations: Vec<Vec<S>> = chart
            .equation_rows()
            .iter_rows()
            .map(|r| canonicalize_row(r.to_vec()).expect("echelon rows are nonzero"))
            .collect();
        equations.sort_by(|a, b| lex_cmp(a, b));

        let pivot_cols: Vec<usize> = chart.pivot_coords().iter().map(|&p| 1 + p).collect();
        let mut inequalities: Vec<Vec<S>> = Vec::new();
        for row in self.inequalities.iter_rows() {
            let mut r = row.to_vec();
            chart::reduce_row_mod(&mut r, chart.equation_rows(), &pivot_cols);
            if r[1..].iter().all(|v| v.is_zero()) {
                if r[0].is_negative() {
                    return HRep::infeasible(d);
                }
                continue;
            }
            S::canonical_scale_positive(&mut r);
            inequalities.push(r);
        }
        inequalities.sort_by(|a, b| lex_cmp(a, b));
        inequalities.dedup();

        HRep {
            ambient_dim: d,
            inequalities: Matrix::from_rows_with_cols(inequalities, d + 1),
            equations: Matrix::from_rows_with_cols(equations, d + 1),
        }
    }
}

/// Evaluates an affine row `(c, a)` at a point: `c + Σ aᵢxᵢ`.
pub fn eval_affine_row<S: Scalar>(row: &[S], x: &[S]) -> S {
    debug_assert_eq!(row.len(), x.len() + 1);
    let mut acc = row[0].clone();
    for (a, xi) in row[1..].iter().zip(x) {
        if !a.is_zero() && !xi.is_zero() {
            acc = acc + a.clone() * xi;
        }
    }
    acc
}

/// A generator description: convex hull of points plus conic hull of rays
/// plus the span of the lineality directions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VRep<S: Scalar> {
    ambient_dim: usize,
    pub points: Matrix<S>,
    pub rays: Matrix<S>,
    pub lineality: Matrix<S>,
}

impl<S: Scalar> VRep<S> {
    pub fn new(ambient_dim: usize) -> Self {
        VRep {
            ambient_dim,
            points: Matrix::empty(ambient_dim + 1),
            rays: Matrix::empty(ambient_dim + 1),
            lineality: Matrix::empty(ambient_dim + 1),
        }
    }

    pub fn from_matrices(
        ambient_dim: usize,
        points: Matrix<S>,
        rays: Matrix<S>,
        lineality: Matrix<S>,
    ) -> Self {
        for m in [&points, &rays, &lineality] {
            assert_eq!(m.cols(), ambient_dim + 1, "generator width");
        }
        for row in points.iter_rows() {
            assert!(row[0].is_one(), "point rows must lead with 1");
        }
        for row in rays.iter_rows().chain(lineality.iter_rows()) {
            assert!(row[0].is_zero(), "ray and lineality rows must lead with 0");
        }
        VRep {
            ambient_dim,
            points,
            rays,
            lineality,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Adds the point `x` (ambient coordinates, without the leading 1).
    pub fn push_point(&mut self, x: &[S]) {
        assert_eq!(x.len(), self.ambient_dim, "dimension mismatch");
        let mut row = Vec::with_capacity(self.ambient_dim + 1);
        row.push(S::one());
        row.extend_from_slice(x);
        self.points.push_row(row);
    }

    pub fn push_ray(&mut self, v: &[S]) {
        assert_eq!(v.len(), self.ambient_dim, "dimension mismatch");
        assert!(!v.iter().all(|v| v.is_zero()), "zero ray");
        let mut row = Vec::with_capacity(self.ambient_dim + 1);
        row.push(S::zero());
        row.extend_from_slice(v);
        self.rays.push_row(row);
    }

    pub fn push_lineality(&mut self, v: &[S]) {
        assert_eq!(v.len(), self.ambient_dim, "dimension mismatch");
        assert!(!v.iter().all(|v| v.is_zero()), "zero lineality direction");
        let mut row = Vec::with_capacity(self.ambient_dim + 1);
        row.push(S::zero());
        row.extend_from_slice(v);
        self.lineality.push_row(row);
    }

    /// Coordinates of point `i` (the row without its leading 1).
    pub fn point(&self, i: usize) -> &[S] {
        &self.points.row(i)[1..]
    }

    /// All point coordinates as a plain matrix, leading 1s stripped.
    pub fn point_coords_matrix(&self) -> Matrix<S> {
        let rows: Vec<Vec<S>> = (0..self.points.rows()).map(|i| self.point(i).to_vec()).collect();
        Matrix::from_rows_with_cols(rows, self.ambient_dim)
    }

    pub fn is_empty(&self) -> bool {
        self.points.rows() == 0
    }

    /// Canonical form: lineality in reduced echelon form, rays and points
    /// reduced modulo the lineality space, rays scaled primitive, everything
    /// sorted and deduplicated.
    pub fn canonical_form(&self) -> VRep<S> {
        let d = self.ambient_dim;
        let mut lin = self.lineality.clone();
        let lin_pivots = rref(&mut lin);
        let mut lineality: Vec<Vec<S>> = lin
            .iter_rows()
            .map(|r| canonicalize_row(r.to_vec()).expect("echelon rows are nonzero"))
            .collect();
        lineality.sort_by(|a, b| lex_cmp(a, b));

        let mut points: Vec<Vec<S>> = Vec::new();
        for row in self.points.iter_rows() {
            let mut r = row.to_vec();
            chart::reduce_row_mod(&mut r, &lin, &lin_pivots);
            points.push(r);
        }
        points.sort_by(|a, b| lex_cmp(a, b));
        points.dedup();

        let mut rays: Vec<Vec<S>> = Vec::new();
        for row in self.rays.iter_rows() {
            let mut r = row.to_vec();
            chart::reduce_row_mod(&mut r, &lin, &lin_pivots);
            if r.iter().all(|v| v.is_zero()) {
                continue;
            }
            S::canonical_scale_positive(&mut r);
            rays.push(r);
        }
        rays.sort_by(|a, b| lex_cmp(a, b));
        rays.dedup();

        VRep {
            ambient_dim: d,
            points: Matrix::from_rows_with_cols(points, d + 1),
            rays: Matrix::from_rows_with_cols(rays, d + 1),
            lineality: Matrix::from_rows_with_cols(lineality, d + 1),
        }
    }
}

/// A polyhedral cone in homogeneous coordinates, carried in whichever of the
/// two descriptions produced it.
#[derive(Clone, Debug)]
pub struct Cone<S: Scalar> {
    /// Number of homogeneous coordinates (d + 1 for a homogenized polytope).
    pub coord_dim: usize,
    pub rep: ConeRep<S>,
}

#[derive(Clone, Debug)]
pub enum ConeRep<S: Scalar> {
    /// Rows `h` meaning `h · y ≥ 0`, plus equation rows `h · y = 0`.
    ByInequalities {
        inequalities: Matrix<S>,
        equations: Matrix<S>,
    },
    /// Rows `y` meaning nonnegative combinations, plus lineality rows.
    ByGenerators { rays: Matrix<S>, lineality: Matrix<S> },
}

/// A polyhedron with lazily paired descriptions. Construction takes either
/// description; conversions in the hull module fill in the other and cache it
/// here along with derived data.
#[derive(Clone, Debug)]
pub struct Polytope<S: Scalar> {
    ambient_dim: usize,
    hrep: OnceLock<HRep<S>>,
    vrep: OnceLock<VRep<S>>,
    dimension: OnceLock<i64>,
    bounding_box: OnceLock<Option<Vec<(S, S)>>>,
}

impl<S: Scalar> Polytope<S> {
    pub fn from_hrep(h: HRep<S>) -> Self {
        let p = Polytope::bare(h.ambient_dim());
        p.hrep.set(h).ok().expect("fresh cell");
        p
    }

    pub fn from_vrep(v: VRep<S>) -> Self {
        let p = Polytope::bare(v.ambient_dim());
        p.vrep.set(v).ok().expect("fresh cell");
        p
    }

    pub fn from_reps(h: HRep<S>, v: VRep<S>) -> Self {
        assert_eq!(h.ambient_dim(), v.ambient_dim(), "dimension mismatch");
        let p = Polytope::bare(h.ambient_dim());
        p.hrep.set(h).ok().expect("fresh cell");
        p.vrep.set(v).ok().expect("fresh cell");
        p
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Polytope::from_reps(HRep::infeasible(ambient_dim), VRep::new(ambient_dim))
    }

    fn bare(ambient_dim: usize) -> Self {
        Polytope {
            ambient_dim,
            hrep: OnceLock::new(),
            vrep: OnceLock::new(),
            dimension: OnceLock::new(),
            bounding_box: OnceLock::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn hrep(&self) -> Option<&HRep<S>> {
        self.hrep.get()
    }

    pub fn vrep(&self) -> Option<&VRep<S>> {
        self.vrep.get()
    }

    /// Caches a computed description; the first stored value wins.
    pub fn store_hrep(&self, h: HRep<S>) -> &HRep<S> {
        assert_eq!(h.ambient_dim(), self.ambient_dim, "dimension mismatch");
        self.hrep.get_or_init(|| h)
    }

    pub fn store_vrep(&self, v: VRep<S>) -> &VRep<S> {
        assert_eq!(v.ambient_dim(), self.ambient_dim, "dimension mismatch");
        self.vrep.get_or_init(|| v)
    }

    /// True when the polyhedron has no points. Requires a generator
    /// description or the infeasible H-marker; full emptiness testing of an
    /// arbitrary H-description is an LP feasibility question.
    pub fn is_empty(&self) -> bool {
        if let Some(v) = self.vrep.get() {
            return v.is_empty();
        }
        if let Some(h) = self.hrep.get() {
            if h.is_infeasible_marker() {
                return true;
            }
        }
        panic!("emptiness needs a generator description; convert first");
    }

    /// Dimension of the affine hull, `-1` for the empty polyhedron. Requires
    /// a generator description (convert first).
    pub fn dimension(&self) -> i64 {
        *self.dimension.get_or_init(|| {
            let v = self
                .vrep
                .get()
                .expect("dimension needs a generator description; convert first");
            if v.is_empty() {
                return -1;
            }
            let mut stacked = v.points.to_row_vecs();
            stacked.extend(v.rays.to_row_vecs());
            stacked.extend(v.lineality.to_row_vecs());
            let m = Matrix::from_rows_with_cols(stacked, self.ambient_dim + 1);
            rank(&m) as i64 - 1
        })
    }

    /// Per-coordinate `[min, max]` over the polyhedron, from the generator
    /// description; `None` when unbounded or empty.
    pub fn bounding_box(&self) -> Option<&[(S, S)]> {
        self.bounding_box
            .get_or_init(|| {
                let v = self
                    .vrep
                    .get()
                    .expect("bounding box needs a generator description; convert first");
                if v.is_empty() || v.rays.rows() > 0 || v.lineality.rows() > 0 {
                    return None;
                }
                let mut bounds: Vec<(S, S)> = v.point(0).iter().map(|c| (c.clone(), c.clone())).collect();
                for i in 1..v.points.rows() {
                    for (b, c) in bounds.iter_mut().zip(v.point(i)) {
                        if *c < b.0 {
                            b.0 = c.clone();
                        }
                        if *c > b.1 {
                            b.1 = c.clone();
                        }
                    }
                }
                Some(bounds)
            })
            .as_deref()
    }

    /// Membership via the inequality description (must be present).
    pub fn contains(&self, x: &[S]) -> bool {
        self.hrep
            .get()
            .expect("membership needs an inequality description; convert first")
            .contains(x)
    }
}

/// Embeds a polyhedron as the cone over it: V-data becomes generators, H-data
/// becomes homogeneous inequalities plus the `x₀ ≥ 0` row.
pub fn homogenize<S: Scalar>(p: &Polytope<S>) -> Cone<S> {
    let d = p.ambient_dim();
    if let Some(v) = p.vrep() {
        let mut rays = v.points.clone();
        for row in v.rays.iter_rows() {
            rays.push_row(row.to_vec());
        }
        return Cone {
            coord_dim: d + 1,
            rep: ConeRep::ByGenerators {
                rays,
                lineality: v.lineality.clone(),
            },
        };
    }
    let h = p.hrep().expect("a polytope carries at least one description");
    let mut inequalities = h.inequalities.clone();
    let mut e0 = vec![S::zero(); d + 1];
    e0[0] = S::one();
    inequalities.push_row(e0);
    Cone {
        coord_dim: d + 1,
        rep: ConeRep::ByInequalities {
            inequalities,
            equations: h.equations.clone(),
        },
    }
}

/// Splits a homogeneous cone back into a polyhedron: generators with positive
/// leading coordinate are rescaled to points, the rest become rays.
///
/// Panics when a generator has a negative leading coordinate or a lineality
/// row a nonzero one; cones arising as homogenizations never do.
pub fn dehomogenize<S: Scalar>(c: &Cone<S>) -> Polytope<S> {
    assert!(c.coord_dim > 0, "cone without coordinates");
    let d = c.coord_dim - 1;
    match &c.rep {
        ConeRep::ByInequalities {
            inequalities,
            equations,
        } => {
            let h = HRep::from_matrices(d, inequalities.clone(), equations.clone());
            Polytope::from_hrep(h)
        }
        ConeRep::ByGenerators { rays, lineality } => {
            let mut v = VRep::new(d);
            for row in rays.iter_rows() {
                match row[0].signum() {
                    0 => v.push_ray(&row[1..]),
                    1 => {
                        if row[0].is_one() {
                            v.push_point(&row[1..]);
                        } else {
                            let coords: Vec<S> = row[1..]
                                .iter()
                                .map(|c| c.clone().try_div(&row[0]).expect("positive divisor"))
                                .collect();
                            v.push_point(&coords);
                        }
                    }
                    _ => panic!("generator with negative leading coordinate"),
                }
            }
            for row in lineality.iter_rows() {
                assert!(
                    row[0].is_zero(),
                    "lineality row with nonzero leading coordinate"
                );
                v.push_lineality(&row[1..]);
            }
            Polytope::from_vrep(v)
        }
    }
}
