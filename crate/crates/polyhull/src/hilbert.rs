//! Hilbert bases of pointed rational cones, and lattice-point enumeration
//! through the homogenization cone.
//!
//! The pipeline is: triangulate the cone into simplicial pieces (a placed
//! hull of a cross-section, reusing [`crate::hull`]), enumerate the lattice
//! points of each piece's fundamental parallelepiped, and reduce the union
//! to the minimal generating set. Parallelepiped points come from a
//! Hermite-triangular residue system when the piece is full rank (one point
//! per residue class, `|det|` in total), and from a box scan with an exact
//! coefficient solve otherwise.
//!
//! [`enumerate_via_hilbert`] skips the reduction entirely: every height-1
//! element of the homogenization cone of a bounded polytope is irreducible,
//! so the lattice points are exactly the height-1 parallelepiped points
//! together with the height-1 generators.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{dot, Rational, Scalar};
use crate::hull::{beneath_beyond, double_description, InsertionOrder};
use crate::lattice::{EnumerateError, LatticePointSet, Method};
use crate::linalg::{invert, kernel, lex_cmp, rank, rref, solve, Matrix};
use crate::lp::{solve_lp, LinearProgram, LpStatus, Sense};
use crate::poly::{canonicalize_row, Cone, ConeRep, Polytope};

/// Minimal generating set of the monoid of lattice points of a pointed
/// rational cone: primitive integer rows, sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertBasis {
    pub elements: Matrix<Rational>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, thiserror::Error)]
#[error("generators must be linearly independent")]
pub struct DependentGenerators;

/// The cone contains a line, so its lattice points have no finite minimal
/// generating set; a basis of the lineality space is attached.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("cone is not pointed")]
pub struct NotPointed {
    pub lineality: Matrix<Rational>,
}

/// Scales every row to its primitive integer representative.
fn primitive_rows(m: &Matrix<Rational>) -> Matrix<Rational> {
    let rows: Vec<Vec<Rational>> = m
        .iter_rows()
        .map(|r| canonicalize_row(r.to_vec()).expect("nonzero generator"))
        .collect();
    Matrix::from_rows_with_cols(rows, m.cols())
}

/// Diagonal of a Hermite-triangular basis of the row lattice of `g`
/// (square, full rank, integer entries). Row operations are unimodular, so
/// the box `∏ [0, dᵢ)` is a complete residue system of `ℤ^n` modulo the
/// lattice.
fn hermite_diagonal(g: &Matrix<Rational>) -> Vec<BigInt> {
    let n = g.rows();
    let mut m: Vec<Vec<BigInt>> = g
        .iter_rows()
        .map(|r| r.iter().map(|v| v.numer().clone()).collect())
        .collect();
    let mut diag = Vec::with_capacity(n);
    for col in 0..n {
        loop {
            let mut nz: Vec<usize> = (col..n).filter(|&i| !m[i][col].is_zero()).collect();
            debug_assert!(!nz.is_empty(), "full-rank input");
            if nz.len() == 1 {
                let i = nz[0];
                m.swap(col, i);
                break;
            }
            nz.sort_by_key(|&i| m[i][col].abs());
            let (small, big) = (nz[0], nz[1]);
            let q = &m[big][col] / &m[small][col];
            for j in 0..n {
                let sub = &q * &m[small][j];
                m[big][j] -= sub;
            }
        }
        if m[col][col].is_negative() {
            for v in m[col].iter_mut() {
                *v = -v.clone();
            }
        }
        diag.push(m[col][col].clone());
    }
    diag
}

/// Lattice points of the fundamental parallelepiped `{Σ λᵢgᵢ : 0 ≤ λᵢ < 1}`
/// of independent integer generators (rows of `g`), including the origin.
fn parallelepiped_points(g: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let (k, n) = (g.rows(), g.cols());
    if k == n {
        // One representative per residue class modulo the row lattice,
        // mapped into the parallelepiped by taking fractional coordinates.
        let diag = hermite_diagonal(g);
        let ginv_t = invert(g).expect("full rank").transpose();
        let g_t = g.transpose();
        let mut out = Vec::new();
        let mut x: Vec<BigInt> = vec![BigInt::ZERO; n];
        loop {
            let xr: Vec<Rational> = x.iter().map(|v| Rational::from(v.clone())).collect();
            let lambda = ginv_t.mul_vec(&xr);
            let frac: Vec<Rational> = lambda
                .into_iter()
                .map(|l| l.clone() - Rational::from(l.floor()))
                .collect();
            let z = g_t.mul_vec(&frac);
            debug_assert!(z.iter().all(|v| v.is_integer()));
            out.push(z);
            // Odometer step through the residue box.
            let mut i = 0;
            while i < n {
                x[i] += 1u8;
                if x[i] < diag[i] {
                    break;
                }
                x[i] = BigInt::ZERO;
                i += 1;
            }
            if i == n {
                return out;
            }
        }
    }
    // Lower rank: scan the integer box of the parallelepiped and keep the
    // points whose coefficient vector exists and lies in [0, 1)^k.
    let a = g.transpose();
    let mut lo = vec![BigInt::ZERO; n];
    let mut hi = vec![BigInt::ZERO; n];
    for r in g.iter_rows() {
        for (j, v) in r.iter().enumerate() {
            let z = v.numer();
            if z.is_negative() {
                lo[j] += z;
            } else {
                hi[j] += z;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = lo.clone();
    'scan: loop {
        let xr: Vec<Rational> = x.iter().map(|v| Rational::from(v.clone())).collect();
        if let Some(lambda) = solve(&a, &xr) {
            if lambda
                .iter()
                .all(|l| !l.is_negative() && *l < Rational::from(1))
            {
                out.push(xr);
            }
        }
        let mut i = 0;
        while i < n {
            x[i] += 1u8;
            if x[i] <= hi[i] {
                continue 'scan;
            }
            x[i] = lo[i].clone();
            i += 1;
        }
        return out;
    }
}

/// Hilbert basis of the simplicial cone spanned by independent integer
/// generators: the parallelepiped points united with the generators, with
/// reducible elements removed. Reducibility is tested on coefficient
/// vectors: `z - b` stays in the cone exactly when `λ(b) ≤ λ(z)`
/// componentwise.
pub fn hilbert_basis_simplicial(
    generators: &Matrix<Rational>,
) -> Result<HilbertBasis, DependentGenerators> {
    let g = primitive_rows(generators);
    if rank(&g) != g.rows() {
        return Err(DependentGenerators);
    }
    let a = g.transpose();
    let mut cands: Vec<Vec<Rational>> = parallelepiped_points(&g)
        .into_iter()
        .filter(|z| !z.iter().all(|v| v.is_zero()))
        .collect();
    cands.extend(g.iter_rows().map(|r| r.to_vec()));
    cands.sort_by(|x, y| lex_cmp(x, y));
    cands.dedup();

    let lambdas: Vec<Vec<Rational>> = cands
        .iter()
        .map(|z| solve(&a, z).expect("candidates lie in the cone's span"))
        .collect();
    let mut order: Vec<usize> = (0..cands.len()).collect();
    let height = |i: usize| -> Rational {
        let mut s = Rational::zero();
        for l in &lambdas[i] {
            s = s + l;
        }
        s
    };
    order.sort_by(|&x, &y| height(x).cmp(&height(y)).then(lex_cmp(&cands[x], &cands[y])));

    let mut accepted: Vec<usize> = Vec::new();
    for &i in &order {
        let reducible = accepted.iter().any(|&b| {
            lambdas[b]
                .iter()
                .zip(&lambdas[i])
                .all(|(lb, li)| lb <= li)
        });
        if !reducible {
            accepted.push(i);
        }
    }
    let mut rows: Vec<Vec<Rational>> = accepted.into_iter().map(|i| cands[i].clone()).collect();
    rows.sort_by(|x, y| lex_cmp(x, y));
    Ok(HilbertBasis {
        elements: Matrix::from_rows_with_cols(rows, g.cols()),
    })
}

/// Generator rows and constraint rows (inequalities, equations) of a cone,
/// derived from whichever description is present via double description.
fn cone_both_ways(c: &Cone<Rational>) -> (Matrix<Rational>, Matrix<Rational>, Matrix<Rational>) {
    match &c.rep {
        ConeRep::ByGenerators { rays, lineality } => {
            let polar = Cone {
                coord_dim: c.coord_dim,
                rep: ConeRep::ByInequalities {
                    inequalities: rays.clone(),
                    equations: lineality.clone(),
                },
            };
            let out = double_description(&polar);
            let ConeRep::ByGenerators {
                rays: facets,
                lineality: equations,
            } = out.rep
            else {
                unreachable!("double description returns generators");
            };
            let mut gens = rays.to_row_vecs();
            gens.extend(lineality.to_row_vecs());
            gens.extend(lineality.iter_rows().map(|r| r.iter().map(|v| -v.clone()).collect()));
            (
                Matrix::from_rows_with_cols(gens, c.coord_dim),
                facets,
                equations,
            )
        }
        ConeRep::ByInequalities {
            inequalities,
            equations,
        } => {
            let out = double_description(c);
            let ConeRep::ByGenerators { rays, lineality } = out.rep else {
                unreachable!("double description returns generators");
            };
            let mut gens = rays.to_row_vecs();
            gens.extend(lineality.to_row_vecs());
            gens.extend(lineality.iter_rows().map(|r| r.iter().map(|v| -v.clone()).collect()));
            (
                Matrix::from_rows_with_cols(gens, c.coord_dim),
                inequalities.clone(),
                equations.clone(),
            )
        }
    }
}

/// Hilbert basis of a pointed cone: triangulate a cross-section, take each
/// simplicial piece's parallelepiped points and the generators, and reduce
/// the union. An element is reducible exactly when subtracting some
/// already-accepted element of smaller height keeps it in the cone.
pub fn hilbert_basis(c: &Cone<Rational>) -> Result<HilbertBasis, NotPointed> {
    let n = c.coord_dim;
    let (gens_raw, facet_rows, eq_rows) = cone_both_ways(c);
    let mut constraint = facet_rows.to_row_vecs();
    constraint.extend(eq_rows.to_row_vecs());
    constraint.extend(eq_rows.iter_rows().map(|r| r.iter().map(|v| -v.clone()).collect()));
    let lin = kernel(&Matrix::from_rows_with_cols(constraint.clone(), n));
    if lin.rows() > 0 {
        let mut basis = lin;
        rref(&mut basis);
        return Err(NotPointed {
            lineality: primitive_rows(&basis),
        });
    }
    if gens_raw.rows() == 0 {
        return Ok(HilbertBasis {
            elements: Matrix::empty(n),
        });
    }
    let gens = primitive_rows(&gens_raw);

    // A functional strictly positive on the cone: h·gᵢ ≥ 1 for every
    // generator. Exists exactly because the cone is pointed.
    let mut slack = crate::poly::HRep::new(n);
    for r in gens.iter_rows() {
        let mut row = Vec::with_capacity(n + 1);
        row.push(-Rational::from(1));
        row.extend_from_slice(r);
        slack.push_inequality(row);
    }
    let sol = solve_lp(&LinearProgram {
        region: &slack,
        objective: vec![Rational::zero(); n + 1],
        sense: Sense::Max,
    });
    assert_eq!(sol.status, LpStatus::Optimal, "pointed cone admits a slicing functional");
    let h = sol.optimal_vertex.expect("feasible program returns a point");

    // Cross-section points gᵢ/(h·gᵢ) all lie on h·x = 1; a placing hull of
    // them triangulates the cone into simplicial pieces.
    let slice_rows: Vec<Vec<Rational>> = gens
        .iter_rows()
        .map(|r| {
            let s = dot(&h, r);
            r.iter()
                .map(|v| v.clone().try_div(&s).expect("positive slice height"))
                .collect()
        })
        .collect();
    let (_, tri) = beneath_beyond(
        &Matrix::from_rows_with_cols(slice_rows.clone(), n),
        InsertionOrder::Given,
    );
    let gen_of_slice = |row: &[Rational]| -> Vec<Rational> {
        canonicalize_row(row.to_vec()).expect("nonzero slice point")
    };

    let mut cands: Vec<Vec<Rational>> = gens.to_row_vecs();
    for simplex in &tri.simplices {
        let sg: Vec<Vec<Rational>> = simplex
            .iter()
            .map(|&vi| gen_of_slice(tri.vertices.row(vi)))
            .collect();
        let sgm = Matrix::from_rows_with_cols(sg, n);
        for z in parallelepiped_points(&sgm) {
            if !z.iter().all(|v| v.is_zero()) {
                cands.push(z);
            }
        }
    }
    cands.sort_by(|x, y| lex_cmp(x, y));
    cands.dedup();
    cands.sort_by(|x, y| dot(&h, x).cmp(&dot(&h, y)).then(lex_cmp(x, y)));

    let facet_vecs = facet_rows.to_row_vecs();
    let accepted = reduce_by_cone_membership(&cands, &facet_vecs, &eq_rows.to_row_vecs());
    let mut rows = accepted;
    rows.sort_by(|x, y| lex_cmp(x, y));
    Ok(HilbertBasis {
        elements: Matrix::from_rows_with_cols(rows, n),
    })
}

/// Keeps exactly the candidates that are not `b + (cone point)` for an
/// already-kept `b`. Candidates must be sorted by a functional strictly
/// increasing along the cone's monoid. Uses `i128` arithmetic when the data
/// fits with margin, exact rationals otherwise.
fn reduce_by_cone_membership(
    cands: &[Vec<Rational>],
    ineqs: &[Vec<Rational>],
    eqs: &[Vec<Rational>],
) -> Vec<Vec<Rational>> {
    let narrow = |rows: &[Vec<Rational>]| -> Option<Vec<Vec<i128>>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|v| {
                        if v.is_integer() {
                            v.numer().to_i128().filter(|x| x.abs() < (1 << 40))
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    };
    if let (Some(nc), Some(ni), Some(ne)) = (narrow(cands), narrow(ineqs), narrow(eqs)) {
        let mut accepted: Vec<usize> = Vec::new();
        for (i, z) in nc.iter().enumerate() {
            let reducible = accepted.iter().any(|&b| {
                let d: Vec<i128> = z.iter().zip(&nc[b]).map(|(a, c)| a - c).collect();
                ni.iter()
                    .all(|f| f.iter().zip(&d).map(|(a, b)| a * b).sum::<i128>() >= 0)
                    && ne
                        .iter()
                        .all(|f| f.iter().zip(&d).map(|(a, b)| a * b).sum::<i128>() == 0)
            });
            if !reducible {
                accepted.push(i);
            }
        }
        return accepted.into_iter().map(|i| cands[i].clone()).collect();
    }
    let mut accepted: Vec<usize> = Vec::new();
    for (i, z) in cands.iter().enumerate() {
        let reducible = accepted.iter().any(|&b| {
            let d: Vec<Rational> = z
                .iter()
                .zip(&cands[b])
                .map(|(a, c)| a.clone() - c)
                .collect();
            ineqs.iter().all(|f| !dot(f, &d).is_negative())
                && eqs.iter().all(|f| dot(f, &d).is_zero())
        });
        if !reducible {
            accepted.push(i);
        }
    }
    accepted.into_iter().map(|i| cands[i].clone()).collect()
}

/// Lattice points of a bounded polytope through its homogenization cone:
/// triangulate over the polytope's own points, enumerate each piece's
/// parallelepiped, and keep the elements at height 1. No reduction step is
/// needed, because height-1 cone elements cannot decompose.
pub fn enumerate_via_hilbert(
    p: &Polytope<Rational>,
    cap: Option<usize>,
) -> Result<LatticePointSet, EnumerateError> {
    let d = p.ambient_dim();
    if p.vrep().is_none() {
        crate::hull::vertices(p, crate::hull::Algorithm::DoubleDescription);
    }
    let v = p.vrep().expect("generator description computed above");
    if v.is_empty() {
        return Ok(LatticePointSet::from_coord_rows(d, Vec::new(), Method::Hilbert));
    }
    if v.rays.rows() > 0 || v.lineality.rows() > 0 {
        return Err(EnumerateError::Unbounded);
    }

    let coords = v.point_coords_matrix();
    let (_, tri) = beneath_beyond(&coords, InsertionOrder::Given);
    let one = Rational::from(1);

    let mut found: Vec<Vec<Rational>> = Vec::new();
    // Integral input points are height-1 generators of the cone.
    for r in tri.vertices.iter_rows() {
        if r.iter().all(|c| c.is_integer()) {
            found.push(r.to_vec());
        }
    }
    for simplex in &tri.simplices {
        let sg: Vec<Vec<Rational>> = simplex
            .iter()
            .map(|&vi| {
                let mut hom = Vec::with_capacity(d + 1);
                hom.push(one.clone());
                hom.extend_from_slice(tri.vertices.row(vi));
                canonicalize_row(hom).expect("homogeneous point row is nonzero")
            })
            .collect();
        let sgm = Matrix::from_rows_with_cols(sg, d + 1);
        for z in parallelepiped_points(&sgm) {
            if z[0] == one {
                found.push(z[1..].to_vec());
                if let Some(c) = cap {
                    if found.len() > c {
                        return Err(EnumerateError::TooManyPoints { cap: c });
                    }
                }
            }
        }
    }
    let set = LatticePointSet::from_coord_rows(d, found, Method::Hilbert);
    if let Some(c) = cap {
        if set.count() > c {
            return Err(EnumerateError::TooManyPoints { cap: c });
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::HRep;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn m(rows: &[&[i64]], cols: usize) -> Matrix<Rational> {
        Matrix::from_rows_with_cols(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
                .collect(),
            cols,
        )
    }

    fn basis_rows(b: &HilbertBasis) -> Vec<Vec<Rational>> {
        b.elements.to_row_vecs()
    }

    #[test]
    fn unimodular_cone_keeps_its_generators() {
        let b = hilbert_basis_simplicial(&m(&[&[1, 0], &[0, 1]], 2)).unwrap();
        assert_eq!(basis_rows(&b), vec![vec![q("0"), q("1")], vec![q("1"), q("0")]]);
    }

    #[test]
    fn index_two_cone_gains_the_middle_vector() {
        let b = hilbert_basis_simplicial(&m(&[&[1, 0], &[1, 2]], 2)).unwrap();
        assert_eq!(
            basis_rows(&b),
            vec![
                vec![q("1"), q("0")],
                vec![q("1"), q("1")],
                vec![q("1"), q("2")],
            ]
        );
    }

    #[test]
    fn fan_cone_has_a_full_ladder() {
        let k = 5;
        let b = hilbert_basis_simplicial(&m(&[&[1, 0], &[1, k]], 2)).unwrap();
        let want: Vec<Vec<Rational>> = (0..=k)
            .map(|i| vec![q("1"), Rational::from_integer(i)])
            .collect();
        assert_eq!(basis_rows(&b), want);
    }

    #[test]
    fn dependent_generators_are_rejected() {
        assert_eq!(
            hilbert_basis_simplicial(&m(&[&[1, 0], &[2, 0]], 2)),
            Err(DependentGenerators)
        );
    }

    #[test]
    fn square_cone_at_height_one() {
        let c = Cone {
            coord_dim: 3,
            rep: ConeRep::ByGenerators {
                rays: m(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]], 3),
                lineality: Matrix::empty(3),
            },
        };
        let b = hilbert_basis(&c).unwrap();
        assert_eq!(b.elements.rows(), 4);
        for r in b.elements.iter_rows() {
            assert_eq!(r[0], q("1"));
        }
    }

    #[test]
    fn non_pointed_cone_reports_its_line() {
        let c = Cone {
            coord_dim: 2,
            rep: ConeRep::ByGenerators {
                rays: m(&[&[1, 0], &[-1, 0], &[0, 1]], 2),
                lineality: Matrix::empty(2),
            },
        };
        let err = hilbert_basis(&c).unwrap_err();
        assert_eq!(err.lineality.rows(), 1);
        assert_eq!(err.lineality.row(0), &[q("1"), q("0")]);
    }

    #[test]
    fn basis_elements_are_pairwise_irreducible() {
        let c = Cone {
            coord_dim: 2,
            rep: ConeRep::ByInequalities {
                inequalities: m(&[&[3, -1], &[-1, 2]], 2),
                equations: Matrix::empty(2),
            },
        };
        let b = hilbert_basis(&c).unwrap();
        let rows = basis_rows(&b);
        assert!(!rows.is_empty());
        for z in &rows {
            for x in &rows {
                for y in &rows {
                    let sum: Vec<Rational> =
                        x.iter().zip(y).map(|(a, b)| a.clone() + b).collect();
                    assert_ne!(z, &sum, "{z:?} = {x:?} + {y:?}");
                }
            }
        }
        // Against a brute-force scan: every cone point in a window must be a
        // nonnegative integer combination of basis elements.
        for x in -6i64..=6 {
            for y in -6i64..=6 {
                let inside = 3 * x - y >= 0 && -x + 2 * y >= 0;
                if !inside || (x, y) == (0, 0) {
                    continue;
                }
                let p = vec![Rational::from_integer(x), Rational::from_integer(y)];
                assert!(
                    generated(&p, &rows),
                    "({x},{y}) not generated by {rows:?}"
                );
            }
        }
    }

    fn generated(target: &[Rational], basis: &[Vec<Rational>]) -> bool {
        if target.iter().all(|v| v.is_zero()) {
            return true;
        }
        basis.iter().any(|b| {
            let rest: Vec<Rational> = target.iter().zip(b).map(|(t, v)| t.clone() - v).collect();
            let ok = {
                // Stay inside the cone 3x ≥ y, 2y ≥ x.
                let x = &rest[0];
                let y = &rest[1];
                !(x.clone() * q("3") - y.clone()).is_negative()
                    && !(y.clone() * q("2") - x.clone()).is_negative()
            };
            ok && generated(&rest, basis)
        })
    }

    #[test]
    fn segment_enumeration_through_the_cone() {
        let mut h = HRep::new(1);
        h.push_inequality(vec![q("0"), q("1")]);
        h.push_inequality(vec![q("2"), q("-1")]);
        let p = Polytope::from_hrep(h);
        let set = enumerate_via_hilbert(&p, None).unwrap();
        assert_eq!(set.count(), 3);
    }

    #[test]
    fn fractional_vertices_still_enumerate() {
        // Triangle with a fractional vertex: conv{(0,0), (2,0), (1/2, 3/2)}.
        let mut v = crate::poly::VRep::new(2);
        v.push_point(&[q("0"), q("0")]);
        v.push_point(&[q("2"), q("0")]);
        v.push_point(&[q("1/2"), q("3/2")]);
        let p = Polytope::from_vrep(v);
        let set = enumerate_via_hilbert(&p, None).unwrap();
        let bb = crate::lattice::enumerate_bbox(&p, None).unwrap();
        assert_eq!(set.points, bb.points);
        assert!(set.count() > 0);
    }
}
