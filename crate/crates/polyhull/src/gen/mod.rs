//! Constructors for the polytope families exercised by the test suite and
//! the CLI: knapsacks, cut polytopes of small graphs, Klee-Minty cubes,
//! lifted Voronoi diagrams, random boxes, matching polytopes and a simplex
//! family with no interior lattice points.
//!
//! Everything here is a pure function of its arguments. Random instances
//! draw from the crate's fixed xorshift64* generator, so a seed pins the
//! instance byte for byte across runs and platforms.

use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{Rational, Scalar};
use crate::linalg::Matrix;
use crate::poly::{HRep, Polytope, VRep};
use crate::rng::XorShift64;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum GenError {
    #[error("{0}")]
    InvalidParameter(String),
    #[error("cut polytope enumeration is limited to {limit} nodes, got {nodes}")]
    TooManyNodes { nodes: usize, limit: usize },
    #[error("{a} and {b} share the factor {g}")]
    NotCoprime { a: u64, b: u64, g: u64 },
}

fn bad(msg: impl Into<String>) -> GenError {
    GenError::InvalidParameter(msg.into())
}

/// A finite simple undirected graph; edges carry their position in the list
/// as a fixed index, which cut and matching polytopes use as the coordinate
/// order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Result<Graph, GenError> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= nodes || v >= nodes {
                return Err(bad(format!("edge ({u},{v}) out of range for {nodes} nodes")));
            }
            if u == v {
                return Err(bad(format!("loop at node {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(bad(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(Graph { nodes, edges })
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Path on `k` nodes (`k-1` edges).
    pub fn path(k: usize) -> Result<Graph, GenError> {
        if k < 1 {
            return Err(bad("path needs at least 1 node"));
        }
        Graph::new(k, (1..k).map(|i| (i - 1, i)).collect())
    }

    /// Cycle on `k` nodes.
    pub fn cycle(k: usize) -> Result<Graph, GenError> {
        if k < 3 {
            return Err(bad("cycle needs at least 3 nodes"));
        }
        Graph::new(k, (0..k).map(|i| (i, (i + 1) % k)).collect())
    }

    /// Complete graph on `k` nodes.
    pub fn complete(k: usize) -> Result<Graph, GenError> {
        if k < 1 {
            return Err(bad("complete graph needs at least 1 node"));
        }
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                edges.push((i, j));
            }
        }
        Graph::new(k, edges)
    }

    /// The asymmetric unicyclic family: a 4-cycle on nodes 0..4, a pendant
    /// edge at node 0, and a pendant path of length `k+1` at node 1. Has
    /// `k+6` nodes and `k+6` edges for every `k ≥ 0`.
    pub fn asymmetric(k: usize) -> Result<Graph, GenError> {
        let n = k + 6;
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)];
        let mut prev = 1;
        for next in 5..n {
            edges.push((prev, next));
            prev = next;
        }
        Graph::new(n, edges)
    }
}

/// Parses the CLI graph selector: `P:9`, `C:9`, `K:6` or `Gk:4`.
pub fn parse_graph(s: &str) -> Result<Graph, GenError> {
    let (family, num) = s
        .split_once(':')
        .ok_or_else(|| bad(format!("expected FAMILY:K, got {s:?}")))?;
    let k: usize = num
        .parse()
        .map_err(|_| bad(format!("bad parameter {num:?} in {s:?}")))?;
    match family {
        "P" => Graph::path(k),
        "C" => Graph::cycle(k),
        "K" => Graph::complete(k),
        "Gk" => Graph::asymmetric(k),
        other => Err(bad(format!("unknown graph family {other:?}"))),
    }
}

/// Random sites for a lifted Voronoi diagram: `m` points in `[-1,1]^(d-1)`
/// with dyadic coordinates of denominator 2^31, fully determined by the
/// seed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SiteSet {
    pub sites: Matrix<Rational>,
    pub seed: u64,
}

/// Knapsack region from the row `(b, -a_1, …, -a_d)`: the inequality
/// `b - Σ a_i x_i ≥ 0` together with `x_i ≥ 0` for every coordinate.
pub fn fractional_knapsack(coeffs: &[Rational]) -> Result<Polytope<Rational>, GenError> {
    if coeffs.len() < 2 {
        return Err(bad("knapsack needs a capacity and at least one weight"));
    }
    let d = coeffs.len() - 1;
    let mut h = HRep::new(d);
    for i in 0..d {
        let mut row = vec![Rational::zero(); d + 1];
        row[1 + i] = Rational::from(1);
        h.push_inequality(row);
    }
    h.push_inequality(coeffs.to_vec());
    Ok(Polytope::from_hrep(h))
}

/// Knapsack with Fibonacci-style weights 2, 3, 5, 8, 13, … and capacity `b`.
pub fn fibonacci_knapsack(d: usize, b: i64) -> Result<Polytope<Rational>, GenError> {
    if d < 1 {
        return Err(bad("knapsack needs at least one coordinate"));
    }
    let mut weights = vec![2i64, 3];
    while weights.len() < d {
        let n = weights.len();
        weights.push(weights[n - 2] + weights[n - 1]);
    }
    weights.truncate(d);
    let mut coeffs = vec![Rational::from_integer(b)];
    coeffs.extend(weights.into_iter().map(|w| Rational::from_integer(-w)));
    fractional_knapsack(&coeffs)
}

const CUT_NODE_LIMIT: usize = 25;

/// Convex hull of the cut vectors of `g`: one 0/1 point per bipartition of
/// the nodes (2^(n-1) points, coordinates indexed by edges), including the
/// empty cut at the origin.
pub fn cut_polytope(g: &Graph) -> Result<Polytope<Rational>, GenError> {
    let n = g.node_count();
    if n > CUT_NODE_LIMIT {
        return Err(GenError::TooManyNodes {
            nodes: n,
            limit: CUT_NODE_LIMIT,
        });
    }
    let d = g.edge_count();
    let mut v = VRep::new(d);
    // Fixing node 0 on one side enumerates each bipartition exactly once.
    for mask in 0..1u64 << n.saturating_sub(1) {
        let side = |node: usize| node > 0 && (mask >> (node - 1)) & 1 == 1;
        let point: Vec<Rational> = g
            .edges()
            .iter()
            .map(|&(a, b)| Rational::from_integer((side(a) != side(b)) as i64))
            .collect();
        v.push_point(&point);
    }
    Ok(Polytope::from_vrep(v))
}

/// The Klee-Minty cube: `0 ≤ x_1 ≤ 1` and `t·x_(i-1) ≤ x_i ≤ 1 - t·x_(i-1)`.
/// Generic in the scalar, so `t` may be a rational constant or the Puiseux
/// infinitesimal.
pub fn klee_minty<S: Scalar>(d: usize, t: S) -> Result<Polytope<S>, GenError> {
    if d < 1 {
        return Err(bad("klee-minty needs dimension at least 1"));
    }
    let mut h = HRep::new(d);
    let mut lo = vec![S::zero(); d + 1];
    lo[1] = S::one();
    h.push_inequality(lo);
    let mut hi = vec![S::zero(); d + 1];
    hi[0] = S::one();
    hi[1] = -S::one();
    h.push_inequality(hi);
    for i in 2..=d {
        let mut lo = vec![S::zero(); d + 1];
        lo[i - 1] = -t.clone();
        lo[i] = S::one();
        h.push_inequality(lo);
        let mut hi = vec![S::zero(); d + 1];
        hi[0] = S::one();
        hi[i - 1] = -t.clone();
        hi[i] = -S::one();
        h.push_inequality(hi);
    }
    Ok(Polytope::from_hrep(h))
}

/// The lifted Voronoi polyhedron of a site set, in variables `(x, δ)`: one
/// inequality `δ - 2⟨s,x⟩ + ‖s‖² ≥ 0` per site. Unbounded; its vertices
/// project to the Voronoi vertices of the sites.
pub fn voronoi_lift(s: &SiteSet) -> Polytope<Rational> {
    let dim = s.sites.cols();
    let mut h = HRep::new(dim + 1);
    for site in s.sites.iter_rows() {
        let mut row = Vec::with_capacity(dim + 2);
        let norm2 = site.iter().fold(Rational::zero(), |acc, c| acc + c.clone() * c.clone());
        row.push(norm2);
        row.extend(site.iter().map(|c| Rational::from(-2) * c.clone()));
        row.push(Rational::from(1));
        h.push_inequality(row);
    }
    Polytope::from_hrep(h)
}

/// `m` random sites in `[-1,1]^(d-1)` for a Voronoi polyhedron in `ℝ^d`.
pub fn random_sites(d: usize, m: usize, seed: u64) -> Result<SiteSet, GenError> {
    if d < 2 {
        return Err(bad("voronoi sites need d at least 2"));
    }
    if m < 1 {
        return Err(bad("need at least one site"));
    }
    let mut rng = XorShift64::new(seed);
    let denom = 1i64 << 31;
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|_| {
            (0..d - 1)
                .map(|_| {
                    let num = rng.below(2 * (denom as u64) + 1) as i64 - denom;
                    Rational::new(num, denom).expect("nonzero denominator")
                })
                .collect()
        })
        .collect();
    Ok(SiteSet {
        sites: Matrix::from_rows_with_cols(rows, d - 1),
        seed,
    })
}

/// `n` lattice points drawn uniformly from `{0,…,5}^d` (duplicates kept).
pub fn random_box(d: usize, n: usize, seed: u64) -> Result<Polytope<Rational>, GenError> {
    if d < 1 || n < 1 {
        return Err(bad("random box needs d ≥ 1 and n ≥ 1"));
    }
    let mut rng = XorShift64::new(seed);
    let mut v = VRep::new(d);
    for _ in 0..n {
        let pt: Vec<Rational> = (0..d)
            .map(|_| Rational::from_integer(rng.below(6) as i64))
            .collect();
        v.push_point(&pt);
    }
    Ok(Polytope::from_vrep(v))
}

/// The fractional matching polytope of `g`: `x_e ≥ 0` for every edge and
/// `Σ_(e at v) x_e ≤ 1` for every node.
pub fn matching_polytope(g: &Graph) -> Polytope<Rational> {
    let d = g.edge_count();
    let mut h = HRep::new(d);
    for i in 0..d {
        let mut row = vec![Rational::zero(); d + 1];
        row[1 + i] = Rational::from(1);
        h.push_inequality(row);
    }
    for v in 0..g.node_count() {
        let mut row = vec![Rational::zero(); d + 1];
        row[0] = Rational::from(1);
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if a == v || b == v {
                row[1 + e] = Rational::from(-1);
            }
        }
        h.push_inequality(row);
    }
    Polytope::from_hrep(h)
}

/// `conv(0, e₁, e₂, e₁+e₂+a·e₃, e₁+e₂+b·e₄, e₁+e₂+c·e₅)` in `ℝ⁵` for
/// pairwise coprime `a, b, c`: a simplex whose only lattice points are its
/// six vertices.
pub fn hard_simplex(a: u64, b: u64, c: u64) -> Result<Polytope<Rational>, GenError> {
    for (x, y) in [(a, b), (a, c), (b, c)] {
        let g = x.gcd(&y);
        if g != 1 {
            return Err(GenError::NotCoprime { a: x, b: y, g });
        }
    }
    let mut v = VRep::new(5);
    let q = |n: u64| Rational::from_integer(n as i64);
    v.push_point(&[q(0), q(0), q(0), q(0), q(0)]);
    v.push_point(&[q(1), q(0), q(0), q(0), q(0)]);
    v.push_point(&[q(0), q(1), q(0), q(0), q(0)]);
    v.push_point(&[q(1), q(1), q(a), q(0), q(0)]);
    v.push_point(&[q(1), q(1), q(0), q(b), q(0)]);
    v.push_point(&[q(1), q(1), q(0), q(0), q(c)]);
    Ok(Polytope::from_vrep(v))
}
