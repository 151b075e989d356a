//! Exact polyhedral geometry: convex hulls, linear programming, lattice-point
//! enumeration and Hilbert bases over arbitrary-precision rationals and
//! univariate Puiseux fractions.
//!
//! Everything in this crate computes exactly; there is no floating point.
//! The geometric core is generic over [`arith::Scalar`], so the same convex
//! hull code runs over plain rationals and over Puiseux fractions (rational
//! functions in an infinitesimal `t`, ordered by their behaviour as `t -> 0+`).
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`] — scalar types: [`arith::Rational`], [`arith::PuiseuxFraction`].
//! * [`linalg`] — dense exact linear algebra (solve, rank, kernel, det).
//! * [`poly`] — polytope representations ([`poly::HRep`], [`poly::VRep`],
//!   [`poly::Polytope`]), canonical forms, the `.poly` text format, and
//!   LP-based redundancy removal.
//! * [`lp`] — exact primal simplex over an `HRep`.
//! * [`hull`] — double description and beneath-and-beyond convex hulls,
//!   placing triangulations, exact volume.
//! * [`lattice`] — lattice-point enumeration (bounding box, projection,
//!   0/1 DFS, via Hilbert bases) and integer hulls.
//! * [`hilbert`] — Hilbert bases of pointed rational cones.
//! * [`gen`] — generators for the polytope families used by the test suite
//!   and the CLI: knapsacks, cut polytopes, Klee-Minty cubes, lifted Voronoi
//!   diagrams, matching polytopes, random boxes.

pub mod arith;
pub mod gen;
pub mod hilbert;
pub mod hull;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod poly;
pub(crate) mod rng;
