//! Exact scalar types and the [`Scalar`] trait the geometry is generic over.
//!
//! Two ordered fields are provided:
//!
//! * [`Rational`] — arbitrary-precision rationals.
//! * [`PuiseuxFraction`] — univariate rational functions in an infinitesimal
//!   `t` with rational coefficients and rational exponents, ordered by their
//!   sign as `t -> 0+`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

mod parse;
mod puiseux;
mod rational;

pub use puiseux::{EvaluateError, PuiseuxFraction};
pub use rational::Rational;

/// Error when a textual scalar cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar `{input}`: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: String,
}

impl ParseScalarError {
    fn new(input: impl Into<String>, reason: impl Into<String>) -> Self {
        ParseScalarError {
            input: input.into(),
            reason: reason.into(),
        }
    }
}

/// Division by zero, reported as a value instead of a panic where the caller
/// can reasonably continue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("division by zero")]
pub struct DivisionByZero;

/// An exact ordered field with a canonical row scaling.
///
/// `Ord` must be the field order (so `a < b` iff `b - a` is positive) and
/// `Eq`/`Hash` must agree with it, which forces normalized representations.
/// The by-reference `Add`/`Sub`/`Mul` bounds keep generic inner loops from
/// cloning both operands.
pub trait Scalar:
    Sized
    + Clone
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + FromStr<Err = ParseScalarError>
    + Zero
    + One
    + Send
    + Sync
    + 'static
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// -1, 0 or +1.
    fn signum(&self) -> i8;

    /// Division that reports a zero divisor instead of panicking.
    fn try_div(&self, rhs: &Self) -> Result<Self, DivisionByZero>;

    fn from_i64(v: i64) -> Self;

    /// Scale `row` by a *positive* factor into the canonical representative
    /// of its positive ray: primitive integer entries for rationals, first
    /// nonzero entry of absolute value one for Puiseux fractions.
    ///
    /// Zero rows are left untouched. Orientation is preserved, which is what
    /// inequality rows and rays need.
    fn canonical_scale_positive(row: &mut [Self]);

    /// Like [`Scalar::canonical_scale_positive`] but additionally flips the
    /// sign so the first nonzero entry is positive. For rows whose sign is
    /// meaningless: equations and lineality generators.
    fn canonical_scale_signed(row: &mut [Self]) {
        Self::canonical_scale_positive(row);
        if let Some(first) = row.iter().find(|v| !v.is_zero()) {
            if first.signum() < 0 {
                for v in row.iter_mut() {
                    let flipped = -std::mem::replace(v, Self::zero());
                    *v = flipped;
                }
            }
        }
    }

    fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

/// Dot product of two equal-length slices.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y;
        }
    }
    acc
}
