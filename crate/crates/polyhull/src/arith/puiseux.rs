use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use super::{DivisionByZero, ParseScalarError, Rational, Scalar};

/// A sparse univariate series: finitely many terms `coeff * t^exp` with
/// rational coefficients *and* rational exponents, kept sorted by strictly
/// increasing exponent, no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Series {
    /// `(exponent, coefficient)` pairs, exponents strictly increasing.
    terms: Vec<(Rational, Rational)>,
}

impl Series {
    pub(crate) fn zero() -> Self {
        Series { terms: Vec::new() }
    }

    pub(crate) fn constant(c: Rational) -> Self {
        Series::monomial(c, Rational::zero())
    }

    pub(crate) fn monomial(coeff: Rational, exp: Rational) -> Self {
        if coeff.is_zero() {
            Series::zero()
        } else {
            Series {
                terms: vec![(exp, coeff)],
            }
        }
    }

    /// Builds a series from arbitrary `(exponent, coefficient)` pairs,
    /// combining duplicates and dropping zeros.
    pub(crate) fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let mut terms: Vec<(Rational, Rational)> = terms.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(terms.len());
        for (exp, coeff) in terms {
            match out.last_mut() {
                Some(last) if last.0 == exp => last.1 += &coeff,
                _ => out.push((exp, coeff)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Series { terms: out }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    pub(crate) fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    /// Lowest exponent; `None` for the zero series.
    fn min_exp(&self) -> Option<&Rational> {
        self.terms.first().map(|(e, _)| e)
    }

    fn lowest_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    fn leading(&self) -> Option<&(Rational, Rational)> {
        self.terms.last()
    }

    /// Multiply by `t^shift`.
    fn shift(&self, shift: &Rational) -> Self {
        if shift.is_zero() {
            return self.clone();
        }
        Series {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone() + shift, c.clone()))
                .collect(),
        }
    }

    fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Series::zero();
        }
        Series {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * factor))
                .collect(),
        }
    }

    fn neg(&self) -> Self {
        Series {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.clone() + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Series { terms: out }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        let mut acc = Series::zero();
        for (e, c) in &self.terms {
            let partial = Series {
                terms: other
                    .terms
                    .iter()
                    .map(|(oe, oc)| (oe.clone() + e, oc.clone() * c))
                    .collect(),
            };
            acc = acc.add(&partial);
        }
        acc
    }

    /// Long division by the leading (highest-exponent) term: returns
    /// `(quotient, remainder)` with `deg(remainder) < deg(divisor)`.
    ///
    /// Exponents may be arbitrary rationals; they all live in the lattice
    /// `(1/D)Z` spanned by the inputs, so the degree drops by at least `1/D`
    /// per step and the loop terminates.
    fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "series division by zero");
        let mut rem = self.clone();
        let mut quot = Series::zero();
        let (dexp, dcoeff) = divisor.leading().unwrap().clone();
        while let Some((rexp, rcoeff)) = rem.leading().cloned() {
            if rexp < dexp {
                break;
            }
            let q = Series::monomial(rcoeff / &dcoeff, rexp - &dexp);
            rem = rem.sub(&q.mul(divisor));
            quot = quot.add(&q);
        }
        (quot, rem)
    }

    fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact series division");
        q
    }

    /// Monic (leading coefficient 1) greatest common divisor via the
    /// Euclidean algorithm. Inputs must be nonzero with minimum exponent 0.
    fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        let lead = a.leading().expect("gcd of nonzero series").1.clone();
        a.scale(&lead.recip().expect("leading coefficient nonzero"))
    }
}

/// A univariate rational function in an infinitesimal `t`: a quotient of two
/// sparse term lists with rational coefficients and rational exponents.
///
/// The field is ordered by behaviour as `t -> 0+`, so `0 < t < q` for every
/// positive rational `q`. Values are kept in a canonical reduced form:
///
/// * numerator and denominator share no nonconstant factor,
/// * the denominator's lowest term is `1 * t^0`,
///
/// which makes `==`, `Ord` and `Hash` agree with field semantics.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PuiseuxFraction {
    num: Series,
    den: Series,
}

/// Error from [`PuiseuxFraction::evaluate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvaluateError {
    #[error("cannot evaluate: term exponent {0} is not an integer")]
    NonIntegerExponent(Rational),
    #[error("pole: denominator vanishes at t = {0}")]
    Pole(Rational),
    #[error("cannot evaluate at negative point t = {0}")]
    NegativePoint(Rational),
}

impl PuiseuxFraction {
    fn reduced(num: Series, den: Series) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return PuiseuxFraction {
                num: Series::zero(),
                den: Series::constant(Rational::one()),
            };
        }
        let num_shift = num.min_exp().unwrap().clone();
        let den_shift = den.min_exp().unwrap().clone();
        let num0 = num.shift(&-num_shift.clone());
        let den0 = den.shift(&-den_shift.clone());
        let g = Series::gcd(&num0, &den0);
        let mut num1 = num0.div_exact(&g);
        let den1 = den0.div_exact(&g);
        // Reapply the net power of t on the numerator side.
        num1 = num1.shift(&(num_shift - &den_shift));
        // Make the denominator's lowest term monic.
        let c = den1.lowest_coeff().unwrap().clone();
        let inv = c.recip().expect("lowest coefficient nonzero");
        PuiseuxFraction {
            num: num1.scale(&inv),
            den: den1.scale(&inv),
        }
    }

    /// Builds `num / den` from raw `(exponent, coefficient)` term lists.
    pub fn new(
        num: impl IntoIterator<Item = (Rational, Rational)>,
        den: impl IntoIterator<Item = (Rational, Rational)>,
    ) -> Result<Self, DivisionByZero> {
        let num = Series::from_terms(num);
        let den = Series::from_terms(den);
        if den.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(PuiseuxFraction::reduced(num, den))
    }

    /// The polynomial with the given `(exponent, coefficient)` terms.
    pub fn polynomial(terms: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        PuiseuxFraction::reduced(Series::from_terms(terms), Series::constant(Rational::one()))
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        PuiseuxFraction::monomial(Rational::one(), Rational::one())
    }

    /// `coeff * t^exp`.
    pub fn monomial(coeff: Rational, exp: Rational) -> Self {
        PuiseuxFraction::reduced(
            Series::monomial(coeff, exp),
            Series::constant(Rational::one()),
        )
    }

    pub fn from_rational(c: Rational) -> Self {
        PuiseuxFraction::monomial(c, Rational::zero())
    }

    /// Numerator terms `(exponent, coefficient)` in increasing exponent order.
    pub fn numer_terms(&self) -> &[(Rational, Rational)] {
        self.num.terms()
    }

    /// Denominator terms; the first one is always `(e, 1)` with `e = 0`.
    pub fn denom_terms(&self) -> &[(Rational, Rational)] {
        self.den.terms()
    }

    /// True when the value is a plain rational (both sides constant).
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.is_zero() {
            return Some(Rational::zero());
        }
        let den_const = self.den.terms().len() == 1 && self.den.terms()[0].0.is_zero();
        let num_const = self.num.terms().len() == 1 && self.num.terms()[0].0.is_zero();
        (num_const && den_const)
            .then(|| self.num.terms()[0].1.clone() / &self.den.terms()[0].1)
    }

    pub fn recip(&self) -> Result<Self, DivisionByZero> {
        if self.num.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(PuiseuxFraction::reduced(
            self.den.clone(),
            self.num.clone(),
        ))
    }

    /// Exact substitution `t := t0`.
    ///
    /// Requires every exponent to be an integer and `t0 >= 0`; at `t0 = 0`
    /// additionally every numerator exponent must be nonnegative (the
    /// canonical denominator never vanishes at 0).
    pub fn evaluate(&self, t0: &Rational) -> Result<Rational, EvaluateError> {
        if t0.signum() < 0 {
            return Err(EvaluateError::NegativePoint(t0.clone()));
        }
        for (e, _) in self.num.terms().iter().chain(self.den.terms()) {
            if !e.is_integer() {
                return Err(EvaluateError::NonIntegerExponent(e.clone()));
            }
        }
        let eval = |s: &Series| -> Result<Rational, EvaluateError> {
            let mut acc = Rational::zero();
            for (e, c) in s.terms() {
                let e = i64::try_from(e.to_integer().unwrap()).expect("exponent fits i64");
                if t0.is_zero() {
                    match e.cmp(&0) {
                        Ordering::Less => return Err(EvaluateError::Pole(t0.clone())),
                        Ordering::Equal => acc += c,
                        Ordering::Greater => {}
                    }
                } else {
                    acc += &(t0.pow(e).expect("nonzero base") * c);
                }
            }
            Ok(acc)
        };
        let den = eval(&self.den)?;
        if den.is_zero() {
            return Err(EvaluateError::Pole(t0.clone()));
        }
        Ok(eval(&self.num)? / den)
    }
}

impl From<Rational> for PuiseuxFraction {
    fn from(c: Rational) -> Self {
        PuiseuxFraction::from_rational(c)
    }
}

impl Zero for PuiseuxFraction {
    fn zero() -> Self {
        PuiseuxFraction {
            num: Series::zero(),
            den: Series::constant(Rational::one()),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for PuiseuxFraction {
    fn one() -> Self {
        PuiseuxFraction::from_rational(Rational::one())
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

macro_rules! puiseux_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&PuiseuxFraction> for &PuiseuxFraction {
            type Output = PuiseuxFraction;
            fn $method(self, rhs: &PuiseuxFraction) -> PuiseuxFraction {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait for PuiseuxFraction {
            type Output = PuiseuxFraction;
            fn $method(self, rhs: PuiseuxFraction) -> PuiseuxFraction {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&PuiseuxFraction> for PuiseuxFraction {
            type Output = PuiseuxFraction;
            fn $method(self, rhs: &PuiseuxFraction) -> PuiseuxFraction {
                $trait::$method(&self, rhs)
            }
        }
    };
}

puiseux_binop!(Add, add, |a, b| PuiseuxFraction::reduced(
    a.num.mul(&b.den).add(&b.num.mul(&a.den)),
    a.den.mul(&b.den),
));
puiseux_binop!(Sub, sub, |a, b| PuiseuxFraction::reduced(
    a.num.mul(&b.den).sub(&b.num.mul(&a.den)),
    a.den.mul(&b.den),
));
puiseux_binop!(Mul, mul, |a, b| PuiseuxFraction::reduced(
    a.num.mul(&b.num),
    a.den.mul(&b.den),
));
puiseux_binop!(Div, div, |a, b| {
    assert!(!b.num.is_zero(), "division by zero");
    PuiseuxFraction::reduced(a.num.mul(&b.den), a.den.mul(&b.num))
});

impl Neg for PuiseuxFraction {
    type Output = PuiseuxFraction;
    fn neg(self) -> PuiseuxFraction {
        PuiseuxFraction {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl PartialOrd for PuiseuxFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PuiseuxFraction {
    /// Ordering as `t -> 0+`: the sign of `self - other` is the sign of the
    /// lowest-exponent coefficient of the normalized difference.
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let diff = self - other;
        match diff.signum() {
            s if s < 0 => Ordering::Less,
            s if s > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

impl Scalar for PuiseuxFraction {
    /// Sign as `t -> 0+`: the canonical denominator is positive near 0, so
    /// this is the sign of the numerator's lowest coefficient.
    fn signum(&self) -> i8 {
        match self.num.lowest_coeff() {
            None => 0,
            Some(c) => c.signum(),
        }
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, DivisionByZero> {
        if rhs.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(self / rhs)
    }

    fn from_i64(v: i64) -> Self {
        PuiseuxFraction::from_rational(Rational::from_integer(v))
    }

    /// Divides the row by the absolute value of its first nonzero entry, the
    /// unique positive scaling after which that entry is `1` or `-1`.
    fn canonical_scale_positive(row: &mut [Self]) {
        let Some(first) = row.iter().find(|v| !v.is_zero()) else {
            return;
        };
        let factor = Scalar::abs(first)
            .recip()
            .expect("first nonzero entry is invertible");
        for v in row.iter_mut() {
            let scaled = std::mem::replace(v, PuiseuxFraction::zero()) * &factor;
            *v = scaled;
        }
    }
}

impl fmt::Display for PuiseuxFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write_series(f, &self.num)
        } else {
            write!(f, "(")?;
            write_series(f, &self.num)?;
            write!(f, ")/(")?;
            write_series(f, &self.den)?;
            write!(f, ")")
        }
    }
}

fn write_series(f: &mut fmt::Formatter<'_>, s: &Series) -> fmt::Result {
    if s.is_zero() {
        return write!(f, "0");
    }
    for (i, (exp, coeff)) in s.terms().iter().enumerate() {
        let neg = coeff.signum() < 0;
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { "-" } else { "+" })?;
        }
        let mag = Scalar::abs(coeff);
        if exp.is_zero() {
            write!(f, "{mag}")?;
            continue;
        }
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        if exp.is_one() {
            write!(f, "t")?;
        } else if exp.is_integer() && exp.signum() > 0 {
            write!(f, "t^{exp}")?;
        } else {
            write!(f, "t^({exp})")?;
        }
    }
    Ok(())
}

impl FromStr for PuiseuxFraction {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_puiseux(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(s: &str) -> PuiseuxFraction {
        s.parse().unwrap()
    }

    #[test]
    fn one_minus_t_squared() {
        let f = p("1-t");
        assert_eq!(f.clone() * &f, p("1-2*t+t^2"));
    }

    #[test]
    fn long_division_cancels() {
        assert_eq!(p("1-2*t+t^2") / p("1-t"), p("1-t"));
        assert_eq!(p("1-t^2") / p("1+t"), p("1-t"));
    }

    #[test]
    fn t_is_smaller_than_every_positive_rational() {
        assert!(PuiseuxFraction::t() < p("1/2"));
        assert!(PuiseuxFraction::t() > PuiseuxFraction::zero());
        assert!(p("t^2") < PuiseuxFraction::t());
    }

    #[test]
    fn evaluate_polynomial() {
        assert_eq!(p("1-2*t+t^2").evaluate(&q("1/4")).unwrap(), q("9/16"));
        assert_eq!(p("1-2*t+t^2").evaluate(&q("0")).unwrap(), q("1"));
        assert!(matches!(
            p("(t)/(1-t)").evaluate(&q("1")),
            Err(EvaluateError::Pole(_))
        ));
    }

    #[test]
    fn rational_exponents_are_ordered_but_not_evaluable() {
        let sqrt_t = PuiseuxFraction::monomial(q("1"), q("1/2"));
        assert!(sqrt_t > PuiseuxFraction::t());
        assert!(sqrt_t < p("1/1000"));
        assert!(matches!(
            sqrt_t.evaluate(&q("4")),
            Err(EvaluateError::NonIntegerExponent(_))
        ));
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "0",
            "1",
            "-t",
            "1-2*t+t^2",
            "3/2*t",
            "t^(1/2)",
            "(1-t)/(1+t)",
            "t^3-5",
            "(t)/(1-t)",
        ] {
            let v = p(s);
            assert_eq!(p(&v.to_string()), v, "round trip of {s}");
        }
        assert_eq!(p("1-2*t+t^2").to_string(), "1-2*t+t^2");
        assert_eq!(p("(1-t^2)/(1+t)").to_string(), "1-t");
    }

    #[test]
    fn reduction_is_structural_equality() {
        assert_eq!(p("(1-t^2)/(1+t)"), p("1-t"));
        assert_eq!(p("(2-2*t)/(2)"), p("1-t"));
        assert_ne!(p("(1-t)/(1+t)"), p("1-t"));
    }
}
