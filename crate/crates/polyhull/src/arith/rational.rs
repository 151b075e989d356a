use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DivisionByZero, ParseScalarError, Scalar};

/// An arbitrary-precision rational number.
///
/// Always stored in lowest terms with a positive denominator; zero is `0/1`.
/// (The wrapped [`BigRational`] maintains exactly these invariants.)
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, DivisionByZero> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// The numerator, provided `self` is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn recip(&self) -> Result<Self, DivisionByZero> {
        if self.0.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Exact integer power; negative exponents invert (error on zero base).
    pub fn pow(&self, exp: i64) -> Result<Self, DivisionByZero> {
        let exp = i32::try_from(exp).expect("exponent magnitude fits i32");
        if exp < 0 && self.0.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(Rational(self.0.pow(exp)))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseScalarError;

    /// Accepts `p` and `p/q` with an optional leading sign, no whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_int = |part: &str| -> Result<BigInt, ParseScalarError> {
            if part.is_empty() {
                return Err(ParseScalarError::new(s, "empty integer"));
            }
            let digits = part.strip_prefix(['+', '-']).unwrap_or(part);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseScalarError::new(s, "expected an integer"));
            }
            BigInt::from_str(part).map_err(|e| ParseScalarError::new(s, e.to_string()))
        };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(parse_int(s)?)),
            Some((num, den)) => {
                let numer = parse_int(num)?;
                let denom = parse_int(den)?;
                if denom.is_zero() {
                    return Err(ParseScalarError::new(s, "zero denominator"));
                }
                Ok(Rational(BigRational::new(numer, denom)))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl Scalar for Rational {
    fn signum(&self) -> i8 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, DivisionByZero> {
        if rhs.0.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(self / rhs)
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v)
    }

    /// Multiplies by `lcm(denominators) / gcd(numerators)`: the unique
    /// positive scaling with coprime integer entries.
    fn canonical_scale_positive(row: &mut [Self]) {
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for v in row.iter() {
            if !v.is_zero() {
                lcm = lcm.lcm(v.denom());
                gcd = gcd.gcd(v.numer());
            }
        }
        if gcd.is_zero() {
            return;
        }
        let factor = Rational(BigRational::new(lcm, gcd));
        for v in row.iter_mut() {
            *v *= &factor;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-40/13", "80/3"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("2/4").to_string(), "1/2");
        assert_eq!(q("-2/-4").to_string(), "1/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!(" 1".parse::<Rational>().is_err());
    }

    #[test]
    fn third_plus_sixth_is_half() {
        assert_eq!(q("1/3") + q("1/6"), q("1/2"));
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(q("7/2").floor(), 3.into());
        assert_eq!(q("7/2").ceil(), 4.into());
        assert_eq!(q("-7/2").floor(), (-4).into());
        assert_eq!(q("-7/2").ceil(), (-3).into());
        assert_eq!(q("5").floor(), 5.into());
    }

    #[test]
    fn canonical_scale_gives_primitive_integer_row() {
        let mut row = vec![q("2"), q("-4"), q("6")];
        Rational::canonical_scale_positive(&mut row);
        assert_eq!(row, vec![q("1"), q("-2"), q("3")]);

        let mut row = vec![q("1/2"), q("1/3"), q("0")];
        Rational::canonical_scale_positive(&mut row);
        assert_eq!(row, vec![q("3"), q("2"), q("0")]);
    }
}
