//! Recursive-descent parser for the textual scalar grammar.
//!
//! ```text
//! scalar   := quotient | sum
//! quotient := '(' sum ')' '/' '(' sum ')'
//! sum      := ['-'] term (('+' | '-') term)*
//! term     := rational ['*' power] | power
//! power    := 't' ['^' exponent]
//! exponent := srational | '(' srational ')'
//! srational:= ['-'] digits ['/' digits]
//! rational := srational
//! ```
//!
//! No whitespace anywhere; `Display` for the scalar types emits exactly this
//! grammar, so parse/print round-trips are bit-exact.

use num_traits::{One, Zero};

use super::{ParseScalarError, PuiseuxFraction, Rational};

pub(super) fn parse_puiseux(input: &str) -> Result<PuiseuxFraction, ParseScalarError> {
    let mut p = Parser {
        input,
        bytes: input.as_bytes(),
        pos: 0,
    };
    let value = p.scalar()?;
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing characters"));
    }
    Ok(value)
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> ParseScalarError {
        ParseScalarError::new(self.input, reason)
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseScalarError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", b as char)))
        }
    }

    fn scalar(&mut self) -> Result<PuiseuxFraction, ParseScalarError> {
        if self.peek() == Some(b'(') {
            // `(sum)` or `(sum)/(sum)`.
            self.expect(b'(')?;
            let num = self.sum()?;
            self.expect(b')')?;
            if self.eat(b'/') {
                self.expect(b'(')?;
                let den = self.sum()?;
                self.expect(b')')?;
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                return Ok(num / den);
            }
            return Ok(num);
        }
        self.sum()
    }

    fn sum(&mut self) -> Result<PuiseuxFraction, ParseScalarError> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PuiseuxFraction, ParseScalarError> {
        if self.peek() == Some(b't') {
            return self.power(Rational::one());
        }
        let coeff = self.rational()?;
        if self.eat(b'*') {
            self.power(coeff)
        } else {
            Ok(PuiseuxFraction::from_rational(coeff))
        }
    }

    fn power(&mut self, coeff: Rational) -> Result<PuiseuxFraction, ParseScalarError> {
        self.expect(b't')?;
        let exp = if self.eat(b'^') {
            if self.eat(b'(') {
                let e = self.rational()?;
                self.expect(b')')?;
                e
            } else {
                self.rational()?
            }
        } else {
            Rational::one()
        };
        Ok(PuiseuxFraction::monomial(coeff, exp))
    }

    fn rational(&mut self) -> Result<Rational, ParseScalarError> {
        let negative = self.eat(b'-');
        let numer = self.digits()?;
        let value = if self.eat(b'/') {
            let denom = self.digits()?;
            Rational::new(numer, denom).map_err(|_| self.err("zero denominator"))?
        } else {
            Rational::from_integer(numer)
        };
        Ok(if negative { -value } else { value })
    }

    fn digits(&mut self) -> Result<num_bigint::BigInt, ParseScalarError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }
}
