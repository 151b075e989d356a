//! Point insertion orders for the incremental hull algorithms. The order
//! never changes the computed hull, but it can change the intermediate sizes
//! and the triangulation, which is why the benchmark harness sweeps it.

use std::fmt;
use std::str::FromStr;

use crate::arith::Scalar;
use crate::linalg::{lex_cmp, Matrix};
use crate::poly::irredundant_points;
use crate::rng::XorShift64;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InsertionOrder {
    /// Keep the input order.
    Given,
    /// Fisher–Yates shuffle, fully determined by the seed.
    Random(u64),
    /// Hull vertices first (in input order), redundant points after.
    VerticesFirst,
    /// Lexicographically sorted.
    Lex,
}

impl fmt::Display for InsertionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InsertionOrder::Given => write!(f, "given"),
            InsertionOrder::Random(seed) => write!(f, "random:{seed}"),
            InsertionOrder::VerticesFirst => write!(f, "vertices-first"),
            InsertionOrder::Lex => write!(f, "lex"),
        }
    }
}

/// Unrecognized insertion order selector.
#[derive(Clone, Debug, thiserror::Error)]
#[error("unknown insertion order {0:?}; expected given|random:<seed>|vertices-first|lex")]
pub struct ParseOrderError(pub String);

impl FromStr for InsertionOrder {
    type Err = ParseOrderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "given" => return Ok(InsertionOrder::Given),
            "vertices-first" => return Ok(InsertionOrder::VerticesFirst),
            "lex" => return Ok(InsertionOrder::Lex),
            _ => {}
        }
        if let Some(seed) = s.strip_prefix("random:") {
            if let Ok(seed) = seed.parse::<u64>() {
                return Ok(InsertionOrder::Random(seed));
            }
        }
        Err(ParseOrderError(s.to_string()))
    }
}

/// Returns the rows of `points` (plain coordinate rows, no leading 1)
/// permuted according to `order`.
pub fn apply_order<S: Scalar>(points: &Matrix<S>, order: InsertionOrder) -> Matrix<S> {
    match order {
        InsertionOrder::Given => points.clone(),
        InsertionOrder::Random(seed) => {
            let mut perm: Vec<usize> = (0..points.rows()).collect();
            XorShift64::new(seed).shuffle(&mut perm);
            points.select_rows(&perm)
        }
        InsertionOrder::Lex => {
            let mut rows = points.to_row_vecs();
            rows.sort_by(|a, b| lex_cmp(a, b));
            Matrix::from_rows_with_cols(rows, points.cols())
        }
        InsertionOrder::VerticesFirst => {
            let keep = irredundant_points(points);
            let mut is_vertex = vec![false; points.rows()];
            for &i in &keep {
                is_vertex[i] = true;
            }
            let mut perm = keep;
            perm.extend((0..points.rows()).filter(|&i| !is_vertex[i]));
            points.select_rows(&perm)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    fn pts(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn parse_round_trip() {
        for s in ["given", "random:7", "vertices-first", "lex"] {
            let o: InsertionOrder = s.parse().unwrap();
            assert_eq!(o.to_string(), s);
        }
        assert!("random:x".parse::<InsertionOrder>().is_err());
        assert!("sorted".parse::<InsertionOrder>().is_err());
    }

    #[test]
    fn given_is_identity_and_random_is_reproducible() {
        let m = pts(&[&[3, 1], &[0, 0], &[2, 2], &[1, 5]]);
        assert_eq!(apply_order(&m, InsertionOrder::Given), m);
        let a = apply_order(&m, InsertionOrder::Random(7));
        let b = apply_order(&m, InsertionOrder::Random(7));
        assert_eq!(a, b);
        let mut sorted_a = a.to_row_vecs();
        sorted_a.sort_by(|x, y| lex_cmp(x, y));
        let mut sorted_m = m.to_row_vecs();
        sorted_m.sort_by(|x, y| lex_cmp(x, y));
        assert_eq!(sorted_a, sorted_m);
    }

    #[test]
    fn lex_sorts_rows() {
        let m = pts(&[&[3, 1], &[0, 7], &[0, 0]]);
        let s = apply_order(&m, InsertionOrder::Lex);
        assert_eq!(s, pts(&[&[0, 0], &[0, 7], &[3, 1]]));
    }
}
