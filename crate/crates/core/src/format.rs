//! Text forms shared with the command line: rationals as `"p/q"` in lowest
//! terms, matrices as `{rows, cols, entries}` with row-major entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Canonical `"p/q"` form, denominator positive, `q = 1` written out.
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `"p/q"` and plain integers `"p"`; the result is reduced.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("{s:?} is not a rational of the form p/q"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("{s:?} has zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

/// Serialized matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &Matrix<BigRational>) -> Self {
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(format_rational).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix<BigRational>> {
        let entries = self
            .entries
            .iter()
            .map(|e| parse_rational(e))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(self.rows, self.cols, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(format_rational(&parse_rational("4/-6").unwrap()), "-2/3");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7/1");
        assert_eq!(format_rational(&parse_rational("0/5").unwrap()), "0/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let doc = MatrixDoc { rows: 1, cols: 2, entries: vec!["1/2".into(), "-3/1".into()] };
        assert_eq!(MatrixDoc::from_matrix(&doc.to_matrix().unwrap()), doc);
        let short = MatrixDoc { rows: 2, cols: 2, entries: vec!["1/1".into()] };
        assert!(short.to_matrix().is_err());
    }
}
