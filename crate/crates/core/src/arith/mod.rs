//! Numeric and exact arithmetic shared by every stage of the pipeline.

pub mod complex;
pub mod linalg;
pub mod matrix;
pub mod multipoly;
pub mod real;
pub mod system;
pub mod unipoly;

pub use complex::{BigComplex, Scalar};
pub use linalg::{floor_int, solve_linear, solve_linear_complex};
pub use matrix::IntMatrix;
pub use multipoly::{eval_multipoly, MultiPoly};
pub use real::BigReal;
pub use system::{CompiledSystem, PolySystem};
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Parses `"p/q"`, `"n"` or a terminating decimal such as `"-2.5"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigInt = format!("{ip}{fp}").parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        return Ok(BigRational::new(n, d));
    }
    Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?))
}

/// `"p/q"`, or `"n"` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        let q = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7");
        assert_eq!(format_rational(&parse_rational("-2.5").unwrap()), "-5/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
