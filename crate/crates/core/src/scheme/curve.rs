use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{format_rational, parse_rational, IntMatrix, UniPoly};
use crate::error::{Error, Result};

/// `y^2 = f(x)` with `f` monic of degree 7 or 8 and squarefree.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperellipticCurve {
    // a_0 .. a_d ascending, a_d = 1
    coeffs: Vec<BigRational>,
    label: Option<String>,
}

impl HyperellipticCurve {
    /// Coefficients from the leading term down to the constant.
    pub fn new(descending: Vec<BigRational>) -> Result<Self> {
        let d = descending.len().checked_sub(1).ok_or_else(|| Error::InvalidCurve("no coefficients".into()))?;
        if d != 7 && d != 8 {
            return Err(Error::InvalidCurve(format!("degree {d}, expected 7 or 8")));
        }
        if !descending[0].is_one() {
            return Err(Error::InvalidCurve(format!(
                "leading coefficient {} (f must be monic)",
                format_rational(&descending[0])
            )));
        }
        let coeffs: Vec<BigRational> = descending.into_iter().rev().collect();
        let curve = HyperellipticCurve { coeffs, label: None };
        if curve.discriminant_resultant().is_zero() {
            return Err(Error::InvalidCurve("f is not squarefree".into()));
        }
        Ok(curve)
    }

    pub fn from_i64(descending: &[i64]) -> Result<Self> {
        Self::new(descending.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_strings<S: AsRef<str>>(descending: &[S]) -> Result<Self> {
        Self::new(descending.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<_>>()?)
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_odd(&self) -> bool {
        self.degree() == 7
    }

    /// Coefficient of `x^i`.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn ascending(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<BigRational> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Least common denominator of the coefficients.
    pub fn denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    /// `denominator() * f` as an integer polynomial in `x`.
    pub fn integer_model(&self) -> UniPoly {
        let den = BigRational::from_integer(self.denominator());
        UniPoly::new(self.coeffs.iter().map(|c| (c * &den).to_integer()).collect(), "x")
    }

    /// Resultant of the integer model and its derivative.
    pub fn discriminant_resultant(&self) -> BigInt {
        let p = self.integer_model();
        resultant(&p, &p.derivative())
    }
}

impl fmt::Display for HyperellipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("y^2 = ")?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let m = if mag.is_one() && i > 0 { String::new() } else { format_rational(&mag) };
            match i {
                0 => f.write_str(&format_rational(&mag))?,
                1 => write!(f, "{m}x")?,
                _ => write!(f, "{m}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Resultant via the Sylvester determinant.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> BigInt {
    if p.is_zero() || q.is_zero() {
        return BigInt::zero();
    }
    let (m, n) = (p.degree(), q.degree());
    if m + n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    let pd = p.descending();
    let qd = q.descending();
    for r in 0..n {
        for (k, c) in pd.iter().enumerate() {
            s.set(r, r + k, c.clone());
        }
    }
    for r in 0..m {
        for (k, c) in qd.iter().enumerate() {
            s.set(n + r, r + k, c.clone());
        }
    }
    s.determinant()
}
