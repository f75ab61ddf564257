//! Dense univariate polynomials over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::complex::BigComplex;
use super::multipoly::{int_mod, mulmod};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    // ascending powers; the last entry is nonzero unless the polynomial is zero
    coeffs: Vec<BigInt>,
    var: String,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>, var: &str) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs, var: var.to_string() }
    }

    pub fn from_i64(coeffs: &[i64], var: &str) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), var)
    }

    /// Coefficients listed from the leading term down to the constant.
    pub fn from_descending(coeffs: &[BigInt], var: &str) -> Self {
        Self::new(coeffs.iter().rev().cloned().collect(), var)
    }

    /// Parses the [`Display`](fmt::Display) form, e.g. `"u^6 + 4u^4 - 8u^2 + 12"`.
    /// `*` between a coefficient and the variable is accepted.
    pub fn parse(s: &str, var: &str) -> crate::error::Result<Self> {
        let bad = |why: &str| crate::error::Error::Parse(format!("bad polynomial {s:?}: {why}"));
        let text: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if text.is_empty() {
            return Err(bad("empty"));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let neg = rest.starts_with('-');
            if neg || rest.starts_with('+') {
                rest = &rest[1..];
            }
            let end = rest[1.min(rest.len())..].find(['+', '-']).map_or(rest.len(), |i| i + 1);
            let (term, tail) = rest.split_at(end);
            rest = tail;
            let (c, e) = match term.find(var) {
                None => (term.parse::<BigInt>().map_err(|_| bad(term))?, 0usize),
                Some(i) => {
                    let c = if i == 0 { BigInt::one() } else { term[..i].parse::<BigInt>().map_err(|_| bad(term))? };
                    let after = &term[i + var.len()..];
                    let e = match after.strip_prefix('^') {
                        Some(x) => x.parse::<usize>().map_err(|_| bad(term))?,
                        None if after.is_empty() => 1,
                        None => return Err(bad(term)),
                    };
                    (c, e)
                }
            };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += if neg { -c } else { c };
        }
        Ok(Self::new(coeffs, var))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        UniPoly { coeffs: self.coeffs.iter().map(|c| c / &g).collect(), var: self.var.clone() }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        UniPoly::new(coeffs, &self.var)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: &BigComplex) -> BigComplex {
        let d = z.digits();
        self.coeffs
            .iter()
            .rev()
            .fold(BigComplex::zero(d), |acc, c| &(&acc * z) + &BigComplex::from_real(super::real::BigReal::from_bigint(c, d)))
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        self.coeffs.iter().rev().fold(0u64, |acc, c| (mulmod(acc, x % p, p) + int_mod(c, p)) % p)
    }

    /// All roots in F_p by exhaustive search.
    pub fn roots_mod(&self, p: u64) -> Vec<u64> {
        (0..p).filter(|&r| self.eval_mod(r, p) == 0).collect()
    }

    /// Complex roots by simultaneous (Aberth) iteration in double precision.
    pub fn roots_c64(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let lc = self.leading().to_f64().unwrap_or(f64::NAN);
        let a: Vec<f64> = self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN) / lc).collect();
        let radius = 1.0 + a[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
                Complex64::from_polar(radius.min(1e6).powf(0.5), ang)
            })
            .collect();
        let eval = |x: Complex64| -> (Complex64, Complex64) {
            let mut p = Complex64::new(1.0, 0.0);
            let mut dp = Complex64::new(0.0, 0.0);
            for c in a[..n].iter().rev() {
                dp = dp * x + p;
                p = p * x + c;
            }
            (p, dp)
        };
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for i in 0..n {
                let (p, dp) = eval(z[i]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
                let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
                if w.is_finite() {
                    z[i] -= w;
                    moved = moved.max(w.norm() / (1.0 + z[i].norm()));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        z
    }

    /// Complex roots refined by Newton's method to `digits`.
    pub fn roots(&self, digits: u32) -> Vec<BigComplex> {
        let d = self.derivative();
        self.roots_c64()
            .into_iter()
            .map(|z0| {
                let mut z = BigComplex::from_c64(z0, digits + 10);
                for _ in 0..64 {
                    let step = &self.eval_complex(&z) / &d.eval_complex(&z);
                    z = &z - &step;
                    if step.is_zero() || step.log10_norm_inf() - z.log10_norm_inf().max(0.0) < -(digits as f64) - 5.0 {
                        break;
                    }
                }
                z.with_digits(digits)
            })
            .collect()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coeff}{}", self.var)?,
                _ => write!(f, "{coeff}{}^{i}", self.var)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let p = UniPoly::from_i64(&[12, 0, -8, 0, 4, 0, 1], "u");
        assert_eq!(p.to_string(), "u^6 + 4u^4 - 8u^2 + 12");
        assert_eq!(UniPoly::from_i64(&[-3, 7], "x").to_string(), "7x - 3");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["u^6 + 4u^4 - 8u^2 + 12", "-u^5 - u^3 - u + 6", "7u - 3", "-1", "u"] {
            assert_eq!(UniPoly::parse(text, "u").unwrap().to_string(), text);
        }
        assert_eq!(UniPoly::parse("2*u^2+u^2 -1", "u").unwrap().to_string(), "3u^2 - 1");
        assert!(UniPoly::parse("u^x", "u").is_err());
        assert!(UniPoly::parse("", "u").is_err());
    }

    #[test]
    fn primitive_normalizes() {
        let p = UniPoly::from_i64(&[6, -4, -2], "x").primitive();
        assert_eq!(p.coeffs(), UniPoly::from_i64(&[-3, 2, 1], "x").coeffs());
    }

    #[test]
    fn roots_of_published_octic() {
        let p = UniPoly::from_i64(&[-1323, 0, -648, 0, -126, 0, 0, 0, 1], "u");
        let rs = p.roots(120);
        assert_eq!(rs.len(), 8);
        for r in &rs {
            let v = p.eval_complex(r);
            assert!(v.log10_norm_inf() < -100.0, "{}", v.log10_norm_inf());
        }
    }

    #[test]
    fn modular_roots() {
        // x^2 - 2 has roots 3, 4 mod 7
        let p = UniPoly::from_i64(&[-2, 0, 1], "x");
        assert_eq!(p.roots_mod(7), vec![3, 4]);
    }
}
