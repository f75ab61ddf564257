//! Minimal polynomials and linear relations from lattice short vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::enumerate::shortest_row_vector;
use super::lattice::{build_minpoly_lattice, build_relation_lattice, LatticeProblem};
use crate::arith::{BigComplex, BigReal, UniPoly};
use crate::error::{Error, Result};

/// Shortest vectors must be this many times shorter than `det^(1/n)`.
pub const HERMITE_FACTOR: u32 = 1000;

/// Default scaling exponent `k' = k - 50`.
pub fn default_kprime(k: u32) -> u32 {
    k.saturating_sub(50)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinPolyResult {
    pub poly: UniPoly,
    pub degree: usize,
    /// `-log10 |poly(theta)|`.
    pub quality: f64,
    /// Squared length of the accepted lattice vector.
    pub norm2: BigInt,
}

/// `den * alpha_j = coeffs[0] + coeffs[1] u + .. + coeffs[d-1] u^(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub target: usize,
    pub den: BigInt,
    pub coeffs: Vec<BigInt>,
}

impl Relation {
    /// `den * beta - sum coeffs[i] theta^i`.
    pub fn defect(&self, theta: &BigComplex, beta: &BigComplex) -> BigComplex {
        let d = theta.digits().min(beta.digits());
        let poly = UniPoly::new(self.coeffs.clone(), "u");
        let lhs = beta * &BigComplex::from_real(BigReal::from_bigint(&self.den, d));
        &lhs - &poly.eval_complex(&theta.with_digits(d))
    }

    /// Parses `"p"`, `"(p)/den"` or `"-(p)/den"` with `p` a polynomial in `u`.
    pub fn parse(target: usize, s: &str) -> Result<Relation> {
        let t = s.trim();
        let bad = || Error::Parse(format!("bad relation {s:?}"));
        let (neg, t) = match t.strip_prefix('-') {
            Some(r) if r.trim_start().starts_with('(') => (true, r.trim_start()),
            _ => (false, t),
        };
        let (body, den) = match t.strip_prefix('(') {
            Some(r) => {
                let close = r.rfind(')').ok_or_else(bad)?;
                let den = match r[close + 1..].trim() {
                    "" => BigInt::one(),
                    d => d.strip_prefix('/').ok_or_else(bad)?.trim().parse::<BigInt>().map_err(|_| bad())?,
                };
                (&r[..close], den)
            }
            None => (t, BigInt::one()),
        };
        if !den.is_positive() {
            return Err(bad());
        }
        let p = UniPoly::parse(body, "u")?;
        let mut coeffs = p.coeffs().to_vec();
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        if neg {
            coeffs.iter_mut().for_each(|c| *c = -&*c);
        }
        Ok(Relation { target, den, coeffs })
    }

    /// The right-hand side `(sum coeffs[i] u^i) / den` rendered in `u`.
    pub fn render(&self) -> String {
        let p = UniPoly::new(self.coeffs.clone(), "u");
        if self.den.is_one() {
            p.to_string()
        } else {
            format!("({p})/{}", self.den)
        }
    }
}

fn quality(defect: &BigComplex) -> f64 {
    if defect.is_zero() {
        f64::INFINITY
    } else {
        -defect.log10_norm_inf()
    }
}

// The defect a genuine relation leaves when evaluated at k digits is
// about 10^-k times its largest term. A lattice vector that only beats the
// 10^-k' scaling leaves a far larger one.
fn precision_floor(k: u32, kprime: u32, log10_terms: f64) -> f64 {
    let spec = k as f64 - kprime as f64 - 10.0;
    spec.max(k as f64 - 10.0 - log10_terms.max(0.0))
}

fn log10_abs(x: &BigInt) -> f64 {
    if x.is_zero() {
        f64::NEG_INFINITY
    } else {
        BigReal::from_bigint(x, 20).log10_abs()
    }
}

fn log10_max_coeff(cs: &[BigInt]) -> f64 {
    cs.iter().map(log10_abs).fold(f64::NEG_INFINITY, f64::max)
}

/// Exact test `|v| < det(L)^(1/n) / 1000`, i.e.
/// `|v|^(2n) * 1000^(2n) < gram_det`.
fn below_threshold(norm2: &BigInt, gram_det: &BigInt, n: usize) -> bool {
    let lhs = num_traits::pow(norm2.clone(), n) * num_traits::pow(BigInt::from(HERMITE_FACTOR), 2 * n);
    &lhs < gram_det
}

/// Short vector of the lattice with its coefficient vector
/// `(c_{m-1}, .., c_0, c)`: the identity coordinates then the recovered
/// constant.
fn relation_vector(lp: &LatticeProblem) -> Result<(Vec<BigInt>, BigInt, bool)> {
    let (v, red) = shortest_row_vector(lp.columns())?;
    let n2: BigInt = v.iter().map(|x| x * x).sum();
    let ok = below_threshold(&n2, red.gram_det(), lp.basis.cols());
    let m = lp.basis.cols() - 1;
    let mut coeffs: Vec<BigInt> = v[..m].to_vec();
    coeffs.push(lp.constant_term(&v));
    Ok((coeffs, n2, ok))
}

/// Searches degrees `1..=dmax` for an integer polynomial vanishing at
/// `theta`, known to `k` digits.
pub fn find_minpoly(theta: &BigComplex, dmax: usize, k: u32, kprime: u32) -> Result<MinPolyResult> {
    if theta.digits() < k {
        return Err(Error::InsufficientPrecision(format!("value carries {} digits, {} requested", theta.digits(), k)));
    }
    let theta = theta.with_digits(k);
    let log_theta = theta.log10_norm_inf().max(0.0);
    for d in 1..=dmax {
        let lp = build_minpoly_lattice(&theta, d, kprime)?;
        let (c, norm2, ok) = relation_vector(&lp)?;
        if !ok || c[0].is_zero() {
            continue;
        }
        // c = (c_d, .., c_1, c_0)
        let poly = UniPoly::new(c.into_iter().rev().collect(), "u").primitive();
        let q = quality(&poly.eval_complex(&theta));
        let terms = log10_max_coeff(poly.coeffs()) + d as f64 * log_theta;
        if q > precision_floor(k, kprime, terms) {
            return Ok(MinPolyResult { degree: poly.degree(), poly, quality: q, norm2 });
        }
    }
    Err(Error::NoCandidate(format!("no minimal polynomial of degree <= {dmax}")))
}

/// Finds `den * beta = sum_{i < d1} coeffs[i] theta^i`.
pub fn find_relation(theta: &BigComplex, beta: &BigComplex, d1: usize, k: u32, kprime: u32) -> Result<Relation> {
    if theta.digits() < k || beta.digits() < k {
        return Err(Error::InsufficientPrecision(format!("relation search needs {k} digits")));
    }
    let t = theta.with_digits(k + 10);
    let mut values = Vec::with_capacity(d1);
    let mut p = t.clone();
    let mut pows = Vec::new();
    for _ in 1..d1 {
        pows.push(p.clone());
        p = &p * &t;
    }
    pows.reverse();
    values.extend(pows);
    values.push(beta.with_digits(k + 10));
    let lp = build_relation_lattice(&values, k, kprime)?;
    let (c, _, ok) = relation_vector(&lp)?;
    // c = (u_{d1-1}, .., u_1, u_beta, u_0)
    let m = c.len();
    let u_beta = c[m - 2].clone();
    if !ok || u_beta.is_zero() {
        return Err(Error::NoCandidate("no linear relation found".into()));
    }
    let mut coeffs: Vec<BigInt> = vec![-c[m - 1].clone()];
    coeffs.extend(c[..m - 2].iter().rev().map(|x| -x.clone()));
    let mut den = u_beta;
    let g = coeffs.iter().fold(den.clone(), |g, x| g.gcd(x));
    let sign = if den.is_negative() { -BigInt::one() } else { BigInt::one() };
    let g = g * sign;
    den /= &g;
    for x in coeffs.iter_mut() {
        *x /= &g;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|x| x.is_zero()) {
        coeffs.pop();
    }
    let terms = (log10_abs(&den) + beta.log10_norm_inf().max(0.0))
        .max(log10_max_coeff(&coeffs) + (d1 - 1) as f64 * theta.log10_norm_inf().max(0.0));
    let rel = Relation { target: 0, den, coeffs };
    if quality(&rel.defect(&theta.with_digits(k), &beta.with_digits(k))) <= precision_floor(k, kprime, terms) {
        return Err(Error::NoCandidate("relation failed the numerical check".into()));
    }
    Ok(rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_value() {
        let theta = BigComplex::from_real(&BigReal::from_i64(3, 100) / &BigReal::from_i64(7, 100));
        let r = find_minpoly(&theta, 4, 100, 50).unwrap();
        assert_eq!(r.poly, UniPoly::from_i64(&[-3, 7], "u"));
    }

    #[test]
    fn sqrt_two() {
        let theta = BigComplex::from_real(BigReal::from_i64(2, 100).sqrt());
        let r = find_minpoly(&theta, 4, 100, 50).unwrap();
        assert_eq!(r.poly, UniPoly::from_i64(&[-2, 0, 1], "u"));
    }

    #[test]
    fn relation_strings() {
        let r = Relation::parse(5, "(-u^5 - u^3 - u + 6)/3").unwrap();
        assert_eq!(r.den, BigInt::from(3));
        assert_eq!(r.render(), "(-u^5 - u^3 - u + 6)/3");
        let n = Relation::parse(5, "-(u^5 + u^3 + u - 6)/3").unwrap();
        assert_eq!(n, r);
        assert_eq!(Relation::parse(2, "-1").unwrap().coeffs, vec![BigInt::from(-1)]);
        assert!(Relation::parse(2, "(u)/0").is_err());
    }

    #[test]
    fn constant_relation() {
        let theta = BigComplex::from_real(BigReal::from_i64(2, 100).sqrt());
        let r = find_relation(&theta, &BigComplex::from_i64(5, 100), 2, 100, 50).unwrap();
        assert_eq!((r.den, r.coeffs), (BigInt::one(), vec![BigInt::from(5)]));
    }
}
