//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::complex::{BigComplex, Scalar};
use crate::error::{Error, Result};

/// Guard digits added to the working precision of [`eval_multipoly`].
pub const EVAL_GUARD_DIGITS: u32 = 20;

/// Sum of `coeff * x^exps` terms. Exponent vectors are unique and every
/// stored coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c)])
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    /// The coordinate function `x_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, BigRational::one())])
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Maximum total degree over the terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn contains_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn max_exponent(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * BigRational::from_integer(e[i].into()));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MultiPoly::from_int(self.nvars, 1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Direct evaluation at the precision of the point.
    pub fn eval<S: Scalar>(&self, pt: &[S]) -> S {
        assert_eq!(pt.len(), self.nvars);
        let proto = &pt[0];
        let mut acc = proto.zero_like();
        for (e, c) in &self.terms {
            let mut t = proto.rational_like(c);
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t * &pt[v];
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn eval_rational(&self, pt: &[BigRational]) -> BigRational {
        assert_eq!(pt.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &pt[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluation in F_p; `None` when a coefficient denominator vanishes mod p.
    pub fn eval_mod(&self, pt: &[u64], p: u64) -> Option<u64> {
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = rational_mod(c, p)?;
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = mulmod(t, pt[v] % p, p);
                }
            }
            acc = (acc + t) % p;
        }
        Some(acc)
    }

    /// Renders with the given variable names, highest total degree first.
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut out = String::new();
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { names[v].to_string() } else { format!("{}^{}", names[v], k) })
                .collect();
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("a{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        f.write_str(&self.render(&refs))
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime; `None` for zero.
pub(crate) fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

pub(crate) fn int_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

pub(crate) fn rational_mod(q: &BigRational, p: u64) -> Option<u64> {
    let d = invmod(int_mod(q.denom(), p), p)?;
    Some(mulmod(int_mod(q.numer(), p), d, p))
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigRational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Evaluates `p` at `pt` carrying `digits + EVAL_GUARD_DIGITS` internally and
/// returns the value rounded to `digits`.
pub fn eval_multipoly(p: &MultiPoly, pt: &[BigComplex], digits: u32) -> Result<BigComplex> {
    if pt.len() != p.nvars() {
        return Err(Error::InvalidInput(format!(
            "point has {} coordinates, polynomial has {} variables",
            pt.len(),
            p.nvars()
        )));
    }
    if let Some(low) = pt.iter().map(|z| z.digits()).min() {
        if low < digits {
            return Err(Error::InsufficientPrecision(format!(
                "coordinate carries {low} digits, {digits} requested"
            )));
        }
    }
    let work: Vec<BigComplex> = pt.iter().map(|z| z.with_digits(digits + EVAL_GUARD_DIGITS)).collect();
    Ok(p.eval(&work).with_digits(digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::real::BigReal;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn linear_eval() {
        let p = &MultiPoly::var(10, 0) + &MultiPoly::var(10, 1);
        let mut pt = vec![BigComplex::zero(30); 10];
        pt[0] = BigComplex::from_i64(1, 30);
        pt[1] = BigComplex::from_i64(2, 30);
        assert_eq!(eval_multipoly(&p, &pt, 30).unwrap(), BigComplex::from_i64(3, 30));
    }

    #[test]
    fn sqrt_two_residual() {
        let a1 = MultiPoly::var(10, 0);
        let p = &(&a1 * &a1) - &MultiPoly::from_int(10, 2);
        let mut pt = vec![BigComplex::zero(50); 10];
        pt[0] = BigComplex::from_real(BigReal::from_i64(2, 50).sqrt());
        let r = eval_multipoly(&p, &pt, 50).unwrap();
        assert!(r.log10_norm_inf() < -48.0);
    }

    #[test]
    fn rejects_low_precision_input() {
        let p = MultiPoly::var(2, 0);
        let pt = vec![BigComplex::zero(20), BigComplex::zero(40)];
        assert!(matches!(eval_multipoly(&p, &pt, 30), Err(Error::InsufficientPrecision(_))));
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = MultiPoly::var(3, 2);
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn derivative_and_degree() {
        // 3 x^2 y - 5 y + 7
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &(&(&x * &x) * &y).scale(&q(3)) - &y.scale(&q(5));
        let p = &p + &MultiPoly::from_int(2, 7);
        assert_eq!(p.total_degree(), 3);
        let dx = p.derivative(0);
        assert_eq!(dx, (&x * &y).scale(&q(6)));
        let dy = p.derivative(1);
        assert_eq!(dy, &(&x * &x).scale(&q(3)) - &MultiPoly::from_int(2, 5));
        assert_eq!(p.render(&["x", "y"]), "3*x^2*y - 5*y + 7");
    }

    #[test]
    fn modular_eval() {
        // (x/2 + 1) at x = 3 mod 7 = 3*4 + 1 = 13 = 6
        let p = &MultiPoly::var(1, 0).scale(&BigRational::new(1.into(), 2.into())) + &MultiPoly::from_int(1, 1);
        assert_eq!(p.eval_mod(&[3], 7), Some(6));
        assert_eq!(p.eval_mod(&[3], 2), None);
    }
}
