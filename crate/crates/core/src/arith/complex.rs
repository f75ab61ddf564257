use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::real::BigReal;

#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(digits: u32) -> Self {
        BigComplex { re: BigReal::zero(digits), im: BigReal::zero(digits) }
    }

    pub fn one(digits: u32) -> Self {
        BigComplex { re: BigReal::one(digits), im: BigReal::zero(digits) }
    }

    pub fn i(digits: u32) -> Self {
        BigComplex { re: BigReal::zero(digits), im: BigReal::one(digits) }
    }

    pub fn from_real(re: BigReal) -> Self {
        let d = re.digits();
        BigComplex { re, im: BigReal::zero(d) }
    }

    pub fn from_i64(v: i64, digits: u32) -> Self {
        Self::from_real(BigReal::from_i64(v, digits))
    }

    pub fn from_rational(q: &BigRational, digits: u32) -> Self {
        Self::from_real(BigReal::from_rational(q, digits))
    }

    pub fn from_c64(c: Complex64, digits: u32) -> Self {
        BigComplex { re: BigReal::from_f64(c.re, digits), im: BigReal::from_f64(c.im, digits) }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn digits(&self) -> u32 {
        self.re.digits().min(self.im.digits())
    }

    pub fn with_digits(&self, digits: u32) -> Self {
        BigComplex { re: self.re.with_digits(digits), im: self.im.with_digits(digits) }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> BigReal {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> BigReal {
        self.norm_sqr().sqrt()
    }

    /// log10 of max(|re|, |im|); within log10(sqrt 2) of log10 |z|.
    pub fn log10_norm_inf(&self) -> f64 {
        self.re.log10_abs().max(self.im.log10_abs())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = BigComplex::one(self.digits());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Decimal string pair `[re, im]` with `sig` significant digits.
    pub fn to_strings(&self, sig: u32) -> [String; 2] {
        [self.re.to_sci_string(sig), self.im.to_sci_string(sig)]
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -&self.re, im: -&self.im }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re, im: -self.im }
    }
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        BigComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        BigComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        if self.im.is_zero() && o.im.is_zero() {
            let re = &self.re * &o.re;
            let d = re.digits();
            return BigComplex { re, im: BigReal::zero(d) };
        }
        BigComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, o: &BigComplex) -> BigComplex {
        if o.im.is_zero() {
            return BigComplex { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        let den = o.norm_sqr();
        let num = self * &o.conj();
        BigComplex { re: &num.re / &den, im: &num.im / &den }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                (&self).$m(&o)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: &BigComplex) -> BigComplex {
                (&self).$m(o)
            }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Complex field element usable by the generic evaluators and solvers:
/// `Complex64` for 16-digit path tracking, [`BigComplex`] for refinement.
pub trait Scalar:
    Clone
    + Send
    + Sync
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// Decimal digits carried.
    fn digits(&self) -> u32;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn rational_like(&self, q: &BigRational) -> Self;
    fn c64_like(&self, c: Complex64) -> Self;
    /// log10 of the max-norm of (re, im).
    fn log10_mag(&self) -> f64;
    fn to_c64(&self) -> Complex64;
}

impl Scalar for Complex64 {
    fn digits(&self) -> u32 {
        16
    }
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn rational_like(&self, q: &BigRational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn c64_like(&self, c: Complex64) -> Self {
        c
    }
    fn log10_mag(&self) -> f64 {
        self.re.abs().max(self.im.abs()).log10()
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

impl Scalar for BigComplex {
    fn digits(&self) -> u32 {
        BigComplex::digits(self)
    }
    fn zero_like(&self) -> Self {
        BigComplex::zero(self.digits())
    }
    fn one_like(&self) -> Self {
        BigComplex::one(self.digits())
    }
    fn rational_like(&self, q: &BigRational) -> Self {
        BigComplex::from_rational(q, self.digits())
    }
    fn c64_like(&self, c: Complex64) -> Self {
        BigComplex::from_c64(c, self.digits())
    }
    fn log10_mag(&self) -> f64 {
        self.log10_norm_inf()
    }
    fn to_c64(&self) -> Complex64 {
        BigComplex::to_c64(self)
    }
}
