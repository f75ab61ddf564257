//! Binary floating point with a decimal precision budget.
//!
//! A [`BigReal`] stores `mant * 2^exp` where `mant` carries at most
//! `bits_for(digits)` significant bits. The decimal digit count travels with
//! the value; binary operations produce the smaller of the two operand
//! precisions, and only [`BigReal::with_digits`] changes it explicitly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;
const LOG10_2: f64 = std::f64::consts::LOG10_2;

/// Number of mantissa bits used for a given decimal precision.
pub fn bits_for(digits: u32) -> u64 {
    (digits as f64 * LOG2_10).ceil() as u64 + 8
}

#[derive(Clone, Debug)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
    digits: u32,
}

fn pow10(n: u64) -> BigInt {
    num_traits::pow(BigInt::from(10u32), n as usize)
}

/// Shift right by `s` bits, rounding half away from zero.
fn shr_round(m: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    let (sign, mag) = (m.sign(), m.magnitude());
    let half = num_bigint::BigUint::one() << (s - 1);
    let r = (mag + half) >> s;
    BigInt::from_biguint(if r.is_zero() { Sign::NoSign } else { sign }, r)
}

impl BigReal {
    fn normalized(mant: BigInt, exp: i64, digits: u32) -> Self {
        if mant.is_zero() {
            return BigReal { mant, exp: 0, digits };
        }
        let cap = bits_for(digits);
        let nb = mant.bits();
        if nb > cap {
            let s = nb - cap;
            let m = shr_round(&mant, s);
            BigReal { mant: m, exp: exp + s as i64, digits }
        } else {
            BigReal { mant, exp, digits }
        }
    }

    pub fn zero(digits: u32) -> Self {
        BigReal { mant: BigInt::zero(), exp: 0, digits }
    }

    pub fn one(digits: u32) -> Self {
        Self::from_bigint(&BigInt::one(), digits)
    }

    pub fn from_i64(v: i64, digits: u32) -> Self {
        Self::normalized(BigInt::from(v), 0, digits)
    }

    pub fn from_bigint(v: &BigInt, digits: u32) -> Self {
        Self::normalized(v.clone(), 0, digits)
    }

    pub fn from_rational(q: &BigRational, digits: u32) -> Self {
        let n = Self::from_bigint(q.numer(), digits + 2);
        let d = Self::from_bigint(q.denom(), digits + 2);
        (n / d).with_digits(digits)
    }

    /// Exact conversion of a finite `f64`; non-finite input maps to zero.
    pub fn from_f64(v: f64, digits: u32) -> Self {
        if !v.is_finite() || v == 0.0 {
            return Self::zero(digits);
        }
        let bits = v.to_bits();
        let sign = if (bits >> 63) == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0x000f_ffff_ffff_ffff;
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Self::normalized(BigInt::from(m) * sign, e, digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Re-rounds to a new decimal precision. Increasing the precision pads
    /// with zero bits; it never invents information.
    pub fn with_digits(&self, digits: u32) -> Self {
        Self::normalized(self.mant.clone(), self.exp, digits)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        BigReal { mant: self.mant.abs(), exp: self.exp, digits: self.digits }
    }

    /// Position of the top bit: |x| lies in [2^(t-1), 2^t).
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    /// Approximate log10 |x|; `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let nb = self.mant.bits();
        let s = nb.saturating_sub(60);
        let top = (self.mant.magnitude() >> s).to_f64().unwrap_or(0.0);
        top.log10() + (self.exp + s as i64) as f64 * LOG10_2
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let nb = self.mant.bits();
        let s = nb.saturating_sub(60);
        let top = (&self.mant >> s).to_f64().unwrap_or(0.0);
        let e = self.exp + s as i64;
        if e > 2000 {
            return top.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // two-step scaling keeps the intermediate in range
        let half = (e / 2) as i32;
        top * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << (self.exp as u64)
        } else {
            // arithmetic shift rounds toward negative infinity
            &self.mant >> ((-self.exp) as u64)
        }
    }

    pub fn round(&self) -> BigInt {
        let half = BigReal { mant: BigInt::one(), exp: -1, digits: self.digits };
        (self + &half).floor()
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return self.clone();
        }
        let cap = bits_for(self.digits) as i64;
        let nb = self.mant.bits() as i64;
        let mut s = (2 * cap + 4 - nb).max(0);
        if (self.exp - s).is_odd() {
            s += 1;
        }
        let m = &self.mant << (s as u64);
        let r = m.sqrt();
        Self::normalized(r, (self.exp - s) / 2, self.digits)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: u32) -> Self {
        let mut acc = BigReal::one(self.digits);
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

    /// Multiplication by 10^k for integer k, at the value's precision.
    pub fn scale_pow10(&self, k: i64) -> Self {
        let p = BigReal::from_bigint(&pow10(k.unsigned_abs()), self.digits + 2);
        if k >= 0 {
            (self * &p).with_digits(self.digits)
        } else {
            (self / &p).with_digits(self.digits)
        }
    }

    /// 10^k as a value of the given precision.
    pub fn pow10(k: i64, digits: u32) -> Self {
        BigReal::one(digits).scale_pow10(k)
    }

    /// Rounds to `dp` decimal places and returns the scaled integer
    /// `round(x * 10^dp)`.
    pub fn round_to_places(&self, dp: u32) -> BigInt {
        exact_scaled_round(self, dp as i64)
    }

    /// Scientific notation with `sig` significant digits, trailing zeros
    /// removed: `-1.4142e-3`.
    pub fn to_sci_string(&self, sig: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let mag = self.abs();
        let mut e10 = mag.log10_abs().floor() as i64;
        let n = loop {
            let p = sig as i64 - 1 - e10;
            let scaled = exact_scaled_round(&mag, p);
            let len = scaled.to_string().len() as i64;
            if len > sig as i64 {
                e10 += 1;
            } else if len < sig as i64 {
                e10 -= 1;
            } else {
                break scaled;
            }
        };
        let s = n.to_string();
        let (head, tail) = s.split_at(1);
        let tail = tail.trim_end_matches('0');
        let sign = if self.is_negative() { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }

    /// Parses `[-+]digits[.digits][e[-+]digits]`.
    pub fn parse(s: &str, digits: u32) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("bad decimal number {s:?}"));
        let (mantissa, exp10) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (t, 0),
        };
        let (neg, body) = match mantissa.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (ip, fp) = match body.find('.') {
            Some(i) => (&body[..i], &body[i + 1..]),
            None => (body, ""),
        };
        if ip.is_empty() && fp.is_empty() {
            return Err(bad());
        }
        if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let mut int: BigInt = format!("{ip}{fp}0").parse::<BigInt>().map_err(|_| bad())? / 10;
        if neg {
            int = -int;
        }
        let e = exp10 - fp.len() as i64;
        let v = BigReal::from_bigint(&int, digits + 4);
        Ok(v.scale_pow10(e).with_digits(digits))
    }

    fn aligned(a: &BigReal, b: &BigReal) -> (BigInt, BigInt, i64) {
        match a.exp.cmp(&b.exp) {
            Ordering::Equal => (a.mant.clone(), b.mant.clone(), a.exp),
            Ordering::Greater => (&a.mant << ((a.exp - b.exp) as u64), b.mant.clone(), b.exp),
            Ordering::Less => (a.mant.clone(), &b.mant << ((b.exp - a.exp) as u64), a.exp),
        }
    }

    fn add_signed(&self, other: &BigReal, negate_other: bool) -> BigReal {
        let digits = self.digits.min(other.digits);
        if other.is_zero() {
            return self.with_digits(digits);
        }
        if self.is_zero() {
            let o = other.with_digits(digits);
            return if negate_other { -o } else { o };
        }
        // an operand far below the other's last bit cannot affect the result
        let cap = bits_for(digits) as i64 + 4;
        if self.top() - other.top() > cap {
            return self.with_digits(digits);
        }
        if other.top() - self.top() > cap {
            let o = other.with_digits(digits);
            return if negate_other { -o } else { o };
        }
        let (a, b, e) = Self::aligned(self, other);
        let m = if negate_other { a - b } else { a + b };
        Self::normalized(m, e, digits)
    }
}

fn exact_scaled_round(x: &BigReal, p: i64) -> BigInt {
    // round(x * 10^p), exact
    let mut num = x.mant.clone();
    let mut den = BigInt::one();
    if p >= 0 {
        num *= pow10(p as u64);
    } else {
        den *= pow10((-p) as u64);
    }
    if x.exp >= 0 {
        num <<= x.exp as u64;
    } else {
        den <<= (-x.exp) as u64;
    }
    let twice: BigInt = num * 2 + &den;
    twice.div_floor(&(den * 2))
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl BigReal {
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            let mag = ta.cmp(&tb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        let (a, b, _) = Self::aligned(self, other);
        a.cmp(&b)
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(self.digits))
    }
}

impl FromStr for BigReal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let sig = s.bytes().filter(|b| b.is_ascii_digit()).count() as u32;
        BigReal::parse(s, sig.max(16))
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal { mant: -self.mant, exp: self.exp, digits: self.digits }
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal { mant: -&self.mant, exp: self.exp, digits: self.digits }
    }
}

impl Add<&BigReal> for &BigReal {
    type Output = BigReal;
    fn add(self, o: &BigReal) -> BigReal {
        self.add_signed(o, false)
    }
}

impl Sub<&BigReal> for &BigReal {
    type Output = BigReal;
    fn sub(self, o: &BigReal) -> BigReal {
        self.add_signed(o, true)
    }
}

impl Mul<&BigReal> for &BigReal {
    type Output = BigReal;
    fn mul(self, o: &BigReal) -> BigReal {
        BigReal::normalized(&self.mant * &o.mant, self.exp + o.exp, self.digits.min(o.digits))
    }
}

impl Div<&BigReal> for &BigReal {
    type Output = BigReal;
    fn div(self, o: &BigReal) -> BigReal {
        assert!(!o.is_zero(), "BigReal division by zero");
        let digits = self.digits.min(o.digits);
        let cap = bits_for(digits) as i64;
        let s = (cap + 2 + o.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let q = (&self.mant << (s as u64)) / &o.mant;
        BigReal::normalized(q, self.exp - o.exp - s, digits)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, o: BigReal) -> BigReal {
                (&self).$m(&o)
            }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, o: &BigReal) -> BigReal {
                (&self).$m(o)
            }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $m(self, o: BigReal) -> BigReal {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_semantics() {
        let f = |s: &str| BigReal::parse(s, 30).unwrap().floor();
        assert_eq!(f("3.7"), BigInt::from(3));
        assert_eq!(f("-2.3"), BigInt::from(-3));
        assert_eq!(f("5.0"), BigInt::from(5));
        assert_eq!(f("-5"), BigInt::from(-5));
        assert_eq!(f("0.25"), BigInt::from(0));
        assert_eq!(f("-0.25"), BigInt::from(-1));
    }

    #[test]
    fn sqrt_two_digits() {
        let r = BigReal::from_i64(2, 60).sqrt();
        let s = r.to_sci_string(50);
        assert!(s.starts_with("1.4142135623730950488016887242096980785696718753769"), "{s}");
        let back = &r * &r - BigReal::from_i64(2, 60);
        assert!(back.log10_abs() < -58.0);
    }

    #[test]
    fn parse_and_print() {
        let x = BigReal::parse("-1.25e-3", 20).unwrap();
        assert_eq!(x.to_sci_string(20), "-1.25e-3");
        assert_eq!(BigReal::parse("12345", 10).unwrap().to_sci_string(10), "1.2345e4");
        assert!(BigReal::parse("1.2.3", 10).is_err());
        assert!(BigReal::parse("", 10).is_err());
        assert_eq!(BigReal::zero(5).to_sci_string(5), "0");
    }

    #[test]
    fn precision_is_carried() {
        let a = BigReal::from_i64(1, 50);
        let b = BigReal::from_i64(3, 20);
        assert_eq!((&a / &b).digits(), 20);
        assert_eq!(a.with_digits(80).digits(), 80);
    }

    #[test]
    fn division_accuracy() {
        let third = BigReal::from_i64(1, 200) / BigReal::from_i64(3, 200);
        let err = &third * &BigReal::from_i64(3, 200) - BigReal::one(200);
        assert!(err.log10_abs() < -199.0);
    }

    #[test]
    fn absorbs_negligible_addend() {
        let big = BigReal::parse("1e300", 20).unwrap();
        let tiny = BigReal::parse("1e-300", 20).unwrap();
        assert_eq!(&big + &tiny, big);
        assert_eq!((&tiny - &big).signum(), -1);
    }

    #[test]
    fn to_f64_round_trip() {
        for v in [1.5, -3.25e-7, 6.02e23, 1e-300] {
            let x = BigReal::from_f64(v, 30);
            assert_eq!(x.to_f64(), v);
        }
    }

    #[test]
    fn ordering() {
        let a = BigReal::parse("-2", 20).unwrap();
        let b = BigReal::parse("-1.5", 20).unwrap();
        assert!(a < b);
        assert!(BigReal::parse("1e-10", 20).unwrap() > BigReal::zero(20));
    }

    #[test]
    fn round_to_places_symmetric() {
        let x = BigReal::parse("-1.23456", 30).unwrap();
        assert_eq!(x.round_to_places(3), BigInt::from(-1235));
    }
}
