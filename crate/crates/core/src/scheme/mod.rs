//! The ten-equation 3-torsion scheme of a genus-3 hyperelliptic curve.
//!
//! Unknowns are `a1..a10` (indices 0..9). Equation `e_{j+1}` is the
//! coefficient of `x^j`.

mod curve;
mod hfunc;

pub use curve::{resultant, HyperellipticCurve};
pub use hfunc::{h_function, FunctionH, HCoeff};

use num_rational::BigRational;

use crate::arith::{MultiPoly, PolySystem};
use crate::error::{Error, Result};

pub const NVARS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorsionScheme {
    curve: HyperellipticCurve,
    parity: Parity,
    system: PolySystem,
}

impl TorsionScheme {
    pub fn curve(&self) -> &HyperellipticCurve {
        &self.curve
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn system(&self) -> &PolySystem {
        &self.system
    }

    pub fn equations(&self) -> &[MultiPoly] {
        self.system.equations()
    }

    pub fn jacobian(&self) -> &[Vec<MultiPoly>] {
        self.system.jacobian()
    }
}

impl AsRef<PolySystem> for TorsionScheme {
    fn as_ref(&self) -> &PolySystem {
        &self.system
    }
}

// polynomials in x with coefficients in Q[a1..a10], ascending in x
type XPoly = Vec<MultiPoly>;

fn var(i: usize) -> MultiPoly {
    MultiPoly::var(NVARS, i)
}

fn konst(c: &BigRational) -> MultiPoly {
    MultiPoly::constant(NVARS, c.clone())
}

fn int(c: i64) -> MultiPoly {
    MultiPoly::from_int(NVARS, c)
}

fn xadd(a: &XPoly, b: &XPoly) -> XPoly {
    let n = a.len().max(b.len());
    let zero = MultiPoly::zero(NVARS);
    (0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect()
}

fn xsub(a: &XPoly, b: &XPoly) -> XPoly {
    let nb: XPoly = b.iter().map(|c| -c).collect();
    xadd(a, &nb)
}

fn xmul(a: &XPoly, b: &XPoly) -> XPoly {
    let mut out = vec![MultiPoly::zero(NVARS); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] = &out[i + j] + &(ai * bj);
            }
        }
    }
    out
}

fn xscale(a: &XPoly, c: &MultiPoly) -> XPoly {
    a.iter().map(|t| t * c).collect()
}

fn curve_poly(curve: &HyperellipticCurve) -> XPoly {
    curve.ascending().iter().map(konst).collect()
}

// x^3 + a8 x^2 + a9 x + a10, cubed, times a7
fn cube_term() -> XPoly {
    let c = vec![var(9), var(8), var(7), int(1)];
    xscale(&xmul(&xmul(&c, &c), &c), &var(6))
}

/// The full polynomial in `x` whose coefficients define the scheme.
fn defining_polynomial(curve: &HyperellipticCurve) -> (XPoly, Parity) {
    let f = curve_poly(curve);
    if curve.is_odd() {
        let lin = vec![var(0), int(1)];
        let q = vec![var(5), var(4), var(3), var(2), var(1)];
        let p = xsub(&xadd(&xmul(&f, &xmul(&lin, &lin)), &cube_term()), &xmul(&q, &q));
        (p, Parity::Odd)
    } else {
        let (gl, l) = even_parts(curve);
        let p = xsub(&xsub(&xmul(&gl, &gl), &xmul(&xmul(&l, &l), &f)), &cube_term());
        (p, Parity::Even)
    }
}

// (g, l) for the even case
fn even_parts(curve: &HyperellipticCurve) -> (XPoly, XPoly) {
    let half = BigRational::new(1.into(), 2.into());
    let eighth = BigRational::new(1.into(), 8.into());
    let a7 = curve.coeff(7);
    let a6 = curve.coeff(6);
    let x5 = &konst(&(-&a7 * &half)) - &var(0);
    let lead4 = -&a6 * &half + &a7 * &a7 * &eighth;
    let x4 = &(&konst(&lead4) - &var(0).scale(&(&a7 * &half))) - &var(1);
    let g = vec![var(5), var(4), var(3), var(2), x4, x5, int(-1)];
    let l = vec![var(1), var(0), int(1)];
    (g, l)
}

/// Builds the scheme for `curve`, with the even-case top-coefficient
/// cancellation checked symbolically.
pub fn build_torsion_scheme(curve: &HyperellipticCurve) -> Result<TorsionScheme> {
    let (mut p, parity) = defining_polynomial(curve);
    if let Some((k, _)) = p.iter().enumerate().skip(10).find(|(_, c)| !c.is_zero()) {
        return Err(Error::InvalidCurve(format!("coefficient of x^{k} does not cancel")));
    }
    p.truncate(10);
    p.resize(10, MultiPoly::zero(NVARS));
    let system = PolySystem::new(p)?;
    Ok(TorsionScheme { curve: curve.clone(), parity, system })
}

/// `dE`: entry `(i, j)` is the partial derivative of `e_{i+1}` in `a_{j+1}`.
pub fn scheme_jacobian(ts: &TorsionScheme) -> Vec<Vec<MultiPoly>> {
    ts.jacobian().to_vec()
}

/// Coefficients of `g^2 - l^2 f` for an even curve, ascending in `x`.
pub fn even_norm_coefficients(curve: &HyperellipticCurve) -> Vec<MultiPoly> {
    let (g, l) = even_parts(curve);
    xsub(&xmul(&g, &g), &xmul(&xmul(&l, &l), &curve_poly(curve)))
}
