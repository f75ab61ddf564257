//! Oracles shared by the property and acceptance suites.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use torsion3::arith::UniPoly;
use torsion3::catalog;
use torsion3::scheme::HyperellipticCurve;

pub type Poly = Vec<BigRational>;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn add(a: &Poly, b: &Poly) -> Poly {
    (0..a.len().max(b.len())).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect()
}

fn neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of the defining identity at `a`, computed directly from the
/// divisor parametrization. The even-case `x^4` and `x^5` coefficients of
/// `g` are solved from the vanishing of the `x^11` and `x^10` terms.
pub fn direct_coefficients(curve: &HyperellipticCurve, a: &[BigRational]) -> Poly {
    let f: Poly = curve.ascending().to_vec();
    let c: Poly = vec![a[9].clone(), a[8].clone(), a[7].clone(), BigRational::one()];
    let cube = mul(&mul(&c, &c), &mul(&c, &vec![a[6].clone()]));
    if curve.is_odd() {
        let lin = vec![a[0].clone(), BigRational::one()];
        let qq: Poly = a[1..6].iter().rev().cloned().collect();
        add(&add(&mul(&f, &mul(&lin, &lin)), &cube), &neg(&mul(&qq, &qq)))
    } else {
        let (f6, f7) = (&f[6], &f[7]);
        let two = q(2, 1);
        let g5 = -(f7 / &two) - &a[0];
        let g4 = (&g5 * &g5 - f6 - &two * &a[0] * f7 - &a[0] * &a[0] - &two * &a[1]) / &two;
        let g: Poly = vec![a[5].clone(), a[4].clone(), a[3].clone(), a[2].clone(), g4, g5, -BigRational::one()];
        let l: Poly = vec![a[1].clone(), a[0].clone(), BigRational::one()];
        add(&add(&mul(&g, &g), &neg(&mul(&mul(&l, &l), &f))), &neg(&cube))
    }
}

fn monic_without_integer_roots(cs: &[i64]) -> bool {
    // monic: any rational root is an integer dividing the constant term
    let c0 = cs[0];
    if c0 == 0 {
        return false;
    }
    let p = UniPoly::from_i64(cs, "u");
    (1..=c0.abs()).filter(|d| c0 % d == 0).all(|d| !p.eval_int(&d.into()).is_zero() && !p.eval_int(&(-d).into()).is_zero())
}

/// Irreducible integer polynomials: quadratics and cubics by the rational
/// root test, quartics by Eisenstein at 2.
pub fn irreducible() -> impl Strategy<Value = Vec<i64>> {
    let low = (2usize..=3, prop::collection::vec(-9i64..=9, 3)).prop_filter_map("has a rational root", |(d, mut cs)| {
        cs.truncate(d);
        cs.push(1);
        monic_without_integer_roots(&cs).then_some(cs)
    });
    let quartic = (prop::collection::vec(-4i64..=4, 3), -4i64..=4).prop_map(|(cs, e)| {
        vec![2 * (2 * e + 1), 2 * cs[0], 2 * cs[1], 2 * cs[2], 1]
    });
    prop_oneof![low, quartic]
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

pub fn curves() -> Vec<HyperellipticCurve> {
    vec![
        catalog::x0_40(),
        catalog::x0_30(),
        catalog::odd_test_curve(),
        HyperellipticCurve::from_i64(&[1, -3, 0, 5, 2, 0, -7, 1, 4]).unwrap(),
        HyperellipticCurve::new(vec![q(1, 1), q(1, 2), q(-3, 4), q(0, 1), q(2, 3), q(1, 1), q(0, 1), q(5, 1)]).unwrap(),
    ]
}
