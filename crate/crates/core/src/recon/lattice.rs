//! Lattices whose short vectors are integer relations among approximations.

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{floor_int, BigComplex, BigReal, IntMatrix};
use crate::error::{Error, Result};

/// The lattice spanned by the columns of `basis`. For values
/// `v_0, .., v_{m-1}, 1` the basis is the identity on the first `m`
/// coordinates stacked over `([C v_0], .., [C v_{m-1}], [C])`, with a second
/// row of imaginary parts in the complex variant.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeProblem {
    pub degree: usize,
    pub kprime: u32,
    pub scale: BigInt,
    pub complex: bool,
    pub basis: IntMatrix,
}

impl LatticeProblem {
    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.basis.cols()).map(|c| self.basis.col(c)).collect()
    }

    /// Exact recovery of the constant coefficient: the last lattice
    /// coordinates of `v` minus the contributions of the other
    /// coefficients, divided by `[C]`.
    pub fn constant_term(&self, v: &[BigInt]) -> BigInt {
        let m = self.basis.cols() - 1;
        let mut a = v[m].clone();
        for (i, c) in v[..m].iter().enumerate() {
            a -= c * self.basis.get(m, i);
        }
        a / self.basis.get(m, m)
    }
}

fn is_real(z: &BigComplex, k: u32) -> bool {
    z.im.is_zero() || z.im.log10_abs() < -(k as f64) / 2.0
}

/// Lattice for an integer relation `sum c_i v_i + c = 0` among `values`.
pub fn build_relation_lattice(values: &[BigComplex], k: u32, kprime: u32) -> Result<LatticeProblem> {
    if kprime >= k {
        return Err(Error::ScalingExceedsPrecision { k, kprime });
    }
    let m = values.len();
    let complex = !values.iter().all(|v| is_real(v, k));
    let rows = m + 1 + usize::from(complex);
    let mut a = IntMatrix::zeros(rows, m + 1);
    for i in 0..m {
        a.set(i, i, BigInt::one());
    }
    let c = BigReal::pow10(kprime as i64, k + 10);
    let scale = num_traits::pow(BigInt::from(10), kprime as usize);
    for (i, v) in values.iter().enumerate() {
        a.set(m, i, floor_int(&(&c * &v.re.with_digits(k + 10))));
        if complex {
            a.set(m + 1, i, floor_int(&(&c * &v.im.with_digits(k + 10))));
        }
    }
    a.set(m, m, scale.clone());
    Ok(LatticeProblem { degree: m, kprime, scale, complex, basis: a })
}

/// The lattice for a degree-`d` minimal polynomial of `theta`, with
/// columns for `theta^d, .., theta, 1`.
pub fn build_minpoly_lattice(theta: &BigComplex, d: usize, kprime: u32) -> Result<LatticeProblem> {
    let k = theta.digits();
    if kprime >= k {
        return Err(Error::ScalingExceedsPrecision { k, kprime });
    }
    let t = theta.with_digits(k + 10);
    let mut pows = vec![t.clone()];
    for _ in 1..d {
        let next = pows.last().expect("nonempty") * &t;
        pows.push(next);
    }
    pows.reverse();
    let mut lp = build_relation_lattice(&pows, k, kprime)?;
    // the variant is decided by theta itself
    if lp.complex && is_real(theta, k) {
        let real: Vec<BigComplex> = pows.iter().map(|z| BigComplex::from_real(z.re.clone())).collect();
        lp = build_relation_lattice(&real, k, kprime)?;
    }
    Ok(lp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn theta_one_degree_one() {
        let lp = build_minpoly_lattice(&BigComplex::from_i64(1, 10), 1, 2).unwrap();
        assert!(!lp.complex);
        assert_eq!(lp.basis, IntMatrix::from_rows(vec![ints(&[1, 0]), ints(&[100, 100])]));
    }

    #[test]
    fn sqrt_two_bottom_row() {
        let r2 = BigReal::from_i64(2, 50).sqrt();
        let lp = build_minpoly_lattice(&BigComplex::from_real(r2), 2, 40).unwrap();
        let c = num_traits::pow(BigInt::from(10), 40);
        assert_eq!(lp.basis.get(2, 0), &(&c * 2));
        assert_eq!(lp.basis.get(2, 1), &"14142135623730950488016887242096980785696".parse::<BigInt>().unwrap());
        assert_eq!(lp.basis.get(2, 2), &c);
    }

    #[test]
    fn imaginary_unit_is_complex() {
        let lp = build_minpoly_lattice(&BigComplex::i(50), 2, 40).unwrap();
        assert!(lp.complex);
        let c = num_traits::pow(BigInt::from(10), 40);
        assert_eq!(lp.basis.row(2), &[-c.clone(), BigInt::zero(), c.clone()][..]);
        assert_eq!(lp.basis.row(3), &[BigInt::zero(), c, BigInt::zero()][..]);
    }

    #[test]
    fn scaling_must_stay_below_precision() {
        let r = build_minpoly_lattice(&BigComplex::from_i64(1, 30), 1, 30);
        assert_eq!(r, Err(Error::ScalingExceedsPrecision { k: 30, kprime: 30 }));
    }
}
