use num_bigint::BigInt;

use super::complex::{BigComplex, Scalar};
use super::real::BigReal;
use crate::error::{Error, Result};

/// Gaussian elimination with partial pivoting, generic over the scalar.
///
/// A pivot smaller than `10^-(digits/2)` relative to the largest entry of
/// `a` reports [`Error::NumericallySingular`].
pub fn solve_linear<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Result<Vec<S>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("matrix must be square and match the right-hand side".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let digits = b[0].digits();
    let scale = a.iter().flatten().map(|z| z.log10_mag()).fold(f64::NEG_INFINITY, f64::max);
    if !scale.is_finite() {
        return Err(Error::NumericallySingular);
    }
    let floor = scale - digits as f64 / 2.0;

    let mut m: Vec<Vec<S>> = a.to_vec();
    let mut rhs: Vec<S> = b.to_vec();
    for col in 0..n {
        let (piv, mag) = (col..n)
            .map(|r| (r, m[r][col].log10_mag()))
            .fold((col, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
        if !(mag >= floor) {
            return Err(Error::NumericallySingular);
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].one_like() / &m[col][col];
        for r in col + 1..n {
            if m[r][col].log10_mag() == f64::NEG_INFINITY {
                continue;
            }
            let f = m[r][col].clone() * &inv;
            for c in col + 1..n {
                let t = f.clone() * &m[col][c];
                m[r][c] = m[r][c].clone() - t;
            }
            let t = f * &rhs[col];
            rhs[r] = rhs[r].clone() - t;
        }
    }
    let mut x: Vec<S> = vec![b[0].zero_like(); n];
    for r in (0..n).rev() {
        let mut acc = rhs[r].clone();
        for c in r + 1..n {
            acc = acc - m[r][c].clone() * &x[c];
        }
        x[r] = acc / &m[r][r];
    }
    Ok(x)
}

/// Solves `A x = b` over arbitrary-precision complex numbers at `digits`.
pub fn solve_linear_complex(a: &[Vec<BigComplex>], b: &[BigComplex], digits: u32) -> Result<Vec<BigComplex>> {
    let lift = |z: &BigComplex| z.with_digits(digits);
    let a2: Vec<Vec<BigComplex>> = a.iter().map(|r| r.iter().map(lift).collect()).collect();
    let b2: Vec<BigComplex> = b.iter().map(lift).collect();
    solve_linear(&a2, &b2)
}

/// Floor of a real value, the integer part used to build lattice rows.
pub fn floor_int(r: &BigReal) -> BigInt {
    r.floor()
}

/// Matrix-vector product, used to check residuals.
pub fn mat_vec<S: Scalar>(a: &[Vec<S>], x: &[S]) -> Vec<S> {
    a.iter()
        .map(|row| {
            row.iter().zip(x).fold(x[0].zero_like(), |acc, (aij, xj)| acc + aij.clone() * xj)
        })
        .collect()
}
