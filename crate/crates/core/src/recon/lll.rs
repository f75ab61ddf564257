//! Integral LLL reduction (exact integer Gram-Schmidt data).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Reduction parameter `delta = DELTA_NUM / DELTA_DEN`.
pub const DELTA_NUM: i64 = 99;
pub const DELTA_DEN: i64 = 100;

/// A reduced basis with its integral Gram-Schmidt data: `d[i]` is the Gram
/// determinant of the first `i` vectors (`d[0] = 1`) and
/// `lambda[i][j] = d[j+1] * mu[i][j]` for `j < i`.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub basis: Vec<Vec<BigInt>>,
    pub d: Vec<BigInt>,
    pub lambda: Vec<Vec<BigInt>>,
}

impl Reduced {
    /// Gram determinant of the whole lattice.
    pub fn gram_det(&self) -> &BigInt {
        self.d.last().expect("nonempty basis")
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// nearest integer to n / d for d > 0, halves rounded up
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (n * &two + d).div_floor(&(d * &two))
}

/// Reduces the rows of `basis`, which must be linearly independent.
pub fn lll(basis: Vec<Vec<BigInt>>) -> Result<Reduced> {
    let n = basis.len();
    if n == 0 || basis[0].is_empty() {
        return Err(Error::InvalidInput("empty lattice basis".into()));
    }
    let mut b = basis;
    // 1-based indexing below follows the usual statement of the algorithm
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::from(1);
    d[1] = dot(&b[0], &b[0]);
    if d[1].is_zero() {
        return Err(Error::InvalidInput("lattice basis is linearly dependent".into()));
    }
    let (p, q) = (BigInt::from(DELTA_NUM), BigInt::from(DELTA_DEN));
    let mut k = 2usize;
    let mut kmax = 1usize;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k - 1], &b[j - 1]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::InvalidInput("lattice basis is linearly dependent".into()));
                    }
                    d[k] = u;
                }
            }
        }
        loop {
            redi(&mut b, &mut lam, &d, k, k - 1);
            let lhs = &q * &d[k] * &d[k - 2];
            let rhs = &p * &d[k - 1] * &d[k - 1] - &q * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs < rhs {
                swapi(&mut b, &mut lam, &mut d, k, kmax);
                if k > 2 {
                    k -= 1;
                }
            } else {
                for l in (1..k - 1).rev() {
                    redi(&mut b, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
    let lambda = (1..=n).map(|i| (1..i).map(|j| lam[i][j].clone()).collect()).collect();
    Ok(Reduced { basis: b, d, lambda })
}

fn redi(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    if (&lam[k][l] * 2i32).abs() <= d[l] {
        return;
    }
    let r = round_div(&lam[k][l], &d[l]);
    let bl = b[l - 1].clone();
    for (x, y) in b[k - 1].iter_mut().zip(&bl) {
        *x -= &r * y;
    }
    lam[k][l] -= &r * &d[l];
    for i in 1..l {
        let t = &r * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swapi(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &mut [BigInt], k: usize, kmax: usize) {
    b.swap(k - 1, k - 2);
    for j in 1..k - 1 {
        let t = lam[k][j].clone();
        lam[k][j] = lam[k - 1][j].clone();
        lam[k - 1][j] = t;
    }
    let l = lam[k][k - 1].clone();
    let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
        lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k];
    }
    d[k - 1] = bb;
}
