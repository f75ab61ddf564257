//! Shortest-vector search: LLL followed by Schnorr-Euchner enumeration.

use num_bigint::BigInt;
use num_traits::Zero;

use super::lll::{lll, Reduced};
use crate::arith::{BigReal, IntMatrix};
use crate::error::{Error, Result};

const GS_DIGITS: u32 = 40;

struct Search {
    mu: Vec<Vec<BigReal>>,
    bstar: Vec<BigReal>,
    x: Vec<i64>,
    best: Option<(Vec<i64>, BigReal)>,
    bound: BigReal,
}

impl Search {
    fn new(red: &Reduced) -> Self {
        let n = red.basis.len();
        let r = |v: &BigInt| BigReal::from_bigint(v, GS_DIGITS);
        let bstar: Vec<BigReal> = (0..n).map(|i| &r(&red.d[i + 1]) / &r(&red.d[i])).collect();
        let mu = (0..n)
            .map(|i| (0..i).map(|j| &r(&red.lambda[i][j]) / &r(&red.d[j + 1])).collect())
            .collect();
        let bound = bstar[0].clone();
        Search { mu, bstar, x: vec![0; n], best: None, bound }
    }

    fn center(&self, i: usize) -> BigReal {
        let mut c = BigReal::zero(GS_DIGITS);
        for j in i + 1..self.x.len() {
            if self.x[j] != 0 {
                c = &c - &(&self.mu[j][i] * &BigReal::from_i64(self.x[j], GS_DIGITS));
            }
        }
        c
    }

    // partial squared length if x_i = v at this level, or None past the bound
    fn try_level(&self, i: usize, v: i64, c: &BigReal, above: &BigReal) -> Option<BigReal> {
        let diff = &BigReal::from_i64(v, GS_DIGITS) - c;
        let l = above + &(&(&diff * &diff) * &self.bstar[i]);
        (l < self.bound).then_some(l)
    }

    fn run(&mut self, i: usize, above: BigReal) {
        let c = self.center(i);
        let start = c.round().try_into().unwrap_or(0i64);
        for dir in [1i64, -1] {
            let mut v = if dir == 1 { start } else { start - 1 };
            while let Some(l) = self.try_level(i, v, &c, &above) {
                self.x[i] = v;
                if i == 0 {
                    if self.x.iter().any(|&t| t != 0) {
                        self.bound = l.clone();
                        self.best = Some((self.x.clone(), l));
                    }
                } else {
                    self.run(i - 1, l);
                }
                v += dir;
            }
        }
        self.x[i] = 0;
    }
}

/// Shortest vector found among the lattice generated by the rows of
/// `basis`; never longer than the first LLL-reduced vector.
pub fn shortest_row_vector(basis: Vec<Vec<BigInt>>) -> Result<(Vec<BigInt>, Reduced)> {
    if basis.iter().all(|r| r.iter().all(|x| x.is_zero())) {
        return Err(Error::InvalidInput("zero lattice".into()));
    }
    let red = lll(basis)?;
    let mut s = Search::new(&red);
    let n = red.basis.len();
    s.run(n - 1, BigReal::zero(GS_DIGITS));
    let v = match s.best {
        Some((x, _)) => {
            let dim = red.basis[0].len();
            let mut v = vec![BigInt::zero(); dim];
            for (coef, row) in x.iter().zip(&red.basis) {
                if *coef != 0 {
                    for (a, b) in v.iter_mut().zip(row) {
                        *a += b * BigInt::from(*coef);
                    }
                }
            }
            v
        }
        None => red.basis[0].clone(),
    };
    Ok((v, red))
}

/// Shortest vector candidate of the lattice generated by the columns of `b`.
pub fn shortest_vector_candidate(b: &IntMatrix) -> Result<Vec<BigInt>> {
    let cols = (0..b.cols()).map(|c| b.col(c)).collect();
    Ok(shortest_row_vector(cols)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm2(v: &[BigInt]) -> BigInt {
        v.iter().map(|x| x * x).sum()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    #[test]
    fn identity_gives_unit_vector() {
        let v = shortest_vector_candidate(&IntMatrix::identity(3)).unwrap();
        assert_eq!(norm2(&v), BigInt::from(1));
    }

    #[test]
    fn diagonal() {
        let v = shortest_vector_candidate(&m(&[&[5, 0, 0], &[0, 1, 0], &[0, 0, 7]])).unwrap();
        assert_eq!(v.iter().map(|x| x.clone() * x).collect::<Vec<_>>(), vec![0.into(), 1.into(), 0.into()]);
    }

    #[test]
    fn zero_matrix_errors() {
        assert!(shortest_vector_candidate(&IntMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn enumeration_beats_lll_when_possible() {
        // columns (1, 0, 0, 1000), (0, 1, 0, 1414), (0, 0, 1, 1732): short
        // combinations of the last coordinates exist
        let b = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1000, 1414, 1732]]);
        let v = shortest_vector_candidate(&b).unwrap();
        let red = lll((0..3).map(|c| b.col(c)).collect()).unwrap();
        assert!(norm2(&v) <= norm2(&red.basis[0]));
        // brute force over small coefficients
        let mut best = None::<BigInt>;
        for a in -20i64..=20 {
            for c in -20i64..=20 {
                for e in -20i64..=20 {
                    if (a, c, e) == (0, 0, 0) {
                        continue;
                    }
                    let w = [a, c, e, 1000 * a + 1414 * c + 1732 * e].map(BigInt::from);
                    let n = norm2(&w);
                    if best.as_ref().is_none_or(|b| &n < b) {
                        best = Some(n);
                    }
                }
            }
        }
        assert_eq!(norm2(&v), best.unwrap());
    }
}
