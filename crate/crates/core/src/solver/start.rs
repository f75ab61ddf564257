use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::PolySystem;

/// `F_i(x) = gamma_i (x_i^{d_i} - 1)` with `d_i` the degree of `e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct StartSystem {
    degrees: Vec<u32>,
    gammas: Vec<Complex64>,
}

pub fn make_start_system<T: AsRef<PolySystem>>(sys: &T, seed: u64) -> StartSystem {
    let degrees = sys.as_ref().degrees();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gammas = degrees.iter().map(|_| Complex64::from_polar(1.0, 2.0 * PI * rng.gen::<f64>())).collect();
    StartSystem { degrees, gammas }
}

impl StartSystem {
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn gammas(&self) -> &[Complex64] {
        &self.gammas
    }

    pub fn root_count(&self) -> u128 {
        self.degrees.iter().map(|&d| d as u128).product()
    }

    /// Start root number `index` in mixed radix, first variable fastest.
    pub fn root(&self, index: u128) -> Vec<Complex64> {
        let mut k = index;
        self.degrees
            .iter()
            .map(|&d| {
                let j = (k % d as u128) as f64;
                k /= d as u128;
                Complex64::from_polar(1.0, 2.0 * PI * j / d as f64)
            })
            .collect()
    }

    pub fn roots(&self) -> impl Iterator<Item = Vec<Complex64>> + '_ {
        (0..self.root_count()).map(|i| self.root(i))
    }

    pub fn eval(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); x.len()];
        self.eval_into(x, &mut out, None);
        out
    }

    /// Values and the diagonal of the Jacobian.
    pub(crate) fn eval_into(&self, x: &[Complex64], vals: &mut [Complex64], diag: Option<&mut [Complex64]>) {
        for (i, (&d, g)) in self.degrees.iter().zip(&self.gammas).enumerate() {
            let p = x[i].powu(d - 1);
            vals[i] = g * (p * x[i] - 1.0);
        }
        if let Some(diag) = diag {
            for (i, (&d, g)) in self.degrees.iter().zip(&self.gammas).enumerate() {
                diag[i] = g * d as f64 * x[i].powu(d - 1);
            }
        }
    }
}
