//! Square polynomial systems and their compiled evaluators.

use super::complex::Scalar;
use super::multipoly::MultiPoly;
use crate::error::{Error, Result};

/// `n` polynomial equations in `n` unknowns together with the symbolic
/// Jacobian `jacobian[i][j] = d e_i / d x_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    nvars: usize,
    equations: Vec<MultiPoly>,
    jacobian: Vec<Vec<MultiPoly>>,
}

impl PolySystem {
    pub fn new(equations: Vec<MultiPoly>) -> Result<Self> {
        let n = equations.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty system".into()));
        }
        if let Some(bad) = equations.iter().find(|e| e.nvars() != n) {
            return Err(Error::InvalidInput(format!(
                "system is not square: {} equations, an equation in {} variables",
                n,
                bad.nvars()
            )));
        }
        let jacobian = equations.iter().map(|e| (0..n).map(|j| e.derivative(j)).collect()).collect();
        Ok(PolySystem { nvars: n, equations, jacobian })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }

    pub fn jacobian(&self) -> &[Vec<MultiPoly>] {
        &self.jacobian
    }

    /// Total degree of each equation.
    pub fn degrees(&self) -> Vec<u32> {
        self.equations.iter().map(|e| e.total_degree()).collect()
    }

    /// Bezout number: product of the equation degrees.
    pub fn total_degree(&self) -> u128 {
        self.degrees().iter().map(|&d| d as u128).product()
    }

    pub fn compile<S: Scalar>(&self, proto: &S) -> CompiledSystem<S> {
        CompiledSystem::new(self, proto)
    }
}

#[derive(Clone, Debug)]
struct CompiledPoly<S> {
    // (coefficient, [(variable, exponent)])
    terms: Vec<(S, Vec<(usize, usize)>)>,
}

impl<S: Scalar> CompiledPoly<S> {
    fn new(p: &MultiPoly, proto: &S) -> Self {
        let terms = p
            .terms()
            .map(|(e, c)| {
                let vars = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, &k)| (v, k as usize))
                    .collect();
                (proto.rational_like(c), vars)
            })
            .collect();
        CompiledPoly { terms }
    }

    fn eval(&self, pows: &[Vec<S>], zero: &S) -> S {
        let mut acc = zero.clone();
        for (c, vars) in &self.terms {
            let mut t = c.clone();
            for &(v, k) in vars {
                t = t * &pows[v][k];
            }
            acc = acc + t;
        }
        acc
    }
}

/// A [`PolySystem`] with coefficients converted to a scalar type, evaluated
/// through per-variable power tables.
#[derive(Clone, Debug)]
pub struct CompiledSystem<S> {
    n: usize,
    max_exp: Vec<usize>,
    equations: Vec<CompiledPoly<S>>,
    // (row, col, entry) for the structurally nonzero Jacobian entries
    jacobian: Vec<(usize, usize, CompiledPoly<S>)>,
    zero: S,
}

impl<S: Scalar> CompiledSystem<S> {
    pub fn new(sys: &PolySystem, proto: &S) -> Self {
        let n = sys.nvars();
        let max_exp = (0..n)
            .map(|v| sys.equations().iter().map(|e| e.max_exponent(v) as usize).max().unwrap_or(0))
            .collect();
        let equations = sys.equations().iter().map(|e| CompiledPoly::new(e, proto)).collect();
        let mut jacobian = Vec::new();
        for (i, row) in sys.jacobian().iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if !entry.is_zero() {
                    jacobian.push((i, j, CompiledPoly::new(entry, proto)));
                }
            }
        }
        CompiledSystem { n, max_exp, equations, jacobian, zero: proto.zero_like() }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    fn powers(&self, x: &[S]) -> Vec<Vec<S>> {
        x.iter()
            .zip(&self.max_exp)
            .map(|(xv, &m)| {
                let mut row = Vec::with_capacity(m + 1);
                row.push(xv.one_like());
                for k in 1..=m {
                    let next = row[k - 1].clone() * xv;
                    row.push(next);
                }
                row
            })
            .collect()
    }

    pub fn eval(&self, x: &[S]) -> Vec<S> {
        let zero = x[0].zero_like();
        let pows = self.powers(x);
        self.equations.iter().map(|e| e.eval(&pows, &zero)).collect()
    }

    /// Values and the dense Jacobian matrix at `x`.
    pub fn eval_with_jacobian(&self, x: &[S]) -> (Vec<S>, Vec<Vec<S>>) {
        let zero = x[0].zero_like();
        let pows = self.powers(x);
        let vals = self.equations.iter().map(|e| e.eval(&pows, &zero)).collect();
        let mut jac = vec![vec![zero.clone(); self.n]; self.n];
        for (i, j, p) in &self.jacobian {
            jac[*i][*j] = p.eval(&pows, &zero);
        }
        (vals, jac)
    }

    pub fn prototype(&self) -> &S {
        &self.zero
    }
}
