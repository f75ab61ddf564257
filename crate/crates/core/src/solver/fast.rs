//! Flat double-precision evaluator used while tracking paths.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::arith::{MultiPoly, PolySystem};

#[derive(Clone, Debug)]
struct Term {
    coeff: f64,
    start: u32,
    len: u32,
}

#[derive(Clone, Debug)]
struct FlatPoly {
    terms: Vec<Term>,
}

#[derive(Clone, Debug)]
pub struct FastSystem {
    n: usize,
    max_exp: Vec<usize>,
    factors: Vec<(u32, u32)>,
    equations: Vec<FlatPoly>,
    jacobian: Vec<(usize, usize, FlatPoly)>,
}

impl FastSystem {
    pub fn new(sys: &PolySystem) -> Self {
        Self::from_parts(sys.nvars(), sys.equations(), sys.jacobian())
    }

    /// Equations `e_i` homogenized to their own total degree with a new
    /// variable 0, followed by the original variables.
    pub fn homogenized(sys: &PolySystem) -> Self {
        let n = sys.nvars() + 1;
        let eqs: Vec<MultiPoly> = sys
            .equations()
            .iter()
            .map(|e| {
                let d = e.total_degree();
                MultiPoly::from_terms(
                    n,
                    e.terms().map(|(ex, c)| {
                        let mut v = Vec::with_capacity(n);
                        v.push(d - ex.iter().sum::<u32>());
                        v.extend_from_slice(ex);
                        (v, c.clone())
                    }),
                )
            })
            .collect();
        let jac: Vec<Vec<MultiPoly>> = eqs.iter().map(|e| (0..n).map(|j| e.derivative(j)).collect()).collect();
        Self::from_parts(n, &eqs, &jac)
    }

    fn from_parts(n: usize, equations: &[MultiPoly], jacobian_in: &[Vec<MultiPoly>]) -> Self {
        let max_exp = (0..n)
            .map(|v| equations.iter().map(|e| e.max_exponent(v) as usize).max().unwrap_or(0))
            .collect();
        let mut factors = Vec::new();
        let mut flat = |p: &MultiPoly| {
            let terms = p
                .terms()
                .map(|(e, c)| {
                    let start = factors.len() as u32;
                    for (v, &k) in e.iter().enumerate() {
                        if k > 0 {
                            factors.push((v as u32, k));
                        }
                    }
                    let coeff = c.to_f64().unwrap_or(f64::NAN);
                    Term { coeff, start, len: factors.len() as u32 - start }
                })
                .collect();
            FlatPoly { terms }
        };
        let equations = equations.iter().map(&mut flat).collect();
        let mut jacobian = Vec::new();
        for (i, row) in jacobian_in.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if !p.is_zero() {
                    jacobian.push((i, j, flat(p)));
                }
            }
        }
        FastSystem { n, max_exp, factors, equations, jacobian }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn nequations(&self) -> usize {
        self.equations.len()
    }

    fn powers(&self, x: &[Complex64], pw: &mut Vec<Complex64>, stride: usize) {
        pw.clear();
        pw.resize(self.n * stride, Complex64::new(1.0, 0.0));
        for v in 0..self.n {
            for k in 1..=self.max_exp[v] {
                pw[v * stride + k] = pw[v * stride + k - 1] * x[v];
            }
        }
    }

    fn eval_poly(&self, p: &FlatPoly, pw: &[Complex64], stride: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &p.terms {
            let mut m = Complex64::new(t.coeff, 0.0);
            for &(v, k) in &self.factors[t.start as usize..(t.start + t.len) as usize] {
                m *= pw[v as usize * stride + k as usize];
            }
            acc += m;
        }
        acc
    }

    /// Writes `E(x)` into `vals` and `dE(x)` (row-major) into `jac`.
    pub fn eval(&self, x: &[Complex64], vals: &mut [Complex64], jac: Option<&mut [Complex64]>, scratch: &mut Vec<Complex64>) {
        let stride = self.max_exp.iter().copied().max().unwrap_or(0) + 1;
        self.powers(x, scratch, stride);
        for (i, e) in self.equations.iter().enumerate() {
            vals[i] = self.eval_poly(e, scratch, stride);
        }
        if let Some(jac) = jac {
            jac.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            for (i, j, p) in &self.jacobian {
                jac[i * self.n + j] = self.eval_poly(p, scratch, stride);
            }
        }
    }
}

/// max(|re|, |im|), within a factor sqrt 2 of the modulus and much cheaper.
#[inline]
pub fn mag(z: Complex64) -> f64 {
    z.re.abs().max(z.im.abs())
}

/// LU factors with row pivoting, stored in place.
#[derive(Clone, Debug, Default)]
pub struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl Lu {
    /// Factors the row-major `n x n` matrix `a`. Returns `false` when a
    /// pivot falls below `rel_tol` times the largest entry.
    pub fn factor(&mut self, n: usize, a: &[Complex64], rel_tol: f64) -> bool {
        self.n = n;
        self.lu.clear();
        self.lu.extend_from_slice(a);
        self.perm.clear();
        self.perm.extend(0..n);
        let lu = &mut self.lu;
        let scale = lu.iter().map(|&z| mag(z)).fold(0.0, f64::max);
        if !(scale > 0.0) || !scale.is_finite() {
            return false;
        }
        let floor = scale * rel_tol;
        for col in 0..n {
            let mut piv = col;
            let mut best = mag(lu[col * n + col]);
            for r in col + 1..n {
                let m = mag(lu[r * n + col]);
                if m > best {
                    best = m;
                    piv = r;
                }
            }
            if !(best >= floor) {
                return false;
            }
            if piv != col {
                for c in 0..n {
                    lu.swap(col * n + c, piv * n + c);
                }
                self.perm.swap(col, piv);
            }
            let inv = lu[col * n + col].inv();
            let (top, rest) = lu.split_at_mut((col + 1) * n);
            let prow = &top[col * n + col + 1..col * n + n];
            for row in rest.chunks_exact_mut(n) {
                let f = row[col] * inv;
                row[col] = f;
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for (x, p) in row[col + 1..].iter_mut().zip(prow) {
                    *x -= f * p;
                }
            }
        }
        true
    }

    /// Overwrites `b` with the solution of `a x = b`.
    pub fn solve(&self, b: &mut [Complex64], tmp: &mut Vec<Complex64>) {
        let n = self.n;
        tmp.clear();
        tmp.extend(self.perm.iter().map(|&p| b[p]));
        for r in 0..n {
            let mut acc = tmp[r];
            for c in 0..r {
                acc -= self.lu[r * n + c] * tmp[c];
            }
            tmp[r] = acc;
        }
        for r in (0..n).rev() {
            let mut acc = tmp[r];
            for c in r + 1..n {
                acc -= self.lu[r * n + c] * tmp[c];
            }
            tmp[r] = acc / self.lu[r * n + r];
        }
        b.copy_from_slice(tmp);
    }
}

/// Solves `a x = b` in place (`b` becomes `x`) with partial pivoting.
pub fn lu_solve(n: usize, a: &mut [Complex64], b: &mut [Complex64], rel_tol: f64) -> bool {
    let mut lu = Lu::default();
    if !lu.factor(n, a, rel_tol) {
        return false;
    }
    lu.solve(b, &mut Vec::new());
    true
}
