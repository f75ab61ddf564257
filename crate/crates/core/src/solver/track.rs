//! Path tracking in projective coordinates `X = (X0, X1..Xn)` on a random
//! affine patch `a . X = 1`, so paths heading to infinity stay bounded and
//! show up as `X0 -> 0`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fast::{lu_solve, mag, FastSystem, Lu};
use super::start::StartSystem;
use super::{Predictor, Status, TrackConfig};

// Newton steps below this, relative to the iterate, count as converged.
const CORRECTOR_TOL: f64 = 1e-6;
// A first correction this small is accepted without a second iteration.
const FIRST_STEP_TOL: f64 = 1e-4;
const POLISH_TOL: f64 = 1e-13;
const POLISH_ITERS: usize = 8;
// Ill-conditioned regular endpoints stagnate at the double-precision noise
// floor; a step this small that no longer contracts also counts as converged.
const POLISH_NOISE_TOL: f64 = 1e-10;
// |X0| / |X| below this at the end of a path means a point at infinity.
const INFINITY_RATIO: f64 = 1e-7;
// The pivot threshold while tracking; the endpoint polish uses the
// configured precision.
const TRACK_PIVOT: f64 = 1e-15;

// Paths that stall before this time are retracked once on a finer schedule.
const END_ZONE: f64 = 0.999;
const RETRY_FACTOR: usize = 8;
// Smallest step inside the end zone. Paths to regular but ill-conditioned
// endpoints can move O(1) over the last 1e-5 of the homotopy.
const END_MIN_DT: f64 = 1e-10;

enum Run {
    Reached(Vec<Complex64>),
    // step halving exhausted at the given time
    Stalled(Vec<Complex64>, f64),
    // the divergence cutoff was crossed
    Escaped(Vec<Complex64>),
}

/// Endpoint of one homotopy path at double precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Endpoint {
    pub x: Vec<Complex64>,
    pub status: Status,
    pub residual: f64,
}

/// Both forms of the target system, built once and shared by trackers.
#[derive(Clone, Debug)]
pub struct TrackSystem {
    pub(crate) affine: FastSystem,
    pub(crate) projective: FastSystem,
    pub(crate) patch: Vec<Complex64>,
}

impl TrackSystem {
    pub fn new(sys: &crate::arith::PolySystem, seed: u64) -> Self {
        let affine = FastSystem::new(sys);
        let projective = FastSystem::homogenized(sys);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x9a7c_4000));
        let patch = (0..projective.nvars())
            .map(|_| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * rng.gen::<f64>()))
            .collect();
        TrackSystem { affine, projective, patch }
    }
}

pub(crate) struct Tracker<'a> {
    sys: &'a TrackSystem,
    ss: &'a StartSystem,
    cfg: &'a TrackConfig,
    // number of projective coordinates
    m: usize,
    vals: Vec<Complex64>,
    dt_vals: Vec<Complex64>,
    jac: Vec<Complex64>,
    lu: Lu,
    tmp: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

fn norm_inf(x: &[Complex64]) -> f64 {
    x.iter().map(|&z| mag(z)).fold(0.0, f64::max)
}

impl<'a> Tracker<'a> {
    pub fn new(sys: &'a TrackSystem, ss: &'a StartSystem, cfg: &'a TrackConfig) -> Self {
        let m = sys.projective.nvars();
        let z = Complex64::new(0.0, 0.0);
        Tracker { sys, ss, cfg, m, vals: vec![z; m], dt_vals: vec![z; m], jac: vec![z; m * m], lu: Lu::default(), tmp: Vec::new(), scratch: Vec::new() }
    }

    // H(X, t) into vals and dH/dt into dt_vals; dH/dX into jac on request
    fn homotopy(&mut self, x: &[Complex64], t: f64, with_jac: bool) {
        let (m, n) = (self.m, self.m - 1);
        let jac = if with_jac { Some(&mut self.jac[..]) } else { None };
        self.sys.projective.eval(x, &mut self.vals, jac, &mut self.scratch);
        let s = 1.0 - t;
        for i in 0..n {
            let d = self.ss.degrees()[i];
            let g = self.ss.gammas()[i];
            let (xi, x0) = (x[i + 1], x[0]);
            let (pi, p0) = (xi.powu(d - 1), x0.powu(d - 1));
            let f = g * (pi * xi - p0 * x0);
            let e = self.vals[i];
            self.vals[i] = e * t + f * s;
            self.dt_vals[i] = e - f;
            if with_jac {
                for j in 0..m {
                    self.jac[i * m + j] *= t;
                }
                self.jac[i * m + i + 1] += g * (d as f64) * pi * s;
                self.jac[i * m] -= g * (d as f64) * p0 * s;
            }
        }
        let mut patch = Complex64::new(-1.0, 0.0);
        for j in 0..m {
            patch += self.sys.patch[j] * x[j];
            if with_jac {
                self.jac[n * m + j] = self.sys.patch[j];
            }
        }
        self.vals[n] = patch;
        self.dt_vals[n] = Complex64::new(0.0, 0.0);
    }

    // Newton on H(., t) from the predicted point.
    fn correct(&mut self, x: &mut [Complex64], t: f64) -> bool {
        let mut last = f64::INFINITY;
        for k in 0..self.cfg.corrector_iters {
            self.homotopy(x, t, true);
            if !self.lu.factor(self.m, &self.jac, TRACK_PIVOT) {
                return false;
            }
            let mut dx = std::mem::take(&mut self.vals);
            self.lu.solve(&mut dx, &mut self.tmp);
            for (xi, d) in x.iter_mut().zip(&dx) {
                *xi -= d;
            }
            let step = norm_inf(&dx);
            self.vals = dx;
            if !step.is_finite() || step > last {
                return false;
            }
            let size = norm_inf(x);
            if step <= CORRECTOR_TOL * size || (k == 0 && step <= FIRST_STEP_TOL * size) {
                return true;
            }
            last = step;
        }
        false
    }

    fn lift(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut big = Vec::with_capacity(self.m);
        big.push(Complex64::new(1.0, 0.0));
        big.extend_from_slice(x);
        let s: Complex64 = big.iter().zip(&self.sys.patch).map(|(a, b)| a * b).sum();
        big.iter().map(|z| z / s).collect()
    }

    fn at_infinity(x: &[Complex64]) -> bool {
        x[0].norm() < INFINITY_RATIO * norm_inf(x)
    }

    fn affine(x: &[Complex64]) -> Vec<Complex64> {
        x[1..].iter().map(|z| z / x[0]).collect()
    }

    pub fn track(&mut self, start: Vec<Complex64>) -> Endpoint {
        let x = self.lift(&start);
        let mut run = self.run(x.clone(), self.cfg.steps, self.cfg.max_halvings);
        if let Run::Stalled(_, t) = run {
            if t < END_ZONE {
                run = self.run(x, self.cfg.steps * RETRY_FACTOR, self.cfg.max_halvings + 4);
            }
        }
        let failed = |x: &[Complex64], status| Endpoint { x: Self::affine(x), status, residual: f64::INFINITY };
        match run {
            Run::Reached(x) if Self::at_infinity(&x) => failed(&x, Status::Diverged),
            Run::Reached(x) => self.polish(Self::affine(&x)),
            Run::Escaped(x) => failed(&x, Status::Diverged),
            Run::Stalled(x, _) => {
                // a stall just short of t = 1 is often a finite regular
                // endpoint that Newton on the target system reaches directly
                let e = self.polish(Self::affine(&x));
                if e.status == Status::Converged {
                    e
                } else if x[0].norm() < 1e-3 * norm_inf(&x) {
                    failed(&x, Status::Diverged)
                } else {
                    failed(&x, Status::Singular)
                }
            }
        }
    }

    fn run(&mut self, mut x: Vec<Complex64>, steps: usize, max_halvings: u32) -> Run {
        let base = 1.0 / steps as f64;
        let min_dt = base / f64::powi(2.0, max_halvings as i32);
        let mut dt = base;
        let mut t = 0.0f64;
        let mut streak = 0;
        let zero = Complex64::new(0.0, 0.0);
        let mut v = vec![zero; self.m];
        if self.cfg.predictor == Predictor::Tangent {
            self.homotopy(&x, t, true);
            if !self.lu.factor(self.m, &self.jac, TRACK_PIVOT) {
                return Run::Stalled(x, t);
            }
        }
        // after the first step the corrector's last factorization, one
        // Newton step away from (x, t), stands in for the tangent's
        while t < 1.0 {
            if self.cfg.predictor == Predictor::Tangent {
                v.iter_mut().zip(&self.dt_vals).for_each(|(a, b)| *a = -b);
                self.lu.solve(&mut v, &mut self.tmp);
            }
            loop {
                let t1 = if t + dt >= 1.0 - 1e-15 { 1.0 } else { t + dt };
                let mut xp: Vec<Complex64> = x.iter().zip(&v).map(|(a, b)| a + b * (t1 - t)).collect();
                if self.correct(&mut xp, t1) {
                    x = xp;
                    t = t1;
                    streak += 1;
                    if streak >= 3 && dt < base {
                        dt = (dt * 2.0).min(base);
                        streak = 0;
                    }
                    break;
                }
                streak = 0;
                dt /= 2.0;
                let floor = if t >= END_ZONE { END_MIN_DT.min(min_dt) } else { min_dt };
                if dt < floor * 0.999 {
                    return Run::Stalled(x, t);
                }
            }
            if mag(x[0]) * self.cfg.divergence_cutoff < norm_inf(&x[1..]) {
                return Run::Escaped(x);
            }
        }
        Run::Reached(x)
    }

    fn polish(&mut self, mut x: Vec<Complex64>) -> Endpoint {
        let n = self.m - 1;
        let pivot = 10f64.powf(-(self.cfg.digits as f64) / 2.0);
        let mut vals = vec![Complex64::new(0.0, 0.0); n];
        let mut jac = vec![Complex64::new(0.0, 0.0); n * n];
        let mut converged = false;
        let mut prev = f64::INFINITY;
        for _ in 0..POLISH_ITERS {
            self.sys.affine.eval(&x, &mut vals, Some(&mut jac), &mut self.scratch);
            let mut dx = vals.clone();
            if !lu_solve(n, &mut jac, &mut dx, pivot) {
                break;
            }
            for (xi, d) in x.iter_mut().zip(&dx) {
                *xi -= d;
            }
            let rel = norm_inf(&dx) / (1.0 + norm_inf(&x));
            if rel <= POLISH_TOL || (rel <= POLISH_NOISE_TOL && rel > 0.25 * prev) {
                converged = true;
                break;
            }
            prev = rel;
        }
        self.sys.affine.eval(&x, &mut vals, None, &mut self.scratch);
        let residual = norm_inf(&vals);
        let status = if !(norm_inf(&x) <= self.cfg.divergence_cutoff) {
            Status::Diverged
        } else if converged && residual.is_finite() {
            Status::Converged
        } else {
            Status::Singular
        };
        Endpoint { x, status, residual }
    }
}
