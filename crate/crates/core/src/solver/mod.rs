//! Homotopy continuation from a total-degree start system, Newton
//! refinement at high precision, and deduplication.

mod fast;
mod refine;
mod start;
mod track;

pub use fast::FastSystem;
pub use refine::{refine_point, RefineTrace, Refined};
pub use start::{make_start_system, StartSystem};
pub use track::{Endpoint, TrackSystem};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{BigComplex, PolySystem};
use crate::error::{Error, Result};
use track::Tracker;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Converged,
    Diverged,
    Singular,
    Duplicate,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::Diverged => "diverged",
            Status::Singular => "singular",
            Status::Duplicate => "duplicate",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "converged" => Ok(Status::Converged),
            "diverged" => Ok(Status::Diverged),
            "singular" => Ok(Status::Singular),
            "duplicate" => Ok(Status::Duplicate),
            _ => Err(Error::Parse(format!("unknown status {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predictor {
    /// The previous endpoint is the initial guess for the next step.
    Zero,
    /// Euler step along the path tangent.
    Tangent,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrackConfig {
    pub steps: usize,
    pub digits: u32,
    pub corrector_iters: usize,
    pub max_halvings: u32,
    pub divergence_cutoff: f64,
    pub seed: u64,
    pub target_digits: u32,
    pub dedup_exp: u32,
    pub max_refine_iter: usize,
    pub predictor: Predictor,
    /// Track only this fraction of the paths, chosen from the seed.
    pub sample: Option<f64>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Paths handed to a worker at a time.
    pub chunk: usize,
}

impl Default for TrackConfig {
    fn default() -> Self {
        TrackConfig {
            steps: 200,
            digits: 16,
            corrector_iters: 3,
            max_halvings: 10,
            divergence_cutoff: 1e10,
            seed: 1,
            target_digits: 5000,
            dedup_exp: 20,
            max_refine_iter: 40,
            predictor: Predictor::Tangent,
            sample: None,
            jobs: None,
            chunk: 64,
        }
    }
}

impl TrackConfig {
    pub fn validate(&self) -> Result<()> {
        if self.chunk == 0 {
            return Err(Error::InvalidInput("paths per worker must be at least 1".into()));
        }
        if self.steps == 0 {
            return Err(Error::InvalidInput("step count must be at least 1".into()));
        }
        if self.digits < 16 || self.target_digits < 16 {
            return Err(Error::InvalidInput("precision must be at least 16 digits".into()));
        }
        if let Some(f) = self.sample {
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::InvalidInput(format!("sample fraction {f} outside (0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericSolution {
    pub coords: Vec<BigComplex>,
    pub precision: u32,
    /// Upper bound on log10 of max |e_i| at the coordinates.
    pub residual_exp: i64,
    pub status: Status,
    pub path: Option<u64>,
}

impl NumericSolution {
    pub fn from_c64(x: &[Complex64], residual: f64, status: Status, path: Option<u64>) -> Self {
        NumericSolution {
            coords: x.iter().map(|z| BigComplex::from_c64(*z, 16)).collect(),
            precision: 16,
            residual_exp: exp_bound(residual.log10(), 16),
            status,
            path,
        }
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coords.iter().map(|z| z.to_c64()).collect()
    }

    /// Real and imaginary parts rounded to 30 decimal places.
    pub fn canonical_key(&self) -> Vec<BigInt> {
        self.coords
            .iter()
            .flat_map(|z| [z.re.round_to_places(30), z.im.round_to_places(30)])
            .collect()
    }
}

fn exp_bound(log10: f64, precision: u32) -> i64 {
    if log10.is_finite() {
        log10.ceil() as i64
    } else if log10 < 0.0 {
        -(precision as i64)
    } else {
        i64::MAX
    }
}

impl AsRef<PolySystem> for PolySystem {
    fn as_ref(&self) -> &PolySystem {
        self
    }
}

/// Tracks path `root_index` from the start system to the target system.
pub fn track_path<T: AsRef<PolySystem>>(sys: &T, ss: &StartSystem, root_index: u128, cfg: &TrackConfig) -> Result<NumericSolution> {
    if root_index >= ss.root_count() {
        return Err(Error::InvalidInput(format!("path {root_index} out of range")));
    }
    let ts = TrackSystem::new(sys.as_ref(), cfg.seed);
    let mut tracker = Tracker::new(&ts, ss, cfg);
    let e = tracker.track(ss.root(root_index));
    Ok(NumericSolution::from_c64(&e.x, e.residual, e.status, Some(root_index as u64)))
}

/// Scale-aware form of the refinement precondition `residual < 1e-8`:
/// the bound grows with the fourth power of the coordinate size.
pub fn refinable(x: &[Complex64], residual: f64) -> bool {
    let scale = x.iter().map(|z| z.norm()).fold(1.0, f64::max);
    residual < 1e-8 * scale.powi(4)
}

/// Refines `x0` by Newton's method to `target_digits`.
pub fn newton_refine<T: AsRef<PolySystem>>(sys: &T, x0: &NumericSolution, target_digits: u32, max_iter: usize) -> Result<NumericSolution> {
    let x64 = x0.to_c64();
    let mut scratch = Vec::new();
    let fast = FastSystem::new(sys.as_ref());
    let mut vals = vec![Complex64::new(0.0, 0.0); x64.len()];
    fast.eval(&x64, &mut vals, None, &mut scratch);
    let residual = vals.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !refinable(&x64, residual) {
        return Err(Error::InvalidInput(format!("starting residual {residual:e} too large to refine")));
    }
    let r = refine_point(sys.as_ref(), &x0.coords, target_digits, max_iter, None)?;
    Ok(finish(r, target_digits, x0.path))
}

fn finish(r: Refined, target_digits: u32, path: Option<u64>) -> NumericSolution {
    let residual_exp = exp_bound(r.residual_exp, target_digits);
    let ok = r.converged && residual_exp < -(target_digits as i64 - 30);
    NumericSolution {
        coords: r.x,
        precision: target_digits,
        residual_exp,
        status: if ok { Status::Converged } else { Status::Singular },
        path,
    }
}

/// Counts of path outcomes alongside the distinct solutions.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveOutcome {
    pub solutions: Vec<NumericSolution>,
    pub paths: u64,
    pub converged: u64,
    pub diverged: u64,
    pub singular: u64,
    pub duplicates: u64,
    pub refine_failed: u64,
}

/// Path indices to track: all of them, or a seeded sample.
pub fn selected_paths(ss: &StartSystem, cfg: &TrackConfig) -> Vec<u128> {
    let total = ss.root_count();
    match cfg.sample {
        None => (0..total).collect(),
        Some(frac) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_5a3b_1e00_0000);
            (0..total).filter(|_| rng.gen::<f64>() < frac).collect()
        }
    }
}

fn run_pool<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    #[cfg(feature = "parallel")]
    {
        match jobs {
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
            None => Ok(f()),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        Ok(f())
    }
}

fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Tracks the selected paths at double precision.
pub fn track_all<T: AsRef<PolySystem>>(sys: &T, cfg: &TrackConfig) -> Result<Vec<(u128, Endpoint)>> {
    cfg.validate()?;
    let ss = make_start_system(sys, cfg.seed);
    let fast = TrackSystem::new(sys.as_ref(), cfg.seed);
    let paths = selected_paths(&ss, cfg);
    run_pool(cfg.jobs, || {
        let chunks: Vec<&[u128]> = paths.chunks(cfg.chunk).collect();
        par_map(&chunks, |chunk| {
            let mut tracker = Tracker::new(&fast, &ss, cfg);
            chunk.iter().map(|&i| (i, tracker.track(ss.root(i)))).collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect()
    })
}

fn cmp_solutions(a: &NumericSolution, b: &NumericSolution) -> Ordering {
    a.canonical_key().cmp(&b.canonical_key()).then(a.path.cmp(&b.path))
}

fn close(a: (&NumericSolution, &[Complex64]), b: (&NumericSolution, &[Complex64]), exp: f64) -> bool {
    let coarse = a.1.iter().zip(b.1).all(|(x, y)| (x - y).norm() <= 1e-6 * (1.0 + x.norm()));
    coarse
        && a.0.coords.iter().zip(&b.0.coords).all(|(x, y)| {
            let d = x - y;
            d.is_zero() || d.log10_norm_inf() < -exp
        })
}

/// Splits canonically sorted solutions into distinct ones and duplicates.
pub fn dedup(mut sols: Vec<NumericSolution>, dedup_exp: u32) -> (Vec<NumericSolution>, Vec<NumericSolution>) {
    sols.sort_by(cmp_solutions);
    let mut kept: Vec<(NumericSolution, Vec<Complex64>)> = Vec::new();
    let mut dups = Vec::new();
    for s in sols {
        let x = s.to_c64();
        if kept.iter().any(|(k, kx)| close((k, kx), (&s, &x), dedup_exp as f64)) {
            dups.push(NumericSolution { status: Status::Duplicate, ..s });
        } else {
            kept.push((s, x));
        }
    }
    (kept.into_iter().map(|(s, _)| s).collect(), dups)
}

/// Tracks every path, refines converged endpoints, removes duplicates and
/// sorts canonically.
pub fn solve_all<T: AsRef<PolySystem> + Sync>(sys: &T, cfg: &TrackConfig) -> Result<SolveOutcome> {
    let ends = track_all(sys, cfg)?;
    let mut out = SolveOutcome { paths: ends.len() as u64, ..Default::default() };
    let mut good = Vec::new();
    for (i, e) in ends {
        match e.status {
            Status::Converged if refinable(&e.x, e.residual) => {
                out.converged += 1;
                good.push(NumericSolution::from_c64(&e.x, e.residual, e.status, Some(i as u64)));
            }
            Status::Diverged => out.diverged += 1,
            _ => out.singular += 1,
        }
    }
    let refined: Vec<Result<NumericSolution>> = run_pool(cfg.jobs, || {
        par_map(&good, |s| {
            let r = refine_point(sys.as_ref(), &s.coords, cfg.target_digits, cfg.max_refine_iter, None)?;
            Ok(finish(r, cfg.target_digits, s.path))
        })
    })?;
    let mut ok = Vec::new();
    for r in refined {
        let s = r?;
        if s.status == Status::Converged {
            ok.push(s);
        } else {
            out.refine_failed += 1;
        }
    }
    let (kept, dups) = dedup(ok, cfg.dedup_exp);
    out.duplicates = dups.len() as u64;
    out.solutions = kept;
    Ok(out)
}
