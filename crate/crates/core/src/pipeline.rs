//! Scheme, solve, reconstruct and verify chained into one report.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::{CurveJson, OrbitJson};
use crate::recon::{reconstruct_orbits, OrbitStatus, ReconOptions, TorsionOrbit};
use crate::scheme::{build_torsion_scheme, HyperellipticCurve, Parity, TorsionScheme};
use crate::solver::{dedup, solve_all, NumericSolution, SolveOutcome, TrackConfig};
use crate::verify::{census, multi_prime_check, negation_closure_check, residual_report, Census, ModularCheck};

/// Fraction of paths tracked in smoke mode.
pub const SMOKE_FRACTION: f64 = 0.02;

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub digits: u32,
    pub steps: usize,
    pub seed: u64,
    pub dmax: usize,
    pub kprime_offset: u32,
    pub dedup_exp: u32,
    pub primes: usize,
    pub paths_per_worker: usize,
    pub jobs: Option<usize>,
    /// Track a seeded sample of the paths and check only residuals and
    /// distinctness.
    pub smoke: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            digits: 1000,
            steps: 200,
            seed: 1,
            dmax: 8,
            kprime_offset: 50,
            dedup_exp: 20,
            primes: 3,
            paths_per_worker: 64,
            jobs: None,
            smoke: false,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.digits < 100 {
            return Err(Error::InvalidInput("reconstruction needs at least 100 digits".into()));
        }
        if self.kprime_offset == 0 || self.kprime_offset >= self.digits {
            return Err(Error::InvalidInput(format!("k' offset {} must lie in 1..{}", self.kprime_offset, self.digits)));
        }
        if self.steps == 0 || self.dmax == 0 || self.dedup_exp == 0 || self.primes == 0 || self.paths_per_worker == 0 {
            return Err(Error::InvalidInput("steps, dmax, dedup exponent, primes and paths per worker must be positive".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::InvalidInput("jobs must be positive".into()));
        }
        Ok(())
    }

    pub fn track_config(&self) -> TrackConfig {
        TrackConfig {
            steps: self.steps,
            seed: self.seed,
            target_digits: self.digits,
            dedup_exp: self.dedup_exp,
            sample: self.smoke.then_some(SMOKE_FRACTION),
            jobs: self.jobs,
            chunk: self.paths_per_worker,
            ..TrackConfig::default()
        }
    }

    pub fn recon_options(&self) -> ReconOptions {
        ReconOptions { dmax: self.dmax, digits: Some(self.digits), kprime_offset: self.kprime_offset, ..ReconOptions::default() }
    }

    /// Residuals must lie below `10^-tol_exp`; 900 at 1000 digits.
    pub fn residual_tol_exp(&self) -> u32 {
        self.digits - self.digits / 10
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveSummary {
    pub paths: u64,
    pub converged: u64,
    pub diverged: u64,
    pub singular: u64,
    pub duplicates: u64,
    pub refine_failed: u64,
    pub distinct: usize,
}

impl From<&SolveOutcome> for SolveSummary {
    fn from(o: &SolveOutcome) -> Self {
        SolveSummary {
            paths: o.paths,
            converged: o.converged,
            diverged: o.diverged,
            singular: o.singular,
            duplicates: o.duplicates,
            refine_failed: o.refine_failed,
            distinct: o.solutions.len(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualSummary {
    pub tol_exp: u32,
    pub worst_exp: Option<f64>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusSummary {
    pub total: usize,
    pub expected: usize,
    pub orbit_sizes: Vec<usize>,
    pub unreconstructed: usize,
    pub incomplete_orbits: usize,
    pub consistent: bool,
    pub passed: bool,
}

impl From<&Census> for CensusSummary {
    fn from(c: &Census) -> Self {
        CensusSummary {
            total: c.total,
            expected: c.expected,
            orbit_sizes: c.orbit_sizes.clone(),
            unreconstructed: c.unreconstructed,
            incomplete_orbits: c.incomplete_orbits,
            consistent: c.consistent,
            passed: c.complete(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeSummary {
    pub prime: u64,
    pub roots: Vec<u64>,
    pub passed: bool,
}

impl From<&ModularCheck> for PrimeSummary {
    fn from(c: &ModularCheck) -> Self {
        PrimeSummary { prime: c.prime, roots: c.roots.iter().map(|r| r.root).collect(), passed: c.passed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSummary {
    pub orbit: OrbitJson,
    pub modular: Vec<PrimeSummary>,
    /// Set when no modular check could run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NegationSummary {
    pub checked: usize,
    pub unmatched: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub curve: CurveJson,
    pub smoke: bool,
    pub solve: SolveSummary,
    pub residuals: ResidualSummary,
    /// Distinct solutions pairwise separated at the dedup tolerance.
    pub distinct_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusSummary>,
    pub orbits: Vec<OrbitSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negation: Option<NegationSummary>,
    pub passed: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// Verifies orbits at `count` primes each.
pub fn check_orbits(ts: &TorsionScheme, orbits: &[TorsionOrbit], count: usize) -> Vec<OrbitSummary> {
    orbits
        .iter()
        .map(|o| {
            let (modular, error) = if o.status == OrbitStatus::Unresolved {
                (Vec::new(), Some("unresolved orbit".to_string()))
            } else {
                match multi_prime_check(ts, o, count) {
                    Ok(cs) => (cs.iter().map(PrimeSummary::from).collect(), None),
                    Err(e) => (Vec::new(), Some(e.to_string())),
                }
            };
            let passed = error.is_none() && modular.len() == count && modular.iter().all(|m: &PrimeSummary| m.passed);
            OrbitSummary { orbit: o.into(), modular, error, passed }
        })
        .collect()
}

/// Runs every stage on `curve`. The solutions and orbits are returned
/// alongside the report for callers that save them.
pub fn run_pipeline(curve: &HyperellipticCurve, cfg: &PipelineConfig) -> Result<(Report, Vec<NumericSolution>, Vec<TorsionOrbit>)> {
    cfg.validate()?;
    let ts = build_torsion_scheme(curve)?;
    let outcome = solve_all(&ts, &cfg.track_config())?;
    let sols = outcome.solutions.clone();
    let res = residual_report(&ts, &sols, cfg.residual_tol_exp())?;
    let residuals = ResidualSummary { tol_exp: res.tol_exp, worst_exp: (!sols.is_empty()).then(|| res.worst()), passed: res.passed };
    let (_, again) = dedup(sols.clone(), cfg.dedup_exp);
    let distinct_ok = again.is_empty();

    let (census_summary, orbits, orbit_summaries, negation) = if cfg.smoke {
        (None, Vec::new(), Vec::new(), None)
    } else {
        let orbits = reconstruct_orbits(&sols, &cfg.recon_options())?;
        let summaries = check_orbits(&ts, &orbits, cfg.primes);
        let c = census(&sols, &orbits);
        let negation = match ts.parity() {
            Parity::Odd => {
                let n = negation_closure_check(&sols, Parity::Odd, 1e-6)?;
                Some(NegationSummary { checked: n.checked, unmatched: n.unmatched.len(), passed: n.passed() })
            }
            Parity::Even => None,
        };
        (Some(CensusSummary::from(&c)), orbits, summaries, negation)
    };
    let passed = residuals.passed
        && distinct_ok
        && census_summary.as_ref().is_none_or(|c| c.passed)
        && orbit_summaries.iter().all(|o| o.passed)
        && negation.as_ref().is_none_or(|n| n.passed);
    let report = Report {
        curve: curve.into(),
        smoke: cfg.smoke,
        solve: (&outcome).into(),
        residuals,
        distinct_ok,
        census: census_summary,
        orbits: orbit_summaries,
        negation,
        passed,
    };
    Ok((report, sols, orbits))
}
