//! Independent checks on solved and reconstructed torsion points.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::arith::eval_multipoly;
use crate::arith::multipoly::{int_mod, invmod, mulmod};
use crate::error::{Error, Result};
use crate::recon::{OrbitStatus, TorsionOrbit};
use crate::scheme::{Parity, TorsionScheme, NVARS};
use crate::solver::{NumericSolution, Status};

/// `|J[3]| - 1` for a genus-3 Jacobian.
pub const EXPECTED_POINTS: usize = 728;

/// Residual exponents `log10 max_i |e_i|`, one per solution.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub exponents: Vec<f64>,
    pub tol_exp: u32,
    pub passed: bool,
}

impl ResidualReport {
    pub fn worst(&self) -> f64 {
        self.exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Re-evaluates every equation at each solution's own precision.
pub fn residual_report(ts: &TorsionScheme, solutions: &[NumericSolution], tol_exp: u32) -> Result<ResidualReport> {
    let mut exponents = Vec::with_capacity(solutions.len());
    for s in solutions {
        let mut worst = f64::NEG_INFINITY;
        for e in ts.equations() {
            let v = eval_multipoly(e, &s.coords, s.precision)?;
            if !v.is_zero() {
                worst = worst.max(v.log10_norm_inf());
            }
        }
        exponents.push(worst);
    }
    let passed = exponents.iter().all(|&e| e < -(tol_exp as f64));
    Ok(ResidualReport { exponents, tol_exp, passed })
}

/// Outcome at one root of the minimal polynomial mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCheck {
    pub root: u64,
    /// `a1..a10` in F_p.
    pub point: Vec<u64>,
    /// 1-based indices of equations that did not vanish.
    pub failed_equations: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularCheck {
    pub prime: u64,
    pub roots: Vec<RootCheck>,
    pub passed: bool,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn divides(p: u64, n: &BigInt) -> bool {
    (n % BigInt::from(p)).is_zero()
}

/// Why `p` may not be used for `orbit`, or `None` when it is admissible.
pub fn inadmissible_reason(ts: &TorsionScheme, orbit: &TorsionOrbit, p: u64) -> Option<String> {
    if p <= 3 || !is_prime(p) {
        return Some(format!("{p} is not a prime above 3"));
    }
    let Some(m) = &orbit.minpoly else {
        return Some("orbit has no minimal polynomial".into());
    };
    if divides(p, &m.leading()) || divides(p, &m.constant()) {
        return Some(format!("{p} divides the leading or constant coefficient of the minimal polynomial"));
    }
    if let Some(r) = orbit.relations.iter().find(|r| divides(p, &r.den)) {
        return Some(format!("{p} divides the denominator {} of the a{} relation", r.den, r.target));
    }
    let curve = ts.curve();
    if divides(p, &curve.denominator()) || divides(p, &curve.discriminant_resultant()) {
        return Some(format!("{p} divides the discriminant or a denominator of f"));
    }
    if m.roots_mod(p).is_empty() {
        return Some(format!("minimal polynomial has no root mod {p}"));
    }
    None
}

/// The smallest `count` admissible primes above 3, searching up to `limit`.
pub fn select_primes(ts: &TorsionScheme, orbit: &TorsionOrbit, count: usize, limit: u64) -> Vec<u64> {
    (5..=limit).filter(|&p| inadmissible_reason(ts, orbit, p).is_none()).take(count).collect()
}

fn poly_mod(coeffs: &[BigInt], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, c| (mulmod(acc, x, p) + int_mod(c, p)) % p)
}

// Solves equation `eq` for variable `v`, which it must contain linearly once
// earlier unknowns are fixed. Later unknowns are absent from it.
fn solve_linear_mod(ts: &TorsionScheme, eq: usize, v: usize, pt: &mut [u64], p: u64) -> Result<()> {
    let e = &ts.equations()[eq];
    let mut at = |val: u64| {
        pt[v] = val;
        e.eval_mod(pt, p).ok_or_else(|| Error::Inconclusive(format!("a coefficient denominator vanishes mod {p}")))
    };
    let (e0, e1, e2) = (at(0)?, at(1)?, at(2)?);
    let slope = (e1 + p - e0) % p;
    if (e2 + p - e1) % p != slope {
        return Err(Error::InvalidInput(format!("equation {} is not linear in a{}", eq + 1, v + 1)));
    }
    let inv = invmod(slope, p).ok_or_else(|| Error::Inconclusive(format!("zero pivot for a{} mod {p}", v + 1)))?;
    pt[v] = mulmod((p - e0) % p, inv, p);
    Ok(())
}

/// Checks an orbit's exact description against the scheme in F_p.
///
/// For each root `r` of the minimal polynomial mod p, `a1 = r` and
/// `a2..a6` come from the relations; `a7..a10` are solved from the
/// coefficients of `x^9..x^6`, each linear in one new unknown. All ten
/// equations must then vanish.
pub fn modular_point_check(ts: &TorsionScheme, orbit: &TorsionOrbit, p: u64) -> Result<ModularCheck> {
    if let Some(why) = inadmissible_reason(ts, orbit, p) {
        return Err(Error::InvalidInput(why));
    }
    let m = orbit.minpoly.as_ref().expect("admissible orbits have a minimal polynomial");
    let mut rel = vec![None; 5];
    for r in &orbit.relations {
        if !(2..=6).contains(&r.target) {
            return Err(Error::InvalidInput(format!("relation target a{} outside a2..a6", r.target)));
        }
        rel[r.target - 2] = Some(r);
    }
    if rel.iter().any(|r| r.is_none()) {
        return Err(Error::InvalidInput("orbit needs relations for all of a2..a6".into()));
    }
    let mut roots = Vec::new();
    for r in m.roots_mod(p) {
        let mut pt = vec![0u64; NVARS];
        pt[0] = r;
        for (j, rl) in rel.iter().flatten().enumerate() {
            let inv = invmod(int_mod(&rl.den, p), p).expect("admissible prime");
            pt[j + 1] = mulmod(poly_mod(&rl.coeffs, r, p), inv, p);
        }
        // x^9 holds a7 alone in both parities; x^8, x^7, x^6 then bring in
        // a8, a9, a10 with pivot 3 a7
        for (k, v) in (6..10).enumerate() {
            solve_linear_mod(ts, 9 - k, v, &mut pt, p)?;
        }
        let mut failed = Vec::new();
        for (i, e) in ts.equations().iter().enumerate() {
            match e.eval_mod(&pt, p) {
                Some(0) => {}
                _ => failed.push(i + 1),
            }
        }
        roots.push(RootCheck { root: r, point: pt, failed_equations: failed });
    }
    let passed = !roots.is_empty() && roots.iter().all(|r| r.failed_equations.is_empty());
    Ok(ModularCheck { prime: p, roots, passed })
}

/// Runs [`modular_point_check`] at the first `count` admissible primes,
/// skipping primes where the triangular solve is inconclusive.
pub fn multi_prime_check(ts: &TorsionScheme, orbit: &TorsionOrbit, count: usize) -> Result<Vec<ModularCheck>> {
    const LIMIT: u64 = 100_000;
    let mut out = Vec::new();
    let mut p = 4;
    while out.len() < count {
        p += 1;
        if p > LIMIT {
            return Err(Error::NoCandidate(format!("fewer than {count} usable primes below {LIMIT}")));
        }
        if inadmissible_reason(ts, orbit, p).is_some() {
            continue;
        }
        match modular_point_check(ts, orbit, p) {
            Ok(c) => out.push(c),
            Err(Error::Inconclusive(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Solution and orbit counts against `3^6 - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    /// Distinct converged solutions.
    pub total: usize,
    pub expected: usize,
    /// Members per resolved orbit, ascending.
    pub orbit_sizes: Vec<usize>,
    /// Converged solutions in no resolved orbit.
    pub unreconstructed: usize,
    pub incomplete_orbits: usize,
    /// `total == sum(orbit_sizes) + unreconstructed`.
    pub consistent: bool,
}

impl Census {
    pub fn complete(&self) -> bool {
        self.total == self.expected && self.consistent && self.unreconstructed == 0 && self.incomplete_orbits == 0
    }
}

pub fn census(solutions: &[NumericSolution], orbits: &[TorsionOrbit]) -> Census {
    let converged: Vec<usize> = (0..solutions.len()).filter(|&i| solutions[i].status == Status::Converged).collect();
    let resolved: Vec<&TorsionOrbit> = orbits.iter().filter(|o| o.status != OrbitStatus::Unresolved).collect();
    let mut orbit_sizes: Vec<usize> = resolved.iter().map(|o| o.members.len()).collect();
    orbit_sizes.sort_unstable();
    let in_orbit = |i: &usize| resolved.iter().any(|o| o.members.contains(i));
    let unreconstructed = converged.iter().filter(|i| !in_orbit(i)).count();
    let total = converged.len();
    Census {
        total,
        expected: EXPECTED_POINTS,
        consistent: total == orbit_sizes.iter().sum::<usize>() + unreconstructed,
        orbit_sizes,
        unreconstructed,
        incomplete_orbits: resolved.iter().filter(|o| o.status != OrbitStatus::Complete).count(),
    }
}

/// Result of checking `(a1, a2..a6, a7..a10) -> (a1, -a2..-a6, a7..a10)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegationReport {
    pub checked: usize,
    /// Solutions whose image is missing.
    pub unmatched: Vec<usize>,
}

impl NegationReport {
    pub fn passed(&self) -> bool {
        self.unmatched.is_empty()
    }
}

/// On odd-degree models `-[D]` has the same `a1` and negated `a2..a6`, so
/// the converged solutions must be closed under that sign change. Points
/// match when every coordinate agrees to `rel_tol` relative to its size.
pub fn negation_closure_check(solutions: &[NumericSolution], parity: Parity, rel_tol: f64) -> Result<NegationReport> {
    if parity != Parity::Odd {
        return Err(Error::InvalidInput("negation closure applies to odd-degree models".into()));
    }
    let pts: Vec<(usize, Vec<Complex64>)> =
        solutions.iter().enumerate().filter(|(_, s)| s.status == Status::Converged).map(|(i, s)| (i, s.to_c64())).collect();
    let close = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).all(|(x, y)| (x - y).norm() <= rel_tol * (1.0 + x.norm()));
    let mut unmatched = Vec::new();
    for (i, x) in &pts {
        let image: Vec<Complex64> = x.iter().enumerate().map(|(j, z)| if (1..6).contains(&j) { -z } else { *z }).collect();
        if !pts.iter().any(|(_, y)| close(&image, y)) {
            unmatched.push(*i);
        }
    }
    Ok(NegationReport { checked: pts.len(), unmatched })
}
