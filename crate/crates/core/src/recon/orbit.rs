use num_bigint::BigInt;

use super::minpoly::{find_minpoly, find_relation, Relation};
use super::roots::{select_root_numeric, DEFAULT_GAP_RATIO};
use crate::arith::{BigComplex, UniPoly};
use crate::error::{Error, Result};
use crate::solver::NumericSolution;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitStatus {
    /// One member for every root of the minimal polynomial.
    Complete,
    /// Fewer members than the degree, e.g. after a partial solve.
    Incomplete,
    /// No minimal polynomial or no linear relation was found.
    Unresolved,
    /// More members than roots, or two members on the same root.
    Inconsistent,
}

impl OrbitStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrbitStatus::Complete => "complete",
            OrbitStatus::Incomplete => "incomplete",
            OrbitStatus::Unresolved => "unresolved",
            OrbitStatus::Inconsistent => "inconsistent",
        }
    }
}

/// A Galois orbit: the minimal polynomial of `a1` and `a2..a6` as
/// polynomials in a root `u` of it.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionOrbit {
    pub minpoly: Option<UniPoly>,
    /// Relations for `a2..a6`, in order.
    pub relations: Vec<Relation>,
    pub size: usize,
    /// Indices into the solution list.
    pub members: Vec<usize>,
    pub status: OrbitStatus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReconOptions {
    pub dmax: usize,
    /// Digits used; defaults to the lowest precision among the solutions.
    pub digits: Option<u32>,
    pub kprime_offset: u32,
    pub gap_ratio: f64,
}

impl Default for ReconOptions {
    fn default() -> Self {
        ReconOptions { dmax: 8, digits: None, kprime_offset: 50, gap_ratio: DEFAULT_GAP_RATIO }
    }
}

fn quality(z: &BigComplex) -> f64 {
    if z.is_zero() {
        f64::INFINITY
    } else {
        -z.log10_norm_inf()
    }
}

fn sort_key(o: &TorsionOrbit) -> (usize, Vec<BigInt>, Vec<usize>) {
    let coeffs = o.minpoly.as_ref().map(|p| p.descending()).unwrap_or_default();
    (o.minpoly.as_ref().map_or(usize::MAX, |p| p.degree()), coeffs, o.members.clone())
}

/// Groups refined solutions into Galois orbits.
pub fn reconstruct_orbits(solutions: &[NumericSolution], opts: &ReconOptions) -> Result<Vec<TorsionOrbit>> {
    if solutions.is_empty() {
        return Ok(Vec::new());
    }
    if solutions.iter().any(|s| s.coords.len() < 6) {
        return Err(Error::InvalidInput("solutions need at least six coordinates".into()));
    }
    let lowest = solutions.iter().map(|s| s.precision).min().unwrap_or(0);
    let k = opts.digits.unwrap_or(lowest);
    if k > lowest {
        return Err(Error::InsufficientPrecision(format!("{k} digits requested, solutions carry {lowest}")));
    }
    let kprime = k.saturating_sub(opts.kprime_offset);
    let need = k as f64 - kprime as f64 - 10.0;
    let coord = |s: usize, j: usize| solutions[s].coords[j].with_digits(k);

    let mut remaining: Vec<usize> = (0..solutions.len()).collect();
    let mut orbits = Vec::new();
    while let Some(&rep) = remaining.first() {
        let theta = coord(rep, 0);
        let m = match find_minpoly(&theta, opts.dmax, k, kprime) {
            Ok(m) => m.poly,
            Err(Error::NoCandidate(_)) => {
                orbits.push(TorsionOrbit { minpoly: None, relations: vec![], size: 0, members: vec![rep], status: OrbitStatus::Unresolved });
                remaining.remove(0);
                continue;
            }
            Err(e) => return Err(e),
        };
        let d = m.degree();
        let mut relations = Vec::new();
        for j in 1..6 {
            match find_relation(&theta, &coord(rep, j), d, k, kprime) {
                Ok(r) => relations.push(Relation { target: j + 1, ..r }),
                Err(Error::NoCandidate(_)) => break,
                Err(e) => return Err(e),
            }
        }
        if relations.len() < 5 {
            orbits.push(TorsionOrbit { minpoly: Some(m), relations, size: d, members: vec![rep], status: OrbitStatus::Unresolved });
            remaining.remove(0);
            continue;
        }
        let mut members = Vec::new();
        let mut rest = Vec::new();
        for &s in &remaining {
            let a1 = coord(s, 0);
            let on_root = quality(&m.eval_complex(&a1)) > need;
            let fits = on_root && relations.iter().all(|r| quality(&r.defect(&a1, &coord(s, r.target - 1))) > need);
            if fits {
                members.push(s);
            } else {
                rest.push(s);
            }
        }
        let mut roots_hit: Vec<usize> = Vec::new();
        let mut clash = false;
        for &s in &members {
            match select_root_numeric(&m, &coord(s, 0), opts.gap_ratio) {
                Ok(r) if !roots_hit.contains(&r.index) => roots_hit.push(r.index),
                _ => clash = true,
            }
        }
        let status = if clash || members.len() > d {
            OrbitStatus::Inconsistent
        } else if members.len() == d {
            OrbitStatus::Complete
        } else {
            OrbitStatus::Incomplete
        };
        orbits.push(TorsionOrbit { minpoly: Some(m), relations, size: d, members, status });
        remaining = rest;
    }
    orbits.sort_by_key(sort_key);
    Ok(orbits)
}
