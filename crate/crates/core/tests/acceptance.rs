//! One line per acceptance criterion. Criterion 8 is a multi-hour run and
//! executes only with `TORSION3_FULL=1`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::test_runner::{Config, TestRunner};

use torsion3::arith::{BigComplex, BigReal, MultiPoly, PolySystem, UniPoly};
use torsion3::catalog;
use torsion3::conductor::{wild_exponent, RamificationFiltration};
use torsion3::pipeline::{run_pipeline, PipelineConfig};
use torsion3::recon::{default_kprime, find_minpoly, find_relation, Relation};
use torsion3::scheme::{build_torsion_scheme, even_norm_coefficients, Parity, NVARS};
use torsion3::solver::{refine_point, solve_all, RefineTrace, TrackConfig};
use torsion3::verify::{multi_prime_check, negation_closure_check};

mod common;
use common::*;

type Outcome = Result<String, String>;

fn check(cond: bool, ok: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad.into())
    }
}

fn conductor_regression() -> Outcome {
    let f = RamificationFiltration::from_dims(&[(24, 2), (8, 4), (2, 4), (2, 4)]).map_err(|e| e.to_string())?;
    let w = wild_exponent(&f);
    check(w == BigRational::from_integer(5.into()), "wild exponent 5", format!("wild exponent {w}"))
}

fn orbits_pass(curve: &torsion3::scheme::HyperellipticCurve, orbits: &[torsion3::recon::TorsionOrbit]) -> Outcome {
    let ts = build_torsion_scheme(curve).map_err(|e| e.to_string())?;
    let mut primes = Vec::new();
    for (i, o) in orbits.iter().enumerate() {
        let checks = multi_prime_check(&ts, o, 3).map_err(|e| format!("orbit {}: {e}", i + 1))?;
        if checks.len() != 3 || !checks.iter().all(|c| c.passed) {
            return Err(format!("orbit {} fails: {checks:?}", i + 1));
        }
        primes.push(checks.iter().map(|c| c.prime.to_string()).collect::<Vec<_>>().join("/"));
    }
    Ok(format!("{} orbits at primes {}", orbits.len(), primes.join(", ")))
}

fn scheme_fidelity_even() -> Outcome {
    let curve = catalog::x0_40();
    let high = even_norm_coefficients(&curve);
    if high.len() != 13 || !high[10..].iter().all(MultiPoly::is_zero) {
        return Err("x^10..x^12 coefficients do not cancel".into());
    }
    orbits_pass(&curve, &catalog::x0_40_orbits())
}

fn scheme_fidelity_x0_30() -> Outcome {
    let all = catalog::x0_30_orbits();
    let main = orbits_pass(&catalog::x0_30(), &all[..2])?;
    // the large-coefficient third orbit is reported but not required
    let extended = match orbits_pass(&catalog::x0_30(), &all[2..]) {
        Ok(_) => "passes",
        Err(_) => "fails",
    };
    Ok(format!("{main}; orbit 3 {extended}"))
}

const DIGITS: u32 = 300;

fn real_root(p: &UniPoly) -> BigComplex {
    // any root serves; prefer a real one for a smaller lattice
    let roots = p.roots(DIGITS + 20);
    roots.iter().find(|r| r.im.is_zero() || r.im.log10_abs() < -(DIGITS as f64)).unwrap_or(&roots[0]).with_digits(DIGITS)
}

fn reconstruction_round_trip() -> Outcome {
    let polys = [
        "u^6 + 4u^4 - 8u^2 + 12",
        "u^6 - 6u^5 + 4u^4 + 24u^3 + 256u^2 - 576u + 324",
        "u^8 - 126u^4 - 648u^2 - 1323",
        "u^6 - 21u^5 + 184u^4 - 861u^3 + 2296u^2 - 3381u + 2439",
    ];
    for s in polys {
        let p = UniPoly::parse(s, "u").map_err(|e| e.to_string())?;
        let r = find_minpoly(&real_root(&p), 8, DIGITS, default_kprime(DIGITS)).map_err(|e| format!("{s}: {e}"))?;
        let neg = UniPoly::new(p.coeffs().iter().map(|c| -c).collect(), "u");
        if r.poly != p && r.poly != neg {
            return Err(format!("{s}: recovered {}", r.poly));
        }
    }
    Ok(format!("{} minimal polynomials recovered", polys.len()))
}

fn relation_recovery() -> Outcome {
    let orbit = &catalog::x0_40_orbits()[0];
    let m = orbit.minpoly.as_ref().expect("published minimal polynomial");
    // any root of the minimal polynomial is a conjugate a1
    let theta = m.roots(DIGITS + 20).swap_remove(0);
    let value = |r: &Relation| -> BigComplex {
        let d = DIGITS + 20;
        let num = UniPoly::new(r.coeffs.clone(), "u").eval_complex(&theta);
        let inv = BigComplex::from_real(BigReal::from_rational(&BigRational::new(1.into(), r.den.clone()), d));
        &num * &inv
    };
    let mut found = Vec::new();
    for (target, expected) in [(2, "u + 1"), (5, "-(u^5 + u^3 + u - 6)/3")] {
        let want = Relation::parse(target, expected).map_err(|e| e.to_string())?;
        let beta = value(&orbit.relations[target - 2]);
        let got = find_relation(&theta, &beta, m.degree(), DIGITS, default_kprime(DIGITS)).map_err(|e| e.to_string())?;
        if got.den != want.den || got.coeffs != want.coeffs {
            return Err(format!("alpha{target}: found {}", got.render()));
        }
        found.push(format!("{}*alpha{target} = {}", got.den, UniPoly::new(got.coeffs.clone(), "u")));
    }
    Ok(found.join("; "))
}

fn isqrt2(digits: u32) -> BigInt {
    // floor(sqrt(2) * 10^digits), independent of the crate's arithmetic
    (BigInt::from(2) * num_traits::pow(BigInt::from(10), 2 * digits as usize)).sqrt()
}

fn newton_contract() -> Outcome {
    let target = 500;
    let p = MultiPoly::from_terms(1, [(vec![2], BigRational::from_integer(1.into())), (vec![0], BigRational::from_integer((-2).into()))]);
    let sys = PolySystem::new(vec![p]).map_err(|e| e.to_string())?;
    let mut trace = RefineTrace::default();
    let start = BigComplex::from_real(BigReal::parse("1.4", 40).map_err(|e| e.to_string())?);
    let r = refine_point(&sys, &[start], target, 20, Some(&mut trace)).map_err(|e| e.to_string())?;
    if !r.converged {
        return Err("refinement did not reach 500 digits".into());
    }
    let guard = target + 40;
    let root = BigReal::from_rational(&BigRational::new(isqrt2(guard), num_traits::pow(BigInt::from(10), guard as usize)), guard);
    let start_err = (&BigReal::parse("1.4", guard).unwrap() - &root).abs();
    let mut errs: Vec<BigReal> = vec![start_err];
    errs.extend(trace.iterates.iter().map(|x| (&x[0].re.with_digits(guard) - &root).abs()));
    let floor = -(target as f64) + 10.0;
    let mut ratios = Vec::new();
    for w in errs.windows(2) {
        let (e0, e1) = (w[0].log10_abs(), w[1].log10_abs());
        if e1 < floor || !e1.is_finite() {
            break;
        }
        ratios.push(10f64.powf(e1 - 2.0 * e0));
    }
    let ok = !ratios.is_empty() && ratios.iter().all(|r| (0.2..=0.5).contains(r));
    let shown = ratios.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>().join(" ");
    check(ok, format!("ratios {shown}"), format!("ratios {shown}"))
}

fn reconstruction_identity() -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 50, failure_persistence: None, ..Config::default() });
    let curves = curves();
    runner
        .run(&proptest::collection::vec(rational(), NVARS), |a| {
            for curve in &curves {
                let ts = build_torsion_scheme(curve).expect("valid curve");
                let direct = direct_coefficients(curve, &a);
                proptest::prop_assert!(direct[10..].iter().all(Zero::is_zero));
                for (j, e) in ts.equations().iter().enumerate() {
                    proptest::prop_assert_eq!(e.eval_rational(&a), direct[j].clone());
                }
            }
            Ok(())
        })
        .map_err(|e| format!("reconstruction identity: {e}"))
}

fn norm_bound() -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    runner
        .run(&irreducible(), |cs| {
            let exact = UniPoly::from_i64(&cs, "u");
            let theta = exact.roots(140).swap_remove(0);
            let r = find_minpoly(&theta, 4, 120, 70).expect("recoverable");
            let c_inf2: BigInt = exact.coeffs().iter().map(|c| c * c).sum();
            proptest::prop_assert!(r.norm2 <= BigInt::from(2) * &c_inf2 * &c_inf2);
            Ok(())
        })
        .map_err(|e| format!("norm bound: {e}"))
}

fn negation_closure() -> Result<String, String> {
    let ts = build_torsion_scheme(&catalog::odd_test_curve()).map_err(|e| e.to_string())?;
    assert_eq!(ts.parity(), Parity::Odd);
    let cfg = TrackConfig { target_digits: 40, ..TrackConfig::default() };
    let out = solve_all(&ts, &cfg).map_err(|e| e.to_string())?;
    let n = negation_closure_check(&out.solutions, Parity::Odd, 1e-6).map_err(|e| e.to_string())?;
    let summary = format!("{} of {} odd-curve solutions paired", n.checked - n.unmatched.len(), n.checked);
    if n.passed() {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn determinism() -> Result<(), String> {
    let ts = build_torsion_scheme(&catalog::x0_40()).map_err(|e| e.to_string())?;
    let base = TrackConfig { sample: Some(0.005), target_digits: 60, ..TrackConfig::default() };
    let runs: Vec<_> =
        [Some(1), Some(2), Some(4)].into_iter().map(|jobs| solve_all(&ts, &TrackConfig { jobs, ..base.clone() })).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    if runs.windows(2).all(|w| w[0] == w[1]) {
        Ok(())
    } else {
        Err("solve_all output depends on the worker count".into())
    }
}

fn property_suites() -> Outcome {
    reconstruction_identity()?;
    norm_bound()?;
    determinism()?;
    let closure = negation_closure()?;
    Ok(format!("identity 50/50, norm bound 100/100, jobs 1/2/4 agree, {closure}"))
}

fn full_reproduction() -> Outcome {
    let (report, _, _) = run_pipeline(&catalog::x0_40(), &PipelineConfig::default()).map_err(|e| e.to_string())?;
    let census = report.census.as_ref().ok_or("no census")?;
    let mut sizes = census.orbit_sizes.clone();
    let mut needed = vec![6, 6, 8];
    needed.retain(|s| match sizes.iter().position(|x| x == s) {
        Some(i) => {
            sizes.remove(i);
            false
        }
        None => true,
    });
    let ok = report.passed && needed.is_empty();
    check(ok, format!("{} distinct solutions", census.total), format!("{} distinct, passed {}", census.total, report.passed))
}

fn run(n: usize, name: &str, limit: Duration, f: fn() -> Outcome) -> bool {
    let t = Instant::now();
    let r = f();
    let took = t.elapsed();
    let (ok, detail) = match r {
        Ok(d) if took <= limit => (true, d),
        Ok(d) => (false, format!("{d}; over the {limit:?} budget")),
        Err(d) => (false, d),
    };
    println!("criterion {n} {name}: {} ({detail}; {took:.2?})", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() -> ExitCode {
    if std::env::args().skip(1).any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut all = true;
    all &= run(1, "conductor regression", Duration::from_millis(1), conductor_regression);
    all &= run(2, "scheme fidelity X0(40)", Duration::from_secs(1), scheme_fidelity_even);
    all &= run(3, "scheme fidelity X0(30)", Duration::from_secs(1), scheme_fidelity_x0_30);
    all &= run(4, "reconstruction round-trip", Duration::from_secs(30), reconstruction_round_trip);
    all &= run(5, "relation recovery", Duration::from_secs(30), relation_recovery);
    all &= run(6, "Newton contract", Duration::from_secs(1), newton_contract);
    all &= run(7, "property suites", Duration::from_secs(600), property_suites);
    if std::env::var("TORSION3_FULL").is_ok_and(|v| v == "1") {
        all &= run(8, "full X0(40) reproduction", Duration::MAX, full_reproduction);
    } else {
        println!("criterion 8 full X0(40) reproduction: SKIPPED (set TORSION3_FULL=1)");
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
