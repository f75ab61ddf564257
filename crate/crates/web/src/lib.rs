//! WebAssembly bindings for the static demo page in `www/`.

use torsion3::arith::{format_rational, BigComplex, BigReal};
use torsion3::catalog;
use torsion3::conductor::{wild_exponent, RamificationFiltration};
use torsion3::recon::find_minpoly;
use torsion3::scheme::build_torsion_scheme;
use torsion3::verify::multi_prime_check;
use wasm_bindgen::prelude::*;

/// Wild conductor exponent of a filtration given as
/// `{"groups":[{"order":24,"fixed_dim":2}, ..]}`.
pub fn conductor_text(filtration: &str) -> Result<String, String> {
    let f = RamificationFiltration::from_json(filtration).map_err(|e| e.to_string())?;
    Ok(format_rational(&wild_exponent(&f)))
}

/// Minimal polynomial of `re + im i`, both decimal strings carrying at
/// least `digits` significant digits.
pub fn recognize_text(re: &str, im: &str, digits: u32, dmax: usize) -> Result<String, String> {
    if !(20..=2000).contains(&digits) {
        return Err("digits must lie in 20..2000".into());
    }
    let part = |s: &str| -> Result<BigReal, String> {
        match s.trim() {
            "" => Ok(BigReal::zero(digits)),
            t => BigReal::parse(t, digits).map_err(|e| e.to_string()),
        }
    };
    let theta = BigComplex::new(part(re)?, part(im)?);
    let kprime = digits - digits / 4;
    let r = find_minpoly(&theta, dmax.clamp(1, 12), digits, kprime).map_err(|e| e.to_string())?;
    Ok(format!("{}  (quality {:.0} digits)", r.poly, r.quality))
}

/// Modular checks of the published orbits of X0(40) or X0(30), one line
/// per orbit.
pub fn orbit_check_text(curve: &str, primes: usize) -> Result<String, String> {
    let (c, orbits) = match curve {
        "X0(40)" => (catalog::x0_40(), catalog::x0_40_orbits()),
        "X0(30)" => (catalog::x0_30(), catalog::x0_30_orbits()),
        other => return Err(format!("unknown curve {other}")),
    };
    let ts = build_torsion_scheme(&c).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for (i, o) in orbits.iter().enumerate() {
        let line = match multi_prime_check(&ts, o, primes.clamp(1, 10)) {
            Ok(checks) => {
                let ps: Vec<String> = checks.iter().map(|c| format!("{}{}", c.prime, if c.passed { "" } else { " (fail)" })).collect();
                let verdict = if checks.iter().all(|c| c.passed) { "pass" } else { "FAIL" };
                format!("orbit {} of size {}: {verdict} at p = {}", i + 1, o.size, ps.join(", "))
            }
            Err(e) => format!("orbit {}: {e}", i + 1),
        };
        out.push(line);
    }
    Ok(out.join("\n"))
}

#[wasm_bindgen]
pub fn conductor(filtration: &str) -> Result<String, JsError> {
    conductor_text(filtration).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn recognize(re: &str, im: &str, digits: u32, dmax: usize) -> Result<String, JsError> {
    recognize_text(re, im, digits, dmax).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn orbit_check(curve: &str, primes: usize) -> Result<String, JsError> {
    orbit_check_text(curve, primes).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conductor_of_the_x0_40_filtration() {
        let f = r#"{"groups":[{"order":24,"fixed_dim":2},{"order":8,"fixed_dim":4},{"order":2,"fixed_dim":4},{"order":2,"fixed_dim":4}]}"#;
        assert_eq!(conductor_text(f).unwrap(), "5");
        assert!(conductor_text("{}").is_err());
    }

    #[test]
    fn recognizes_the_golden_ratio() {
        let phi = "1.6180339887498948482045868343656381177203091798057628621354486227";
        assert_eq!(recognize_text(phi, "", 60, 4).unwrap().split("  ").next().unwrap(), "u^2 - u - 1");
        assert!(recognize_text(phi, "", 5, 4).is_err());
    }

    #[test]
    fn published_orbits_pass() {
        let text = orbit_check_text("X0(40)", 2).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().all(|l| l.contains(": pass")), "{text}");
        assert!(orbit_check_text("X0(11)", 2).is_err());
    }
}
