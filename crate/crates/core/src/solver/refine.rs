use std::collections::HashMap;

use crate::arith::{solve_linear, BigComplex, CompiledSystem, PolySystem};
use crate::error::{Error, Result};

const GUARD: u32 = 10;
const START_DIGITS: u32 = 32;

fn norm_exp(v: &[BigComplex]) -> f64 {
    v.iter().map(|z| z.log10_norm_inf()).fold(f64::NEG_INFINITY, f64::max)
}

/// Iterates of a refinement run, with the working precision of each step.
#[derive(Clone, Debug, Default)]
pub struct RefineTrace {
    pub iterates: Vec<Vec<BigComplex>>,
    pub precisions: Vec<u32>,
}

/// Result of a refinement run: the point, its residual exponent and whether
/// Newton contracted quadratically all the way to the target precision.
#[derive(Clone, Debug)]
pub struct Refined {
    pub x: Vec<BigComplex>,
    pub residual_exp: f64,
    pub converged: bool,
}

/// Newton's method with the working precision raised to keep pace with the
/// accuracy, which roughly doubles each step.
pub fn refine_point(
    sys: &PolySystem,
    x0: &[BigComplex],
    target_digits: u32,
    max_iter: usize,
    mut trace: Option<&mut RefineTrace>,
) -> Result<Refined> {
    let mut cache: HashMap<u32, CompiledSystem<BigComplex>> = HashMap::new();
    let mut p = START_DIGITS.min(target_digits).max(16);
    let mut x: Vec<BigComplex> = x0.iter().map(|z| z.with_digits(p + GUARD)).collect();
    let mut prev_s = f64::INFINITY;
    let mut stalls = 0;
    let mut converged = false;
    for _ in 0..max_iter {
        let wp = p + GUARD;
        let cs = cache.entry(wp).or_insert_with(|| sys.compile(&BigComplex::zero(wp)));
        x = x.iter().map(|z| z.with_digits(wp)).collect();
        let (vals, jac) = cs.eval_with_jacobian(&x);
        let dx = match solve_linear(&jac, &vals) {
            Ok(d) => d,
            Err(Error::NumericallySingular) => break,
            Err(e) => return Err(e),
        };
        x = x.iter().zip(&dx).map(|(a, b)| a - b).collect();
        if let Some(t) = trace.as_deref_mut() {
            t.iterates.push(x.clone());
            t.precisions.push(p);
        }
        let s = norm_exp(&dx) - norm_exp(&x).max(0.0);
        if p >= target_digits && s < -(target_digits as f64) + 8.0 {
            converged = true;
            break;
        }
        if s > prev_s - 1.0 && s > -(p as f64) + 8.0 {
            stalls += 1;
            if stalls >= 2 {
                break;
            }
        } else {
            stalls = 0;
        }
        prev_s = s;
        let want = if s.is_finite() { (-4.0 * s).ceil() as i64 + 20 } else { target_digits as i64 };
        p = (want.max(p as i64) as u32).min(target_digits);
    }
    let wp = target_digits + GUARD;
    let cs = cache.entry(wp).or_insert_with(|| sys.compile(&BigComplex::zero(wp)));
    let xs: Vec<BigComplex> = x.iter().map(|z| z.with_digits(wp)).collect();
    let residual_exp = norm_exp(&cs.eval(&xs));
    let x = x.iter().map(|z| z.with_digits(target_digits)).collect();
    Ok(Refined { x, residual_exp, converged })
}
