use crate::arith::{BigComplex, UniPoly};
use crate::error::{Error, Result};

/// Acceptance bound on nearest / second-nearest root distance.
pub const DEFAULT_GAP_RATIO: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct RootMatch {
    /// Index into the roots sorted by (real, imaginary) part.
    pub index: usize,
    pub root: BigComplex,
    /// Distance to the nearest root over distance to the next nearest.
    pub ratio: f64,
}

/// Identifies which root of `f` the value `a` approximates.
pub fn select_root_numeric(f: &UniPoly, a: &BigComplex, max_ratio: f64) -> Result<RootMatch> {
    if f.degree() == 0 {
        return Err(Error::InvalidInput("constant polynomial has no roots".into()));
    }
    let digits = a.digits();
    let mut roots = f.roots(digits);
    roots.sort_by(|x, y| {
        let (p, q) = (x.to_c64(), y.to_c64());
        p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im))
    });
    let dist: Vec<f64> = roots.iter().map(|r| (r - a).log10_norm_inf()).collect();
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&i, &j| dist[i].total_cmp(&dist[j]));
    let best = order[0];
    let ratio = match order.get(1) {
        Some(&second) => 10f64.powf(dist[best] - dist[second]),
        None => 0.0,
    };
    if !(ratio < max_ratio) {
        return Err(Error::InsufficientPrecision(format!("root match ambiguous (gap ratio {ratio:.3e})")));
    }
    Ok(RootMatch { index: best, root: roots[best].clone(), ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigReal;

    #[test]
    fn picks_negative_sqrt_two() {
        let f = UniPoly::from_i64(&[-2, 0, 1], "x");
        let a = BigComplex::from_real(-BigReal::parse("1.41421356237309504880168872", 60).unwrap());
        let m = select_root_numeric(&f, &a, DEFAULT_GAP_RATIO).unwrap();
        assert!(m.root.re.is_negative());
        assert!(m.ratio < 1e-20);
    }

    #[test]
    fn near_i_needs_loose_ratio() {
        let f = UniPoly::from_i64(&[1, 0, 1], "x");
        let a = BigComplex::new(BigReal::zero(40), BigReal::parse("0.9999", 40).unwrap());
        assert!(select_root_numeric(&f, &a, DEFAULT_GAP_RATIO).is_err());
        let m = select_root_numeric(&f, &a, 1e-3).unwrap();
        assert!(m.root.im.signum() > 0);
    }
}
