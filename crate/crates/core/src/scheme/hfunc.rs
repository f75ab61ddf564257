use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::curve::HyperellipticCurve;
use crate::arith::format_rational;

/// A coefficient of `h`: an exact value or an opaque expression such as
/// `"a1"` or a decimal approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum HCoeff {
    Exact(BigRational),
    Expr(String),
}

impl HCoeff {
    pub fn int(n: i64) -> Self {
        HCoeff::Exact(BigRational::from_integer(n.into()))
    }

    /// The symbolic unknowns `a1..a6`.
    pub fn symbols() -> Vec<HCoeff> {
        (1..=6).map(|i| HCoeff::Expr(format!("a{i}"))).collect()
    }
}

/// The function `h` whose divisor of zeros is three times a 3-torsion
/// representative.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionH {
    text: String,
}

impl FunctionH {
    pub fn text(&self) -> &str {
        &self.text
    }
}

impl fmt::Display for FunctionH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

// one summand: rational coefficient times a monomial name (empty for 1)
type Term = (BigRational, String);

fn xpow(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "x".into(),
        _ => format!("x^{k}"),
    }
}

fn render_terms(terms: &[Term]) -> String {
    let mut s = String::new();
    for (c, m) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let neg = c.is_negative();
        let mag = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() || m.is_empty() {
            s.push_str(&format_rational(&mag));
        }
        s.push_str(m);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Basis element multiplied by each of `a1..a6`, plus the fixed part.
fn basis(curve: &HyperellipticCurve) -> (Vec<Term>, Vec<Vec<Term>>) {
    let r = |n: i64| BigRational::from_integer(n.into());
    if curve.is_odd() {
        let fixed = vec![(r(1), "xy".to_string())];
        let mut b = vec![vec![(r(1), "y".to_string())]];
        for k in (0..=4).rev() {
            b.push(vec![(r(1), xpow(k))]);
        }
        (fixed, b)
    } else {
        let half = BigRational::new(1.into(), 2.into());
        let a7 = curve.coeff(7);
        let a6 = curve.coeff(6);
        let x4 = -&a6 * &half + &a7 * &a7 * BigRational::new(1.into(), 8.into());
        let fixed = vec![
            (r(1), "x^2y".to_string()),
            (r(-1), xpow(6)),
            (-&a7 * &half, xpow(5)),
            (x4, xpow(4)),
        ];
        let b = vec![
            vec![(r(1), "xy".to_string()), (r(-1), xpow(5)), (-&a7 * &half, xpow(4))],
            vec![(r(1), "y".to_string()), (r(-1), xpow(4))],
            vec![(r(1), xpow(3))],
            vec![(r(1), xpow(2))],
            vec![(r(1), xpow(1))],
            vec![(r(1), xpow(0))],
        ];
        (fixed, b)
    }
}

fn monomial_order(m: &str) -> (i32, i32) {
    // y-terms first by x-degree, then pure powers of x
    let has_y = m.ends_with('y');
    let xs = m.trim_end_matches('y');
    let k = match xs {
        "" => 0,
        "x" => 1,
        _ => xs.trim_start_matches("x^").parse().unwrap_or(0),
    };
    (if has_y { 0 } else { 1 }, -k)
}

/// Renders `h` for the given `a1..a6`. With exact values the result is
/// fully expanded; otherwise each unknown multiplies its basis element.
pub fn h_function(curve: &HyperellipticCurve, alphas: &[HCoeff]) -> FunctionH {
    assert_eq!(alphas.len(), 6, "h takes six coefficients");
    let (fixed, b) = basis(curve);
    let exact: Option<Vec<&BigRational>> = alphas
        .iter()
        .map(|a| match a {
            HCoeff::Exact(q) => Some(q),
            HCoeff::Expr(_) => None,
        })
        .collect();
    let text = if let Some(vals) = exact {
        let mut acc: Vec<Term> = fixed;
        for (v, terms) in vals.iter().zip(&b) {
            for (c, m) in terms {
                let add = *v * c;
                match acc.iter_mut().find(|(_, mm)| mm == m) {
                    Some(t) => t.0 += add,
                    None => acc.push((add, m.clone())),
                }
            }
        }
        acc.sort_by_key(|(_, m)| monomial_order(m));
        render_terms(&acc)
    } else {
        let mut s = render_terms(&fixed);
        for (a, terms) in alphas.iter().zip(&b) {
            let inner = render_terms(terms);
            let wrapped = if terms.len() > 1 { format!("({inner})") } else { inner.clone() };
            match a {
                HCoeff::Exact(q) if q.is_zero() => {}
                HCoeff::Exact(q) if q.is_one() => {
                    s.push_str(" + ");
                    s.push_str(&inner);
                }
                HCoeff::Exact(q) => {
                    let neg = q.is_negative();
                    s.push_str(if neg { " - " } else { " + " });
                    s.push_str(&format_rational(&q.abs()));
                    s.push_str(&wrapped);
                }
                HCoeff::Expr(e) => {
                    s.push_str(" + ");
                    let atomic = e.chars().all(|c| c.is_ascii_alphanumeric());
                    if atomic {
                        s.push_str(e);
                    } else {
                        s.push_str(&format!("({e})"));
                    }
                    if !(terms.len() == 1 && terms[0].1.is_empty()) {
                        s.push_str(&wrapped);
                    }
                }
            }
        }
        s
    };
    FunctionH { text }
}
