//! JSON forms of curves, schemes, solutions and orbits. Extended-precision
//! numbers and integers travel as decimal strings, rationals as `"p/q"`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, BigComplex, BigReal, UniPoly};
use crate::error::{Error, Result};
use crate::recon::{OrbitStatus, Relation, TorsionOrbit};
use crate::scheme::{HyperellipticCurve, Parity, TorsionScheme};
use crate::solver::{NumericSolution, Status};

fn parse_err(what: &str) -> impl Fn(serde_json::Error) -> Error + '_ {
    move |e| Error::Parse(format!("{what} JSON: {e}"))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveJson {
    pub degree: usize,
    /// Leading coefficient first.
    pub coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl From<&HyperellipticCurve> for CurveJson {
    fn from(c: &HyperellipticCurve) -> Self {
        CurveJson { degree: c.degree(), coeffs: c.descending().iter().map(format_rational).collect(), label: c.label().map(str::to_string) }
    }
}

impl CurveJson {
    pub fn to_curve(&self) -> Result<HyperellipticCurve> {
        if self.coeffs.len() != self.degree + 1 {
            return Err(Error::InvalidCurve(format!("degree {} needs {} coefficients, got {}", self.degree, self.degree + 1, self.coeffs.len())));
        }
        let c = HyperellipticCurve::from_strings(&self.coeffs)?;
        Ok(match &self.label {
            Some(l) => c.with_label(l),
            None => c,
        })
    }
}

pub fn curve_to_json(c: &HyperellipticCurve) -> String {
    to_json(&CurveJson::from(c))
}

pub fn curve_from_json(text: &str) -> Result<HyperellipticCurve> {
    serde_json::from_str::<CurveJson>(text).map_err(parse_err("curve"))?.to_curve()
}

/// One term: coefficient and the exponents of `a1..a10`.
pub type TermJson = (String, Vec<u32>);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeJson {
    pub curve: CurveJson,
    pub parity: String,
    /// `e1..e10`, each a list of terms.
    pub equations: Vec<Vec<TermJson>>,
}

pub fn scheme_to_json(ts: &TorsionScheme) -> String {
    let equations = ts.equations().iter().map(|e| e.terms().map(|(x, c)| (format_rational(c), x.clone())).collect()).collect();
    let parity = match ts.parity() {
        Parity::Odd => "odd",
        Parity::Even => "even",
    };
    to_json(&SchemeJson { curve: ts.curve().into(), parity: parity.into(), equations })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub status: String,
    pub precision: u32,
    pub residual_exp: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<u64>,
    pub coords: Vec<[String; 2]>,
}

impl From<&NumericSolution> for SolutionJson {
    fn from(s: &NumericSolution) -> Self {
        SolutionJson {
            status: s.status.as_str().into(),
            precision: s.precision,
            residual_exp: s.residual_exp,
            path: s.path,
            coords: s.coords.iter().map(|z| z.to_strings(s.precision)).collect(),
        }
    }
}

impl SolutionJson {
    pub fn to_solution(&self) -> Result<NumericSolution> {
        let d = self.precision.max(16);
        let coords = self
            .coords
            .iter()
            .map(|[re, im]| Ok(BigComplex::new(BigReal::parse(re, d)?, BigReal::parse(im, d)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(NumericSolution { coords, precision: self.precision, residual_exp: self.residual_exp, status: Status::parse(&self.status)?, path: self.path })
    }
}

pub fn solutions_to_json(sols: &[NumericSolution]) -> String {
    to_json(&sols.iter().map(SolutionJson::from).collect::<Vec<_>>())
}

pub fn solutions_from_json(text: &str) -> Result<Vec<NumericSolution>> {
    let raw: Vec<SolutionJson> = serde_json::from_str(text).map_err(parse_err("solutions"))?;
    raw.iter().map(SolutionJson::to_solution).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationJson {
    pub den: String,
    /// Constant term first.
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitJson {
    /// Leading coefficient first; absent when unresolved.
    pub minpoly: Option<Vec<String>>,
    /// Keyed `alpha2..alpha6`.
    pub relations: BTreeMap<String, RelationJson>,
    pub size: usize,
    pub members: Vec<usize>,
    pub status: String,
}

impl From<&TorsionOrbit> for OrbitJson {
    fn from(o: &TorsionOrbit) -> Self {
        OrbitJson {
            minpoly: o.minpoly.as_ref().map(|m| m.descending().iter().map(|c| c.to_string()).collect()),
            relations: o
                .relations
                .iter()
                .map(|r| {
                    let coeffs = r.coeffs.iter().map(|c| c.to_string()).collect();
                    (format!("alpha{}", r.target), RelationJson { den: r.den.to_string(), coeffs })
                })
                .collect(),
            size: o.size,
            members: o.members.clone(),
            status: o.status.as_str().into(),
        }
    }
}

impl OrbitJson {
    pub fn to_orbit(&self) -> Result<TorsionOrbit> {
        let minpoly = match &self.minpoly {
            Some(cs) => Some(UniPoly::from_descending(&cs.iter().map(|c| parse_int(c)).collect::<Result<Vec<_>>>()?, "u")),
            None => None,
        };
        let mut relations = Vec::new();
        for (key, r) in &self.relations {
            let target: usize = key
                .strip_prefix("alpha")
                .and_then(|t| t.parse().ok())
                .filter(|t| (2..=6).contains(t))
                .ok_or_else(|| Error::Parse(format!("unknown relation key {key:?}")))?;
            let coeffs = r.coeffs.iter().map(|c| parse_int(c)).collect::<Result<Vec<_>>>()?;
            relations.push(Relation { target, den: parse_int(&r.den)?, coeffs });
        }
        relations.sort_by_key(|r| r.target);
        let status = match self.status.as_str() {
            "complete" => OrbitStatus::Complete,
            "incomplete" => OrbitStatus::Incomplete,
            "unresolved" => OrbitStatus::Unresolved,
            "inconsistent" => OrbitStatus::Inconsistent,
            s => return Err(Error::Parse(format!("unknown orbit status {s:?}"))),
        };
        Ok(TorsionOrbit { minpoly, relations, size: self.size, members: self.members.clone(), status })
    }
}

pub fn orbits_to_json(orbits: &[TorsionOrbit]) -> String {
    to_json(&orbits.iter().map(OrbitJson::from).collect::<Vec<_>>())
}

pub fn orbits_from_json(text: &str) -> Result<Vec<TorsionOrbit>> {
    let raw: Vec<OrbitJson> = serde_json::from_str(text).map_err(parse_err("orbits"))?;
    raw.iter().map(OrbitJson::to_orbit).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scheme::build_torsion_scheme;

    #[test]
    fn curve_round_trip() {
        let text = r#"{"degree": 8, "coeffs": ["1","0","8","0","-2","0","8","0","1"]}"#;
        let c = curve_from_json(text).unwrap();
        assert_eq!(c.descending(), catalog::x0_40().descending());
        assert_eq!(curve_from_json(&curve_to_json(&c)).unwrap(), c);
        assert!(curve_from_json(r#"{"degree": 8, "coeffs": ["1","0"]}"#).is_err());
        assert!(curve_from_json(r#"{"degree": 7, "coeffs": ["2","0","0","0","0","1","0","1"]}"#).is_err());
    }

    #[test]
    fn scheme_export_is_deterministic() {
        let ts = build_torsion_scheme(&catalog::x0_40()).unwrap();
        let a = scheme_to_json(&ts);
        assert_eq!(a, scheme_to_json(&build_torsion_scheme(&catalog::x0_40()).unwrap()));
        let doc: SchemeJson = serde_json::from_str(&a).unwrap();
        assert_eq!(doc.equations.len(), 10);
        assert_eq!(doc.parity, "even");
    }

    #[test]
    fn orbit_round_trip() {
        let orbits = catalog::x0_30_orbits();
        assert_eq!(orbits_from_json(&orbits_to_json(&orbits)).unwrap(), orbits);
    }

    #[test]
    fn solution_round_trip() {
        let s = NumericSolution {
            coords: (0..10).map(|i| BigComplex::from_i64(i, 40)).collect(),
            precision: 40,
            residual_exp: -50,
            status: Status::Converged,
            path: Some(17),
        };
        let back = solutions_from_json(&solutions_to_json(&[s.clone()])).unwrap();
        assert_eq!(back[0].coords, s.coords);
        assert_eq!((back[0].status, back[0].path, back[0].residual_exp), (s.status, s.path, s.residual_exp));
    }
}
