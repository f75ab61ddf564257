//! Wild part of the conductor exponent at 2 from the action of the lower
//! ramification groups on `J[3]`, a 6-dimensional space over F_3.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DIM: usize = 6;

/// A 6x6 matrix over F_3 with entries in `0..3`.
pub type F3Matrix = [[u8; DIM]; DIM];

/// Generators of a group acting on `J[3]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisAction {
    generators: Vec<F3Matrix>,
}

fn rank_f3(mut rows: Vec<[u8; DIM]>) -> usize {
    let mut rank = 0;
    for col in 0..DIM {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        // every nonzero element of F_3 is its own inverse
        let inv = rows[rank][col];
        for c in 0..DIM {
            rows[rank][c] = rows[rank][c] * inv % 3;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..DIM {
                    rows[r][c] = (rows[r][c] + 3 * 3 - f * rows[rank][c]) % 3;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl GaloisAction {
    pub fn new(generators: Vec<F3Matrix>) -> Result<Self> {
        for (i, m) in generators.iter().enumerate() {
            if m.iter().flatten().any(|&x| x > 2) {
                return Err(Error::InvalidAction(format!("generator {i} has an entry outside 0..3")));
            }
            if rank_f3(m.to_vec()) < DIM {
                return Err(Error::InvalidAction(format!("generator {i} is not invertible mod 3")));
            }
        }
        Ok(GaloisAction { generators })
    }

    /// Parses integer rows, reducing each entry mod 3.
    pub fn from_rows(generators: &[Vec<Vec<i64>>]) -> Result<Self> {
        let mut out = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.len() != DIM || g.iter().any(|r| r.len() != DIM) {
                return Err(Error::InvalidAction(format!("generator {i} is not 6x6")));
            }
            let mut m = [[0u8; DIM]; DIM];
            for (r, row) in g.iter().enumerate() {
                for (c, &x) in row.iter().enumerate() {
                    m[r][c] = x.rem_euclid(3) as u8;
                }
            }
            out.push(m);
        }
        Self::new(out)
    }

    pub fn generators(&self) -> &[F3Matrix] {
        &self.generators
    }
}

/// Dimension of the subspace fixed by every generator: the nullity of the
/// stacked matrices `M - I`.
pub fn fixed_subspace_dim(action: &GaloisAction) -> usize {
    let mut rows = Vec::with_capacity(DIM * action.generators.len());
    for m in &action.generators {
        for (r, row) in m.iter().enumerate() {
            let mut d = *row;
            d[r] = (d[r] + 2) % 3;
            rows.push(d);
        }
    }
    DIM - rank_f3(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixed {
    Action(GaloisAction),
    Dim(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationGroup {
    pub order: u64,
    pub fixed: Fixed,
}

impl RamificationGroup {
    pub fn fixed_dim(&self) -> usize {
        match &self.fixed {
            Fixed::Action(a) => fixed_subspace_dim(a),
            Fixed::Dim(d) => *d,
        }
    }
}

/// Lower-numbered ramification groups `G_0 ⊇ G_1 ⊇ ..`; later groups are
/// trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationFiltration {
    groups: Vec<RamificationGroup>,
}

impl RamificationFiltration {
    pub fn new(groups: Vec<RamificationGroup>) -> Result<Self> {
        let mut prev: Option<(u64, usize)> = None;
        for (k, g) in groups.iter().enumerate() {
            if g.order == 0 {
                return Err(Error::NotSubgroupChain(format!("G_{k} has order 0")));
            }
            let dim = g.fixed_dim();
            if dim > DIM {
                return Err(Error::InvalidInput(format!("G_{k} fixed dimension {dim} exceeds {DIM}")));
            }
            if g.order == 1 && dim != DIM {
                return Err(Error::InvalidInput(format!("trivial G_{k} must fix all of J[3]")));
            }
            if let Some((order, d)) = prev {
                if order % g.order != 0 {
                    return Err(Error::NotSubgroupChain(format!("|G_{k}| = {} does not divide {order}", g.order)));
                }
                if dim < d {
                    return Err(Error::NotSubgroupChain(format!("G_{k} fixes less than G_{}", k - 1)));
                }
            }
            prev = Some((g.order, dim));
        }
        Ok(RamificationFiltration { groups })
    }

    /// Filtration from `(order, fixed_dim)` pairs.
    pub fn from_dims(groups: &[(u64, usize)]) -> Result<Self> {
        Self::new(groups.iter().map(|&(order, d)| RamificationGroup { order, fixed: Fixed::Dim(d) }).collect())
    }

    pub fn groups(&self) -> &[RamificationGroup] {
        &self.groups
    }
}

/// `sum_k (6 - dim J[3]^{G_k}) / [G_0 : G_k]`, exactly.
pub fn wild_exponent(filtration: &RamificationFiltration) -> BigRational {
    let Some(g0) = filtration.groups.first() else {
        return BigRational::zero();
    };
    let g0 = BigInt::from(g0.order);
    filtration.groups.iter().fold(BigRational::zero(), |acc, g| {
        let codim = BigInt::from(DIM - g.fixed_dim());
        acc + BigRational::new(codim * BigInt::from(g.order), g0.clone())
    })
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fixed_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<Vec<Vec<i64>>>>,
}

#[derive(Serialize, Deserialize)]
struct FiltrationJson {
    groups: Vec<GroupJson>,
}

impl RamificationFiltration {
    /// Reads `{"groups":[{"order":24,"fixed_dim":2}, ..]}`; a group may give
    /// `"generators"` (6x6 integer matrices) in place of `"fixed_dim"`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: FiltrationJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("filtration JSON: {e}")))?;
        let mut groups = Vec::with_capacity(raw.groups.len());
        for (k, g) in raw.groups.into_iter().enumerate() {
            let fixed = match (g.fixed_dim, g.generators) {
                (Some(d), None) => Fixed::Dim(d),
                (None, Some(gens)) => Fixed::Action(GaloisAction::from_rows(&gens)?),
                _ => return Err(Error::Parse(format!("G_{k} needs exactly one of fixed_dim and generators"))),
            };
            groups.push(RamificationGroup { order: g.order, fixed });
        }
        Self::new(groups)
    }

    pub fn to_json(&self) -> String {
        let groups = self
            .groups
            .iter()
            .map(|g| match &g.fixed {
                Fixed::Dim(d) => GroupJson { order: g.order, fixed_dim: Some(*d), generators: None },
                Fixed::Action(a) => GroupJson {
                    order: g.order,
                    fixed_dim: None,
                    generators: Some(a.generators.iter().map(|m| m.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()).collect()),
                },
            })
            .collect();
        serde_json::to_string(&FiltrationJson { groups }).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: [u8; DIM]) -> F3Matrix {
        let mut m = [[0; DIM]; DIM];
        for i in 0..DIM {
            m[i][i] = d[i];
        }
        m
    }

    #[test]
    fn fixed_dims_of_diagonal_actions() {
        let id = GaloisAction::new(vec![diag([1; DIM])]).unwrap();
        assert_eq!(fixed_subspace_dim(&id), 6);
        let a = GaloisAction::new(vec![diag([1, 1, 1, 1, 2, 2])]).unwrap();
        assert_eq!(fixed_subspace_dim(&a), 4);
        let neg = GaloisAction::new(vec![diag([2; DIM])]).unwrap();
        assert_eq!(fixed_subspace_dim(&neg), 0);
    }

    #[test]
    fn singular_generator_is_rejected() {
        assert!(matches!(GaloisAction::new(vec![diag([1, 1, 1, 1, 1, 0])]), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn x0_40_value() {
        let f = RamificationFiltration::from_dims(&[(24, 2), (8, 4), (2, 4), (2, 4)]).unwrap();
        assert_eq!(wild_exponent(&f), BigRational::from_integer(5.into()));
    }

    #[test]
    fn small_filtrations() {
        let trivial = RamificationFiltration::from_dims(&[(1, 6)]).unwrap();
        assert!(wild_exponent(&trivial).is_zero());
        let single = RamificationFiltration::from_dims(&[(8, 0)]).unwrap();
        assert_eq!(wild_exponent(&single), BigRational::from_integer(6.into()));
        let third = RamificationFiltration::from_dims(&[(3, 4), (1, 6)]).unwrap();
        assert_eq!(wild_exponent(&third), BigRational::from_integer(2.into()));
    }

    #[test]
    fn non_chain_is_rejected() {
        assert!(matches!(RamificationFiltration::from_dims(&[(24, 2), (5, 4)]), Err(Error::NotSubgroupChain(_))));
    }

    #[test]
    fn json_forms() {
        let text = r#"{"groups":[{"order":24,"fixed_dim":2},{"order":8,"fixed_dim":4},{"order":2,"fixed_dim":4},{"order":2,"fixed_dim":4}]}"#;
        let f = RamificationFiltration::from_json(text).unwrap();
        assert_eq!(f.to_json(), text);
        let gens = r#"{"groups":[{"order":2,"generators":[[[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0],[0,0,0,1,0,0],[0,0,0,0,2,0],[0,0,0,0,0,2]]]}]}"#;
        let f = RamificationFiltration::from_json(gens).unwrap();
        assert_eq!(f.groups()[0].fixed_dim(), 4);
        assert!(RamificationFiltration::from_json(r#"{"groups":[{"order":2}]}"#).is_err());
    }
}
