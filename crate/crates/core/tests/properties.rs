use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use torsion3::arith::{BigComplex, UniPoly};
use torsion3::catalog;
use torsion3::conductor::{fixed_subspace_dim, GaloisAction, RamificationFiltration, F3Matrix, DIM};
use torsion3::io;
use torsion3::recon::{find_minpoly, Relation};
use torsion3::scheme::{build_torsion_scheme, HyperellipticCurve, NVARS};
use torsion3::solver::{NumericSolution, Status};

mod common;
use common::*;


proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn builder_reconstruction_identity(a in prop::collection::vec(rational(), NVARS)) {
        for curve in curves() {
            let ts = build_torsion_scheme(&curve).unwrap();
            let direct = direct_coefficients(&curve, &a);
            prop_assert!(direct[10..].iter().all(|c| c.is_zero()), "high coefficients survive for {curve}");
            for (j, e) in ts.equations().iter().enumerate() {
                prop_assert_eq!(e.eval_rational(&a), direct[j].clone(), "e{} on {}", j + 1, curve);
            }
        }
    }
}

// Exact derivative at t = 0 of the degree <= n polynomial through
// (0, y0), .., (n, yn).
fn derivative_at_zero(ys: &[BigRational]) -> BigRational {
    let n = ys.len() - 1;
    let mut total = BigRational::zero();
    for (i, y) in ys.iter().enumerate() {
        // d/dt of the Lagrange basis polynomial L_i at 0
        let mut w = BigRational::zero();
        if i == 0 {
            for m in 1..=n {
                w -= q(1, m as i64);
            }
        } else {
            let mut prod = BigRational::one();
            for m in 0..=n {
                if m != i {
                    prod *= if m == 0 { q(1, 1) } else { q(-(m as i64), 1) };
                }
            }
            let mut denom = BigRational::one();
            for m in 0..=n {
                if m != i {
                    denom *= q(i as i64 - m as i64, 1);
                }
            }
            // L_i(t) = t * prod_{m != 0, i} (t - m) / denom, so L_i'(0) = prod / denom
            w = prod / denom;
        }
        total += w * y;
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn jacobian_matches_directional_derivatives(
        a in prop::collection::vec(rational(), NVARS),
        v in prop::collection::vec(rational(), NVARS),
    ) {
        let ts = build_torsion_scheme(&catalog::x0_40()).unwrap();
        let n = ts.system().degrees().into_iter().max().unwrap() as usize;
        for (i, e) in ts.equations().iter().enumerate() {
            let ys: Vec<BigRational> = (0..=n)
                .map(|t| {
                    let pt: Vec<BigRational> = a.iter().zip(&v).map(|(x, d)| x + d * q(t as i64, 1)).collect();
                    e.eval_rational(&pt)
                })
                .collect();
            let jv = ts.jacobian()[i].iter().zip(&v).fold(BigRational::zero(), |s, (p, d)| s + p.eval_rational(&a) * d);
            prop_assert_eq!(derivative_at_zero(&ys), jv, "row {}", i);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn accepted_vectors_obey_the_norm_bound(cs in irreducible(), pick in 0usize..4) {
        let exact = UniPoly::from_i64(&cs, "u");
        let roots = exact.roots(140);
        let theta = &roots[pick % roots.len()];
        let r = find_minpoly(theta, 4, 120, 70).unwrap();
        let same = r.poly == exact || r.poly == UniPoly::new(exact.coeffs().iter().map(|c| -c).collect(), "u");
        prop_assert!(same, "recovered {} for {}", r.poly, exact);
        // |c_k|^2 <= 2 |c_inf|^4
        let c_inf2: BigInt = exact.coeffs().iter().map(|c| c * c).sum();
        prop_assert!(r.norm2 <= BigInt::from(2) * &c_inf2 * &c_inf2);
    }
}

fn f3_mul(a: &F3Matrix, b: &F3Matrix) -> F3Matrix {
    let mut m = [[0u8; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            m[i][j] = ((0..DIM).map(|k| a[i][k] as u32 * b[k][j] as u32).sum::<u32>() % 3) as u8;
        }
    }
    m
}

// inverse by brute-force Gauss-Jordan over F_3
fn f3_inv(a: &F3Matrix) -> Option<F3Matrix> {
    let mut m = *a;
    let mut inv = [[0u8; DIM]; DIM];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1;
    }
    for col in 0..DIM {
        let p = (col..DIM).find(|&r| m[r][col] != 0)?;
        m.swap(col, p);
        inv.swap(col, p);
        let s = m[col][col];
        for c in 0..DIM {
            m[col][c] = m[col][c] * s % 3;
            inv[col][c] = inv[col][c] * s % 3;
        }
        for r in 0..DIM {
            if r != col && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..DIM {
                    m[r][c] = (m[r][c] + 3 * 3 - f * m[col][c]) % 3;
                    inv[r][c] = (inv[r][c] + 3 * 3 - f * inv[col][c]) % 3;
                }
            }
        }
    }
    Some(inv)
}

fn f3_matrix() -> impl Strategy<Value = F3Matrix> {
    prop::array::uniform6(prop::array::uniform6(0u8..3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fixed_dimension_is_a_conjugacy_invariant(m in f3_matrix(), p in f3_matrix()) {
        let (Some(_), Some(pinv)) = (f3_inv(&m), f3_inv(&p)) else {
            return Ok(());
        };
        let conj = f3_mul(&f3_mul(&pinv, &m), &p);
        let a = GaloisAction::new(vec![m]).unwrap();
        let b = GaloisAction::new(vec![conj]).unwrap();
        prop_assert_eq!(fixed_subspace_dim(&a), fixed_subspace_dim(&b));
    }

    #[test]
    fn filtration_json_round_trip(dims in prop::collection::vec(0usize..=6, 1..5)) {
        let mut dims = dims;
        dims.sort();
        let groups: Vec<(u64, usize)> = dims.iter().enumerate().map(|(i, &d)| (1u64 << (4 - i.min(4)), d)).collect();
        let Ok(f) = RamificationFiltration::from_dims(&groups) else {
            return Ok(());
        };
        prop_assert_eq!(RamificationFiltration::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn unipoly_display_parses_back(cs in prop::collection::vec(-1000i64..=1000, 1..9)) {
        let p = UniPoly::from_i64(&cs, "u");
        prop_assert_eq!(UniPoly::parse(&p.to_string(), "u").unwrap(), p);
    }

    #[test]
    fn relation_render_parses_back(cs in prop::collection::vec(-500i64..=500, 1..8), den in 1i64..1000, target in 2usize..=6) {
        let r = Relation { target, den: den.into(), coeffs: cs.iter().map(|&c| c.into()).collect() };
        let mut back = Relation::parse(target, &r.render()).unwrap();
        while back.coeffs.len() < r.coeffs.len() {
            back.coeffs.push(BigInt::zero());
        }
        prop_assert_eq!(back, r);
    }

    #[test]
    fn curve_json_round_trip(cs in prop::collection::vec((-99i64..=99, 1i64..=9), 7..=8)) {
        let mut coeffs: Vec<BigRational> = cs.iter().map(|&(n, d)| q(n, d)).collect();
        coeffs.insert(0, BigRational::one());
        let Ok(c) = HyperellipticCurve::new(coeffs) else {
            return Ok(());
        };
        prop_assert_eq!(io::curve_from_json(&io::curve_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn solution_json_round_trip(parts in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), NVARS), digits in 20u32..60) {
        let coords = parts.iter().map(|&(re, im)| BigComplex::from_c64(num_complex::Complex64::new(re, im), digits)).collect();
        let s = NumericSolution { coords, precision: digits, residual_exp: -(digits as i64), status: Status::Converged, path: None };
        let back = io::solutions_from_json(&io::solutions_to_json(&[s.clone()])).unwrap();
        for (a, b) in back[0].coords.iter().zip(&s.coords) {
            prop_assert!((a - b).log10_norm_inf() < -(digits as f64) + 8.0 + a.log10_norm_inf().max(0.0));
        }
    }
}

#[test]
fn catalog_orbits_round_trip_through_json() {
    for orbits in [catalog::x0_40_orbits(), catalog::x0_30_orbits()] {
        assert_eq!(io::orbits_from_json(&io::orbits_to_json(&orbits)).unwrap(), orbits);
        for o in &orbits {
            let m = o.minpoly.as_ref().unwrap();
            assert!(m.leading().is_positive());
        }
    }
}
