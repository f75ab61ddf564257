//! Curves and exact orbit descriptions for the modular curves X0(40) and
//! X0(30), used as fixtures and by the demo front ends.

use crate::arith::UniPoly;
use crate::recon::{OrbitStatus, Relation, TorsionOrbit};
use crate::scheme::HyperellipticCurve;

/// `y^2 = x^8 + 8x^6 - 2x^4 + 8x^2 + 1`, a model of X0(40).
pub fn x0_40() -> HyperellipticCurve {
    HyperellipticCurve::from_i64(&[1, 0, 8, 0, -2, 0, 8, 0, 1]).expect("valid curve").with_label("X0(40)")
}

/// `y^2 = x^8 + 14x^7 + 79x^6 + 242x^5 + 441x^4 + 484x^3 + 316x^2 + 112x + 16`,
/// a model of X0(30).
pub fn x0_30() -> HyperellipticCurve {
    HyperellipticCurve::from_i64(&[1, 14, 79, 242, 441, 484, 316, 112, 16]).expect("valid curve").with_label("X0(30)")
}

/// `y^2 = x^7 + x^2 + 1`, an odd-degree test curve.
pub fn odd_test_curve() -> HyperellipticCurve {
    HyperellipticCurve::from_i64(&[1, 0, 0, 0, 0, 1, 0, 1]).expect("valid curve").with_label("x^7 + x^2 + 1")
}

/// An orbit from its minimal polynomial in `u` and the expressions for
/// `a2..a6` in the `(p)/den` notation of [`Relation::parse`].
pub fn orbit(minpoly: &str, relations: [&str; 5]) -> TorsionOrbit {
    let m = UniPoly::parse(minpoly, "u").expect("valid minimal polynomial");
    let relations = relations.iter().enumerate().map(|(j, r)| Relation::parse(j + 2, r).expect("valid relation")).collect();
    TorsionOrbit { size: m.degree(), minpoly: Some(m), relations, members: Vec::new(), status: OrbitStatus::Complete }
}

/// The three generating orbits of J0(40)[3], of sizes 6, 6 and 8.
pub fn x0_40_orbits() -> Vec<TorsionOrbit> {
    vec![
        orbit(
            "u^6 + 4u^4 - 8u^2 + 12",
            [
                "u + 1",
                "-(u^5 + u^3 + 16u + 18)/9",
                "-(u^5 + u^3 + 4u + 3)/3",
                "-(u^5 + u^3 + u - 6)/3",
                "-(u^5 + u^3 + 7u + 9)/9",
            ],
        ),
        orbit(
            "u^6 - 6u^5 + 4u^4 + 24u^3 + 256u^2 - 576u + 324",
            [
                "(-u^4 + 4u^3 + 58u^2 - 124u + 126)/198",
                "-(u^4 - 4u^3 - 58u^2 + 322u + 468)/99",
                "-(u^4 - 4u^3 - 58u^2 - 74u + 765)/99",
                "-(u^4 - 4u^3 - 58u^2 - 173u + 468)/99",
                "(u^4 - 4u^3 - 58u^2 + 520u - 522)/198",
            ],
        ),
        orbit("u^8 - 126u^4 - 648u^2 - 1323", ["-1", "(u^7 - 63u^3 - 648u)/189", "3", "-u", "1"]),
    ]
}

/// The three generating orbits of J0(30)[3], of sizes 6, 8 and 8. The
/// third carries 20-digit coefficients.
pub fn x0_30_orbits() -> Vec<TorsionOrbit> {
    vec![
        orbit(
            "u^6 - 21u^5 + 184u^4 - 861u^3 + 2296u^2 - 3381u + 2439",
            [
                "u - 2",
                "(4u^5 - 70u^4 + 704u^3 - 3962u^2 - 3192u - 10638)/639",
                "(4u^5 - 70u^4 + 704u^3 - 3962u^2 + 5541u - 7230)/213",
                "(4u^5 - 70u^4 + 704u^3 - 3962u^2 + 8310u - 8934)/213",
                "(4u^5 - 70u^4 + 704u^3 - 3962u^2 + 9588u - 10638)/639",
            ],
        ),
        orbit(
            "u^8 - 28u^7 + 343u^6 - 2401u^5 + 10414u^4 - 28147u^3 + 45290u^2 - 39200u + 13925",
            [
                "2u - 2",
                "(16u^7 - 392u^6 + 4116u^5 - 24010u^4 + 83312u^3 - 168882u^2 + 113309u - 54568)/2169",
                "(32u^7 - 784u^6 + 8232u^5 - 48020u^4 + 166624u^3 - 337764u^2 + 326392u - 119258)/723",
                "(64u^7 - 1568u^6 + 16464u^5 - 96040u^4 + 333248u^3 - 675528u^2 + 699056u - 279004)/723",
                "(128u^7 - 3136u^6 + 32928u^5 - 192080u^4 + 666496u^3 - 1351056u^2 + 1427032u - 592712)/2169",
            ],
        ),
        orbit(
            "u^8 - 86u^7 + 2449u^6 - 33383u^5 + 252436u^4 - 1109723u^3 + 2786294u^2 - 3689116u + 2224811",
            [
                "(29876018790328u^7 - 2417413903833052u^6 + 60684703080638118u^5 - 674976608990629628u^4 \
                 + 3832952879194486442u^3 - 11087064205570838970u^2 + 16027124735004738752u \
                 - 11008190935547438114)/1214905376480298255",
                "-(226884728945872u^7 - 18363364083540328u^6 + 460287793516793082u^5 - 5069981080078429502u^4 \
                 + 28138121917331765018u^3 - 77651266046887373580u^2 + 119961145357139022083u \
                 - 45446963859192685796)/1214905376480298255",
                "-(221239419854296u^7 - 17945665351388284u^6 + 451320054316335906u^5 - 4984082896579474376u^4 \
                 + 27907810187789236094u^3 - 78911274653216131110u^2 + 111314232875845983914u \
                 - 60056349012914418458)/404968458826766085",
                "-(593735119981072u^7 - 48868278713945128u^6 + 1258524218508960012u^5 - 14170047695264405192u^4 \
                 + 81156089944126098548u^3 - 237313632893922545220u^2 + 339196464518479391108u \
                 - 198602211969557067116)/1214905376480298255",
                "-(35094171383296u^7 - 3004896812056480u^6 + 81787675076005272u^5 - 944075033879118080u^4 \
                 + 5498949927080657672u^3 - 16418946803186159928u^2 + 23935267946866848320u \
                 - 14729053581484018328)/242981075296059651",
            ],
        ),
    ]
}
