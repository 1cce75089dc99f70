mod common;

use hodge_core::arith::rational::{int, rat};
use hodge_core::closed_forms::{node_ideal, snc_hodge_ideal};
use hodge_core::ideal::IdealPresentation;
use hodge_core::recursion::i0_seed;
use hodge_core::verifier::cusp_resolution;
use hodge_core::{compute_hodge_ideal, ComputeOptions, ExponentVector, MethodSelector, Polynomial, QDivisor, Ring};

use common::{cusp_resolution_oracle, divisor, macaulay_member, newton_facets, newton_multiplier_monomials, poly, strict_transform};

#[test]
fn blowup_charts_resolve_the_cusp() {
    let (records, chart) = cusp_resolution_oracle();
    assert_eq!(records, vec![(2, 1), (3, 2), (6, 4)]);
    let library: Vec<(u32, u32)> =
        cusp_resolution().exceptional.iter().map(|e| (e.a[0] as u32, e.b as u32)).collect();
    assert_eq!(records, library);
    // Final chart: total transform p^6 q^2 (1+q); the strict transform misses
    // the origin and crosses p = 0 transversally at q = -1.
    let st = strict_transform(&chart);
    assert_eq!(st.to_string(), "y + 1");
    assert!(st.constant_value().is_none());
    assert_eq!(st.coefficient(&ExponentVector::new(vec![0, 0])), int(1));
    assert!(!st.partial_derivative(1).unwrap().is_zero());
}

#[test]
fn newton_polygon_of_the_cusp() {
    let facets = newton_facets(&[(2, 0), (0, 3)]);
    assert_eq!(facets, vec![((3, 2), 6)]);
    let facets = newton_facets(&[(3, 1), (1, 3), (2, 2)]);
    assert!(facets.contains(&((1, 0), 1)));
    assert!(facets.contains(&((0, 1), 1)));
    assert!(facets.contains(&((1, 1), 4)));
}

fn monomial_ideal(ring: &std::sync::Arc<Ring>, gens: &[(i64, i64)]) -> IdealPresentation {
    IdealPresentation::monomial(ring, gens.iter().map(|&(a, b)| ExponentVector::new(vec![a as u32, b as u32])))
}

/// `I_0` of non-degenerate plane curves against the Newton polygon.
#[test]
fn i0_seed_matches_newton_polygon() {
    let ring = Ring::standard(2);
    let curves: [(&str, &[(i64, i64)]); 6] = [
        ("x^2+y^3", &[(2, 0), (0, 3)]),
        ("x^2+y^5", &[(2, 0), (0, 5)]),
        ("x^3+y^4", &[(3, 0), (0, 4)]),
        ("x^4+y^6", &[(4, 0), (0, 6)]),
        ("x^2+y^2", &[(2, 0), (0, 2)]),
        ("x^3-y^3", &[(3, 0), (0, 3)]),
    ];
    for (f, points) in curves {
        for i in 1..=12 {
            let alpha = rat(i, 12);
            let d = QDivisor::single(&poly(&ring, f), alpha.clone()).unwrap();
            let seed = i0_seed(&d).unwrap();
            let expected = monomial_ideal(&ring, &newton_multiplier_monomials(points, &alpha, 8));
            assert!(seed.ideal.equals(&expected).unwrap(), "{f} at {alpha}: {} vs {}", seed.ideal, expected);
        }
    }
}

#[test]
fn macaulay_oracle_examples() {
    let ring = Ring::standard(2);
    let gens = vec![poly(&ring, "x^2 - y"), poly(&ring, "x*y - 1")];
    assert!(macaulay_member(&gens, &poly(&ring, "y^3 - 1"), 6));
    assert!(!macaulay_member(&gens, &poly(&ring, "x + y"), 6));
    let ideal = IdealPresentation::new(&ring, gens).unwrap();
    assert!(ideal.contains_poly(&poly(&ring, "y^3 - 1")).unwrap());
    assert!(!ideal.contains_poly(&poly(&ring, "x + y")).unwrap());
}

/// The cusp at `α = 9/10`: `I_1 = (x^2, xy, y^3)` and `I_2` carries `y^4 - 14/5 x^2 y`.
#[test]
fn cusp_values() {
    let d = divisor(&["x", "y"], &[("x^2+y^3", rat(9, 10))]);
    let ring = d.ring().clone();
    let opts = ComputeOptions::default();
    let i1 = compute_hodge_ideal(&d, 1, MethodSelector::Auto, &opts).unwrap();
    let expected = IdealPresentation::new(&ring, vec![poly(&ring, "x^2"), poly(&ring, "x*y"), poly(&ring, "y^3")]).unwrap();
    assert!(i1.exact && i1.ideal.equals(&expected).unwrap());
    let i2 = compute_hodge_ideal(&d, 2, MethodSelector::Auto, &opts).unwrap();
    assert!(i2.ideal.contains_poly(&poly(&ring, "y^4 - 14/5*x^2*y")).unwrap());
    assert!(!i2.ideal.contains_poly(&poly(&ring, "y^4")).unwrap());
}

#[test]
fn node_values() {
    for k in 0..=5 {
        for alpha in [rat(1, 3), int(1)] {
            let r = node_ideal(k, &alpha).unwrap();
            assert!(r.ideal.equals(&IdealPresentation::maximal_power(r.ideal.ring(), k as u32)).unwrap());
        }
    }
}

/// Reduced SNC: generators `Π x_i^{c_i}` with `c_i ≤ k` and `Σ c_i = (r-1)k`,
/// enumerated here by brute force over all exponent boxes.
#[test]
fn snc_reduced_by_enumeration() {
    for r in 1..=3usize {
        let names = ["x", "y", "z"];
        let comps: Vec<(&str, hodge_core::Rational)> = names[..r].iter().map(|v| (*v, int(1))).collect();
        let d = divisor(&names[..r], &comps);
        for k in 0..=3u32 {
            let mut gens = Vec::new();
            let size = (k + 1).pow(r as u32);
            for code in 0..size {
                let e: Vec<u32> = (0..r).map(|i| code / (k + 1).pow(i as u32) % (k + 1)).collect();
                if e.iter().sum::<u32>() == (r as u32 - 1) * k {
                    gens.push(Polynomial::monomial(d.ring(), ExponentVector::new(e), int(1)));
                }
            }
            let expected = IdealPresentation::new(d.ring(), gens).unwrap();
            let closed = snc_hodge_ideal(&d, k as i64).unwrap();
            assert!(closed.ideal.equals(&expected).unwrap(), "r={r}, k={k}");
        }
    }
}

/// Different coefficients near 1 give incomparable `I_2`, equal modulo the curve.
#[test]
fn cusp_i2_agrees_modulo_the_curve() {
    let opts = ComputeOptions::default();
    let d1 = divisor(&["x", "y"], &[("x^2+y^3", rat(9, 10))]);
    let d2 = divisor(&["x", "y"], &[("x^2+y^3", int(1))]);
    let i1 = compute_hodge_ideal(&d1, 2, MethodSelector::Auto, &opts).unwrap().ideal;
    let i2 = compute_hodge_ideal(&d2, 2, MethodSelector::Auto, &opts).unwrap().ideal;
    assert!(!i1.contains_ideal(&i2).unwrap() && !i2.contains_ideal(&i1).unwrap());
    let g = IdealPresentation::principal(&d1.support().g);
    assert!(i1.sum(&g).unwrap().equals(&i2.sum(&g).unwrap()).unwrap());
}
