mod common;

use std::sync::Arc;

use hodge_core::arith::rational::{int, rat};
use hodge_core::certificates::{triviality_certificate, Status};
use hodge_core::ideal::IdealPresentation;
use hodge_core::parser::{parse_polynomial, parse_rational};
use hodge_core::verifier::cusp_resolution;
use hodge_core::{ExponentVector, MonomialOrder, Polynomial, QDivisor, Rational, Ring};
use proptest::prelude::*;

fn ring3() -> Arc<Ring> {
    Ring::standard(3)
}

prop_compose! {
    fn arb_poly(max_terms: usize, max_exp: u32)
        (terms in prop::collection::vec((prop::collection::vec(0..=max_exp, 3), -6i64..=6, 1i64..=4), 0..=max_terms))
        -> Polynomial
    {
        Polynomial::from_terms(&ring3(), terms.into_iter().map(|(e, n, d)| (ExponentVector::new(e), rat(n, d))))
    }
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in arb_poly(4, 3), b in arb_poly(4, 3), c in arb_poly(4, 3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz(a in arb_poly(4, 3), b in arb_poly(4, 3), i in 0usize..3) {
        let lhs = (&a * &b).partial_derivative(i).unwrap();
        let rhs = &a.partial_derivative(i).unwrap() * &b + &a * &b.partial_derivative(i).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn order_is_additive(a in arb_poly(4, 3), b in arb_poly(4, 3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(
            (&a * &b).order_at_origin(),
            Some(a.order_at_origin().unwrap() + b.order_at_origin().unwrap())
        );
    }

    #[test]
    fn substitution_is_a_homomorphism(a in arb_poly(3, 2), b in arb_poly(3, 2), c0 in -5i64..=5, c1 in -5i64..=5) {
        let r = ring3();
        let repl = &Polynomial::var(&r, 0).scale(&int(c0)) + &Polynomial::var(&r, 1).scale(&int(c1));
        let prod = (&a * &b).substitute_linear(2, &repl).unwrap();
        let sum = (&a + &b).substitute_linear(2, &repl).unwrap();
        let sa = a.substitute_linear(2, &repl).unwrap();
        let sb = b.substitute_linear(2, &repl).unwrap();
        prop_assert_eq!(prod, &sa * &sb);
        prop_assert_eq!(sum, &sa + &sb);
    }

    #[test]
    fn printing_round_trips(a in arb_poly(5, 4)) {
        let r = ring3();
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Grlex] {
            prop_assert_eq!(parse_polynomial(&a.to_string_with(order), &r).unwrap(), a.clone());
        }
    }

    #[test]
    fn parser_never_panics(s in "[xyz0-9+*^()/ .-]{0,24}") {
        let _ = parse_polynomial(&s, &ring3());
        let _ = parse_rational(&s);
    }

    #[test]
    fn parser_error_spans_are_in_bounds(s in "[xyzw0-9+*^()/ .-]{0,24}") {
        if let Err(e) = parse_polynomial(&s, &ring3()) {
            prop_assert!(e.span.start <= e.span.end && e.span.end <= s.len().max(1));
        }
    }

    #[test]
    fn groebner_is_canonical(gens in prop::collection::vec(arb_poly(3, 2), 1..=3)) {
        let r = ring3();
        let ideal = IdealPresentation::new(&r, gens.clone()).unwrap();
        let gb = ideal.groebner().basis().to_vec();
        let again = IdealPresentation::new(&r, gb.clone()).unwrap();
        prop_assert_eq!(again.groebner().basis(), &gb[..]);
        let mut reversed = gens.clone();
        reversed.reverse();
        let rev = IdealPresentation::new(&r, reversed).unwrap();
        prop_assert_eq!(rev.groebner().basis(), &gb[..]);
        for g in &gens {
            prop_assert!(ideal.contains_poly(g).unwrap());
        }
        for g in &gb {
            prop_assert!(g.leading_term(MonomialOrder::Grevlex).map(|(_, c)| c == &int(1)).unwrap_or(false));
        }
    }

    #[test]
    fn products_commute(a in prop::collection::vec(arb_poly(2, 2), 1..=2), b in prop::collection::vec(arb_poly(2, 2), 1..=2)) {
        let r = ring3();
        let i = IdealPresentation::new(&r, a).unwrap();
        let j = IdealPresentation::new(&r, b).unwrap();
        let ij = i.product(&j).unwrap();
        prop_assert!(ij.equals(&j.product(&i).unwrap()).unwrap());
        prop_assert!(i.contains_ideal(&ij).unwrap());
        prop_assert!(i.sum(&j).unwrap().contains_ideal(&i).unwrap());
    }

    #[test]
    fn periodic_reduction(alphas in prop::collection::vec(arb_rational(), 1..=3)) {
        let r = ring3();
        let comps = alphas.iter().enumerate().map(|(i, a)| (Polynomial::var(&r, i), a.clone())).collect();
        let d = QDivisor::new(&r, comps).unwrap();
        let (b, twist) = d.periodic_reduce().unwrap();
        for (cb, cd) in b.components().iter().zip(d.components()) {
            prop_assert!(cb.alpha > int(0) && cb.alpha <= int(1));
            prop_assert!(hodge_core::arith::rational::is_integer(&(&cd.alpha - &cb.alpha)));
        }
        prop_assert_eq!(twist.num_terms(), 1);
        prop_assert!(b.is_reduced());
        prop_assert_eq!(d.is_reduced(), alphas.iter().all(|a| a <= &int(1)));
    }

    #[test]
    fn triviality_is_monotone(k in 0i64..3, a in 1i64..=24, k2 in 0i64..3, a2 in 1i64..=24) {
        let (a, a2) = (rat(a, 24), rat(a2, 24));
        let res = cusp_resolution();
        let t = triviality_certificate(&res, std::slice::from_ref(&a), k).unwrap().status;
        if t == Status::Trivial && k2 <= k && a2 <= a {
            let t2 = triviality_certificate(&res, std::slice::from_ref(&a2), k2).unwrap().status;
            prop_assert_eq!(t2, Status::Trivial);
        }
    }
}
