use mhz_core::arith::{binomial, gen_binomial, ratio};
use mhz_core::{
    format_rational, is_polar, parse_rational, zeta_value, AlphaVec, MultiIndex, MultiPoly, Rational, Variant,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-100i64..=100, 1i64..=100).prop_map(|(n, d)| ratio(n, d))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=60, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    (1usize..=3).prop_flat_map(|nvars| {
        prop::collection::vec((prop::collection::vec(0u32..=8, nvars), rational()), 0..6).prop_map(move |terms| {
            let terms = terms.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= 8);
            MultiPoly::from_terms(nvars, terms).unwrap()
        })
    })
}

fn poly_pair() -> impl Strategy<Value = (MultiPoly, MultiPoly, Rational)> {
    (poly(), rational()).prop_flat_map(|(p, c)| {
        let nvars = p.nvars();
        let q = prop::collection::vec((prop::collection::vec(0u32..=6, nvars), rational()), 0..6)
            .prop_map(move |terms| MultiPoly::from_terms(nvars, terms).unwrap());
        (Just(p), q, Just(c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_both_ways(p in poly()) {
        prop_assert_eq!(p.bernoullize().cube_integrate_shifted(), p.clone());
        prop_assert_eq!(p.cube_integrate_shifted().bernoullize(), p);
    }

    #[test]
    fn transforms_are_linear((p, q, c) in poly_pair()) {
        let combo = p.scale(&c).add(&q).unwrap();
        let b = p.bernoullize().scale(&c).add(&q.bernoullize()).unwrap();
        prop_assert_eq!(combo.bernoullize(), b);
        let i = p.cube_integrate_shifted().scale(&c).add(&q.cube_integrate_shifted()).unwrap();
        prop_assert_eq!(combo.cube_integrate_shifted(), i);
    }

    #[test]
    fn bernoullize_keeps_leading_form(p in poly()) {
        prop_assert_eq!(p.bernoullize().leading_form(), p.leading_form());
        prop_assert_eq!(p.bernoullize().total_degree(), p.total_degree());
    }

    #[test]
    fn rationals_are_canonical(n in -10_000i64..=10_000, d in prop_oneof![-1_000_000i64..=-1, 1i64..=1_000_000]) {
        let q = ratio(n, d);
        prop_assert!(q.denom().is_positive());
        prop_assert!(q.numer().gcd(q.denom()).is_one());
        if q.is_zero() {
            prop_assert!(q.denom().is_one());
        }
        let text = format_rational(&q);
        prop_assert_eq!(parse_rational(&text).unwrap(), q.clone());
        let raw = format!("{n}/{d}");
        prop_assert_eq!(parse_rational(&raw).unwrap(), q);
    }

    #[test]
    fn gen_binomial_matches_integer_binomial(n in 0u64..60, k in 0u64..70) {
        prop_assert_eq!(gen_binomial(&Rational::from_integer(BigInt::from(n)), k), Rational::from_integer(binomial(n, k)));
    }

    #[test]
    fn pole_flag_agrees_with_value(entries in prop::collection::vec(0u32..=5, 1..=3), a in positive_rational()) {
        let point = MultiIndex::new(entries.clone()).unwrap();
        let alpha = AlphaVec::broadcast(a, entries.len()).unwrap();
        let report = zeta_value(&alpha, &point, Variant::Corrected).unwrap();
        prop_assert_eq!(is_polar(&point).polar, report.polar);
        prop_assert_eq!(report.value.is_some(), !report.polar);
    }

    #[test]
    fn constant_term_law_via_evaluation(entries in prop::collection::vec(0u32..=3, 1..=3), alphas in prop::collection::vec(positive_rational(), 3)) {
        let point = MultiIndex::new(entries.clone()).unwrap();
        let alpha = AlphaVec::new(alphas[..entries.len()].to_vec()).unwrap();
        let value = zeta_value(&alpha, &point, Variant::Corrected).unwrap().value.unwrap();
        let poly = mhz_core::zeta_polynomial(&alpha, &point, Variant::Corrected).unwrap();
        prop_assert_eq!(poly.constant_term(), value);
    }
}
