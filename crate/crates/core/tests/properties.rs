//! Property-based invariants: recurrence and negative-index behaviour of
//! the sequence engine, closed-form-vs-oracle equivalence of every
//! summation operation, series division, and binomial coefficients.

use fiblike_core::binomial::binomial;
use fiblike_core::sequence::{fib, lucas, SequenceSpec};
use fiblike_core::series::{series_expand, Poly};
use fiblike_core::summation::{
    corollary_product_sums, spread_product_closed, sum_fib_sq_closed, sum_product_brute,
    sum_product_closed, sum_sq_brute, sum_sq_closed, sum_sq_initfree, unit_sum_specials,
    WeightedSumQuery,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn arb_spec() -> impl Strategy<Value = SequenceSpec> {
    (-50i64..=50, -50i64..=50)
        .prop_filter("not both zero", |(a, b)| *a != 0 || *b != 0)
        .prop_map(|(a, b)| SequenceSpec::new(a, b).unwrap())
}

fn arb_weight() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recurrence_holds(spec in arb_spec(), j in -200i64..=200) {
        prop_assert_eq!(spec.term(j), spec.term(j - 1) + spec.term(j - 2));
    }

    #[test]
    fn negative_index_rule(spec in arb_spec(), j in 1i64..=200) {
        let direct = spec.term(-j);
        let closed = {
            let v = spec.g0() * lucas(j) - spec.term(j);
            if j % 2 == 0 { v } else { -v }
        };
        prop_assert_eq!(&direct, &closed);
        // and the backward sweep agrees with both
        let swept = spec.window(-j, -j).unwrap().remove(0);
        prop_assert_eq!(direct, swept);
    }

    #[test]
    fn fib_lucas_specializations(j in -200i64..=200) {
        prop_assert_eq!(fib(j), SequenceSpec::fibonacci().term(j));
        prop_assert_eq!(lucas(j), SequenceSpec::lucas().term(j));
    }

    #[test]
    fn square_sums_match_brute(spec in arb_spec(), k in -6i64..=6, x in arb_weight(), n in 0u64..=60) {
        let q = WeightedSumQuery::new(spec, k, x, n);
        let brute = sum_sq_brute(&q);
        prop_assert_eq!(sum_sq_closed(&q), brute.clone());
        prop_assert_eq!(sum_sq_initfree(&q), brute);
    }

    #[test]
    fn fib_square_sum_matches_brute(x in arb_weight(), n in 0u64..=80) {
        let q = WeightedSumQuery::new(SequenceSpec::fibonacci(), 0, x.clone(), n);
        prop_assert_eq!(sum_fib_sq_closed(&x, n), sum_sq_brute(&q));
    }

    #[test]
    fn product_sum_matches_brute(
        spec in arb_spec(),
        k in prop::sample::select(vec![-5i64, -3, -2, -1, 1, 2, 4, 6]),
        s in prop::sample::select(vec![-6i64, -4, -1, 1, 3, 5]),
        x in arb_weight(),
        n in 0u64..=50,
    ) {
        let closed = sum_product_closed(&spec, k, s, &x, n).unwrap();
        prop_assert_eq!(closed, sum_product_brute(&spec, k, s, &x, n));
    }

    #[test]
    fn spread_sum_matches_brute(spec in arb_spec(), k in -6i64..=6, x in arb_weight(), n in 0u64..=50) {
        let closed = spread_product_closed(&spec, k, &x, n);
        prop_assert_eq!(closed, sum_product_brute(&spec, k, -k, &x, n));
    }

    #[test]
    fn corollary_sums_match_brute(spec in arb_spec(), x in arb_weight(), n in 0u64..=50) {
        let (first, second) = corollary_product_sums(&spec, &x, n);
        prop_assert_eq!(first, sum_product_brute(&spec, 1, -2, &x, n));
        prop_assert_eq!(second, sum_product_brute(&spec, 0, -1, &x, n));
    }

    #[test]
    fn unit_routes_match_brute(spec in arb_spec(), k in -8i64..=8, n in 0u64..=40) {
        let one = BigRational::from_integer(BigInt::from(1));
        let brute = sum_sq_brute(&WeightedSumQuery::new(spec.clone(), k, one, n));
        for (route, value) in unit_sum_specials(&spec, k, n).routes() {
            prop_assert_eq!(
                BigRational::from_integer(value.clone()),
                brute.clone(),
                "route {}", route
            );
        }
    }

    #[test]
    fn series_division_inverts(
        num_coeffs in prop::collection::vec(-9i64..=9, 0..6),
        mut den_coeffs in prop::collection::vec(-9i64..=9, 1..5),
        order in 0usize..=24,
    ) {
        if den_coeffs[0] == 0 {
            den_coeffs[0] = 1;
        }
        let num = Poly::from_integers(&num_coeffs);
        let den = Poly::from_integers(&den_coeffs);
        let t = series_expand(&num, &den, order).unwrap();
        for i in 0..=order {
            let mut acc = BigRational::from_integer(BigInt::from(0));
            for (j, d) in den.coeffs().iter().enumerate() {
                if j > i {
                    break;
                }
                acc += d * t.coeff(i - j);
            }
            prop_assert_eq!(acc, num.coeff(i));
        }
    }

    #[test]
    fn binomial_pascal_rule(n in 1u64..=40, k in 0i64..=41) {
        prop_assert_eq!(
            binomial(n, k),
            binomial(n - 1, k - 1) + binomial(n - 1, k)
        );
    }

    #[test]
    fn binomial_row_sum(n in 0u64..=30) {
        let total: BigInt = (0..=n as i64).map(|k| binomial(n, k)).sum();
        prop_assert_eq!(total, BigInt::from(2).pow(n as u32));
    }
}

#[test]
fn window_agrees_with_fast_path_in_three_regimes() {
    for (g0, g1) in [(0i64, 1i64), (2, 1), (1, 1), (3, -5)] {
        let spec = SequenceSpec::new(g0, g1).unwrap();
        for base in [-10_000i64, 0, 10_000] {
            let lo = base - 8;
            let hi = base + 8;
            let window = spec.window(lo, hi).unwrap();
            for (offset, value) in window.iter().enumerate() {
                assert_eq!(*value, spec.term(lo + offset as i64), "base {base}");
            }
        }
    }
}
