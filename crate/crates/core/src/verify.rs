//! Grid runners for the verification suites. Every runner parallelizes
//! across tuples but aggregates in lexicographic tuple order, so report
//! content is identical for any worker count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::binomial::{
    brute_partial_sum, closed_partial_sum, double_binomial_residual, square_double_binomial_residual,
    square_tuple_degenerate, RecurrenceDescriptor, SequenceOracle, SquareWindow,
};
use crate::error::Error;
use crate::identity::{fuzz_identity, IdentityId};
use crate::report::{param, DegenerateCase, FailureCase, IdentityReport, Param};
use crate::sequence::{fib, SequenceSpec};
use crate::series::{format_rat, gf_fib_square_check, gf_spread_product_check};
use crate::summation::{
    corollary_product_sums, spread_product_closed, sum_fib_sq_closed, sum_product_brute,
    sum_product_closed, sum_sq_brute, sum_sq_closed, sum_sq_initfree, unit_product_sum_routes,
    unit_sum_specials, BigRat, WeightedSumQuery,
};

pub fn spec_of(g0: i64, g1: i64) -> SequenceSpec {
    SequenceSpec::new(g0, g1).expect("nonzero spec")
}

/// The four sequences the identity and binomial grids run over.
pub fn default_specs4() -> Vec<SequenceSpec> {
    vec![spec_of(0, 1), spec_of(2, 1), spec_of(1, 1), spec_of(3, -5)]
}

/// The six sequences the summation grids run over.
pub fn default_specs6() -> Vec<SequenceSpec> {
    vec![
        spec_of(0, 1),
        spec_of(2, 1),
        spec_of(1, 1),
        spec_of(1, 0),
        spec_of(3, -5),
        spec_of(-2, 7),
    ]
}

fn rq(p: i64, q: i64) -> BigRat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// The standard weight grid, including both singular dispatch points
/// (0 and -1) and mixed-sign rationals.
pub fn standard_weights() -> Vec<BigRat> {
    vec![
        rq(0, 1),
        rq(1, 1),
        rq(-1, 1),
        rq(2, 1),
        rq(-2, 1),
        rq(1, 2),
        rq(-1, 3),
        rq(3, 7),
        rq(-7, 2),
    ]
}

pub fn standard_uppers() -> Vec<u64> {
    vec![0, 1, 2, 3, 5, 10, 37, 100]
}

fn spec_params(spec: &SequenceSpec) -> Vec<Param> {
    vec![param("g0", spec.g0()), param("g1", spec.g1())]
}

/// Exhaustive sweep of the four-parameter square identity over
/// |j|,|k|,|m|,|s| <= bound.
pub fn run_main_suite(specs: &[SequenceSpec], bound: i64) -> IdentityReport {
    let b = bound.abs();
    fuzz_identity(IdentityId::Main, specs, &vec![-b..=b; 4]).expect("arity matches")
}

/// Every catalog entry on its declared grid (optionally clamped).
pub fn run_catalog_suites(specs: &[SequenceSpec], clamp: Option<i64>) -> Vec<IdentityReport> {
    IdentityId::ALL
        .iter()
        .filter(|id| !matches!(id, IdentityId::Main))
        .map(|&id| fuzz_identity(id, specs, &id.grid(clamp)).expect("arity matches"))
        .collect()
}

/// Grid for the summation suites.
#[derive(Debug, Clone)]
pub struct SumGrid {
    pub specs: Vec<SequenceSpec>,
    pub shift_bound: i64,
    pub weights: Vec<BigRat>,
    pub uppers: Vec<u64>,
}

impl Default for SumGrid {
    fn default() -> Self {
        Self {
            specs: default_specs6(),
            shift_bound: 6,
            weights: standard_weights(),
            uppers: standard_uppers(),
        }
    }
}

impl SumGrid {
    pub fn with_shift_bound(mut self, bound: i64) -> Self {
        self.shift_bound = bound.abs();
        self
    }

    fn shifts(&self) -> Vec<i64> {
        (-self.shift_bound..=self.shift_bound).collect()
    }
}

struct Outcome {
    key: usize,
    failure: Option<FailureCase>,
    degenerate: Option<DegenerateCase>,
}

fn collect_report(name: &str, checked: u64, outcomes: Vec<Outcome>) -> IdentityReport {
    let mut outcomes = outcomes;
    outcomes.sort_by_key(|o| o.key);
    let mut report = IdentityReport::new(name);
    report.tuples_checked = checked;
    for o in outcomes {
        if let Some(f) = o.failure {
            report.failures.push(f);
        }
        if let Some(d) = o.degenerate {
            report.degenerate.push(d);
        }
    }
    report
}

fn mismatch(params: Vec<Param>, closed: &BigRat, brute: &BigRat) -> Option<FailureCase> {
    (closed != brute).then(|| FailureCase {
        params,
        residual: format_rat(&(closed - brute)),
    })
}

/// Closed-form-vs-oracle sweeps for every summation operation, including
/// the singular-weight dispatch paths and the unit-weight routes.
pub fn run_sum_suites(grid: &SumGrid) -> Vec<IdentityReport> {
    let shifts = grid.shifts();
    let one = rq(1, 1);

    // (spec, k, x, n) grid shared by the single-shift ops
    let mut single: Vec<(usize, usize, usize, usize)> = Vec::new();
    for si in 0..grid.specs.len() {
        for ki in 0..shifts.len() {
            for xi in 0..grid.weights.len() {
                for ni in 0..grid.uppers.len() {
                    single.push((si, ki, xi, ni));
                }
            }
        }
    }

    type SingleEval = dyn Fn(&SequenceSpec, i64, &BigRat, u64) -> BigRat + Sync;
    let single_suite = |name: &str, closed_eval: &SingleEval, oracle_eval: &SingleEval| {
        let outcomes: Vec<Outcome> = single
            .par_iter()
            .enumerate()
            .filter_map(|(key, &(si, ki, xi, ni))| {
                let spec = &grid.specs[si];
                let (k, x, n) = (shifts[ki], &grid.weights[xi], grid.uppers[ni]);
                let closed = closed_eval(spec, k, x, n);
                let brute = oracle_eval(spec, k, x, n);
                let mut params = spec_params(spec);
                params.extend([param("k", k), param("x", format_rat(x)), param("n", n)]);
                mismatch(params, &closed, &brute).map(|failure| Outcome {
                    key,
                    failure: Some(failure),
                    degenerate: None,
                })
            })
            .collect();
        collect_report(name, single.len() as u64, outcomes)
    };
    let square_brute: &SingleEval = &|spec, k, x, n| {
        sum_sq_brute(&WeightedSumQuery::new(spec.clone(), k, x.clone(), n))
    };

    let closed_report = single_suite(
        "SUM_SQ_CLOSED",
        &|spec, k, x, n| sum_sq_closed(&WeightedSumQuery::new(spec.clone(), k, x.clone(), n)),
        square_brute,
    );
    let initfree_report = single_suite(
        "SUM_SQ_INITFREE",
        &|spec, k, x, n| sum_sq_initfree(&WeightedSumQuery::new(spec.clone(), k, x.clone(), n)),
        square_brute,
    );

    // spec-free Fibonacci squares
    let mut fib_grid: Vec<(usize, usize)> = Vec::new();
    for xi in 0..grid.weights.len() {
        for ni in 0..grid.uppers.len() {
            fib_grid.push((xi, ni));
        }
    }
    let fib_spec = SequenceSpec::fibonacci();
    let fib_outcomes: Vec<Outcome> = fib_grid
        .par_iter()
        .enumerate()
        .filter_map(|(key, &(xi, ni))| {
            let (x, n) = (&grid.weights[xi], grid.uppers[ni]);
            let closed = sum_fib_sq_closed(x, n);
            let brute = sum_sq_brute(&WeightedSumQuery::new(fib_spec.clone(), 0, x.clone(), n));
            let params = vec![param("x", format_rat(x)), param("n", n)];
            mismatch(params, &closed, &brute).map(|failure| Outcome {
                key,
                failure: Some(failure),
                degenerate: None,
            })
        })
        .collect();
    let fib_report = collect_report("SUM_FIB_SQ_CLOSED", fib_grid.len() as u64, fib_outcomes);

    // (spec, k, s, x, n) product grid; zero shifts are precondition-excluded
    let mut product: Vec<(usize, usize, usize, usize, usize)> = Vec::new();
    for si in 0..grid.specs.len() {
        for ki in 0..shifts.len() {
            for li in 0..shifts.len() {
                for xi in 0..grid.weights.len() {
                    for ni in 0..grid.uppers.len() {
                        product.push((si, ki, li, xi, ni));
                    }
                }
            }
        }
    }
    let product_outcomes: Vec<Outcome> = product
        .par_iter()
        .enumerate()
        .filter_map(|(key, &(si, ki, li, xi, ni))| {
            let spec = &grid.specs[si];
            let (k, s, x, n) = (shifts[ki], shifts[li], &grid.weights[xi], grid.uppers[ni]);
            let mut params = spec_params(spec);
            params.extend([
                param("k", k),
                param("s", s),
                param("x", format_rat(x)),
                param("n", n),
            ]);
            match sum_product_closed(spec, k, s, x, n) {
                Ok(closed) => {
                    let brute = sum_product_brute(spec, k, s, x, n);
                    mismatch(params, &closed, &brute).map(|failure| Outcome {
                        key,
                        failure: Some(failure),
                        degenerate: None,
                    })
                }
                Err(Error::DegenerateFactor { .. }) => Some(Outcome {
                    key,
                    failure: None,
                    degenerate: Some(DegenerateCase {
                        params,
                        residual: None,
                    }),
                }),
                Err(other) => Some(Outcome {
                    key,
                    failure: Some(FailureCase {
                        params,
                        residual: format!("error: {other}"),
                    }),
                    degenerate: None,
                }),
            }
        })
        .collect();
    let degenerate_count = product_outcomes
        .iter()
        .filter(|o| o.degenerate.is_some())
        .count() as u64;
    let product_report = collect_report(
        "SUM_PRODUCT_CLOSED",
        product.len() as u64 - degenerate_count,
        product_outcomes,
    );

    // (spec, x, n) corollary grid, two components each
    let mut pair_grid: Vec<(usize, usize, usize)> = Vec::new();
    for si in 0..grid.specs.len() {
        for xi in 0..grid.weights.len() {
            for ni in 0..grid.uppers.len() {
                pair_grid.push((si, xi, ni));
            }
        }
    }
    let corollary_outcomes: Vec<Outcome> = pair_grid
        .par_iter()
        .enumerate()
        .filter_map(|(key, &(si, xi, ni))| {
            let spec = &grid.specs[si];
            let (x, n) = (&grid.weights[xi], grid.uppers[ni]);
            let (first, second) = corollary_product_sums(spec, x, n);
            let brute_first = sum_product_brute(spec, 1, -2, x, n);
            let brute_second = sum_product_brute(spec, 0, -1, x, n);
            let make = |part: &str, closed: &BigRat, brute: &BigRat| {
                let mut params = spec_params(spec);
                params.extend([
                    param("part", part),
                    param("x", format_rat(x)),
                    param("n", n),
                ]);
                mismatch(params, closed, brute)
            };
            let failure =
                make("1", &first, &brute_first).or_else(|| make("2", &second, &brute_second));
            failure.map(|failure| Outcome {
                key,
                failure: Some(failure),
                degenerate: None,
            })
        })
        .collect();
    let corollary_report = collect_report(
        "COROLLARY_PRODUCT_SUMS",
        (pair_grid.len() * 2) as u64,
        corollary_outcomes,
    );

    let spread_report = single_suite(
        "SPREAD_PRODUCT_CLOSED",
        &|spec, k, x, n| spread_product_closed(spec, k, x, n),
        &|spec, k, x, n| sum_product_brute(spec, k, -k, x, n),
    );

    // unit-weight square-sum routes
    let mut unit_grid: Vec<(usize, usize, usize)> = Vec::new();
    for si in 0..grid.specs.len() {
        for ki in 0..shifts.len() {
            for ni in 0..grid.uppers.len() {
                unit_grid.push((si, ki, ni));
            }
        }
    }
    let unit_outcomes: Vec<Outcome> = unit_grid
        .par_iter()
        .enumerate()
        .filter_map(|(key, &(si, ki, ni))| {
            let spec = &grid.specs[si];
            let (k, n) = (shifts[ki], grid.uppers[ni]);
            let brute = sum_sq_brute(&WeightedSumQuery::new(spec.clone(), k, one.clone(), n));
            for (route, value) in unit_sum_specials(spec, k, n).routes() {
                let closed = BigRational::from_integer(value.clone());
                if closed != brute {
                    let mut params = spec_params(spec);
                    params.extend([param("route", route), param("k", k), param("n", n)]);
                    return Some(Outcome {
                        key,
                        failure: mismatch(params, &closed, &brute),
                        degenerate: None,
                    });
                }
            }
            None
        })
        .collect();
    let unit_report = collect_report(
        "UNIT_SUM_SPECIALS",
        (unit_grid.len() * 3) as u64,
        unit_outcomes,
    );

    // unit-weight product routes (scaled by 2 F_s F_k)
    let mut unit_product_grid: Vec<(usize, usize, usize, usize)> = Vec::new();
    for si in 0..grid.specs.len() {
        for ki in 0..shifts.len() {
            for li in 0..shifts.len() {
                for ni in 0..grid.uppers.len() {
                    unit_product_grid.push((si, ki, li, ni));
                }
            }
        }
    }
    let unit_product_outcomes: Vec<Outcome> = unit_product_grid
        .par_iter()
        .enumerate()
        .filter_map(|(key, &(si, ki, li, ni))| {
            let spec = &grid.specs[si];
            let (k, s, n) = (shifts[ki], shifts[li], grid.uppers[ni]);
            let scale = BigRational::from_integer(2 * fib(s) * fib(k));
            let expected = scale * sum_product_brute(spec, k, s, &one, n);
            for (route, value) in unit_product_sum_routes(spec, k, s, n).routes() {
                let closed = BigRational::from_integer(value.clone());
                if closed != expected {
                    let mut params = spec_params(spec);
                    params.extend([
                        param("route", route),
                        param("k", k),
                        param("s", s),
                        param("n", n),
                    ]);
                    return Some(Outcome {
                        key,
                        failure: mismatch(params, &closed, &expected),
                        degenerate: None,
                    });
                }
            }
            None
        })
        .collect();
    let unit_product_report = collect_report(
        "UNIT_PRODUCT_ROUTES",
        (unit_product_grid.len() * 3) as u64,
        unit_product_outcomes,
    );

    vec![
        closed_report,
        initfree_report,
        fib_report,
        product_report,
        corollary_report,
        spread_report,
        unit_report,
        unit_product_report,
    ]
}

/// Generating-function coefficient checks.
pub fn run_gf_suites(
    specs: &[SequenceSpec],
    shift_bound: i64,
    fib_order: usize,
    spread_order: usize,
) -> Vec<IdentityReport> {
    let mut out = vec![gf_fib_square_check(fib_order)];
    let keys: Vec<(usize, i64)> = (0..specs.len())
        .flat_map(|si| (-shift_bound.abs()..=shift_bound.abs()).map(move |k| (si, k)))
        .collect();
    let partials: Vec<IdentityReport> = keys
        .par_iter()
        .map(|&(si, k)| gf_spread_product_check(&specs[si], k, spread_order))
        .collect();
    let mut merged = IdentityReport::new("GF_SPREAD_PRODUCT");
    for part in partials {
        merged.tuples_checked += part.tuples_checked;
        merged.failures.extend(part.failures);
    }
    out.push(merged);
    out
}

/// Grid for the double-binomial suites.
#[derive(Debug, Clone)]
pub struct BinomialGrid {
    pub specs: Vec<SequenceSpec>,
    pub skm_bound: i64,
    pub r_bound: i64,
    pub n_max: u64,
}

impl Default for BinomialGrid {
    fn default() -> Self {
        Self {
            specs: default_specs4(),
            skm_bound: 4,
            r_bound: 6,
            n_max: 5,
        }
    }
}

impl BinomialGrid {
    pub fn clamped(mut self, bound: i64) -> Self {
        self.skm_bound = self.skm_bound.min(bound.abs().max(1));
        self.r_bound = self.r_bound.min(bound.abs().max(1));
        self.n_max = self.n_max.min(bound.unsigned_abs().max(1));
        self
    }

    fn shift_triples(&self, include_degenerate: bool) -> Vec<(i64, i64, i64)> {
        let b = self.skm_bound;
        let mut out = Vec::new();
        for s in -b..=b {
            for k in -b..=b {
                for m in -b..=b {
                    if include_degenerate || !square_tuple_degenerate(s, k, m) {
                        out.push((s, k, m));
                    }
                }
            }
        }
        out
    }
}

/// The partial-sum engine against brute summation, the six double-binomial
/// variants on the squares recurrence, and the three concrete square
/// double-binomial identities (with degenerate tuples evaluated and
/// reported separately).
pub fn run_binomial_suites(grid: &BinomialGrid) -> Vec<IdentityReport> {
    let mut suites = Vec::new();

    // partial-sum engine: squares recurrence per spec + plain Fibonacci
    let weights = standard_weights();
    let uppers: Vec<u64> = standard_uppers().into_iter().filter(|n| *n <= 100).collect();
    let max_n = uppers.iter().copied().max().unwrap_or(0) as i64;
    let mut checked = 0u64;
    let mut report = IdentityReport::new("PARTIAL_SUM_CLOSED");
    let square_desc = RecurrenceDescriptor::new(vec![
        (rq(2, 1), 1),
        (rq(2, 1), 2),
        (rq(-1, 1), 3),
    ])
    .expect("valid descriptor");
    let fib_desc = RecurrenceDescriptor::new(vec![(rq(1, 1), 1), (rq(1, 1), 2)])
        .expect("valid descriptor");
    let fib_oracle = |j: i64| fib(j);
    for (desc_name, spec) in std::iter::once(("FIB", None)).chain(
        grid.specs
            .iter()
            .map(|s| ("SQUARES", Some(s)))
            .collect::<Vec<_>>(),
    ) {
        let (desc, oracle): (&RecurrenceDescriptor, Box<dyn SequenceOracle>) = match spec {
            None => (&fib_desc, Box::new(fib_oracle)),
            Some(s) => (
                &square_desc,
                Box::new(SquareWindow::new(s, -6, max_n + 6).expect("window")),
            ),
        };
        for x in &weights {
            for &n in &uppers {
                let mut params = vec![param("descriptor", desc_name)];
                if let Some(s) = spec {
                    params.extend(spec_params(s));
                }
                params.extend([param("x", format_rat(x)), param("n", n)]);
                match closed_partial_sum(desc, oracle.as_ref(), x, n) {
                    Ok(closed) => {
                        checked += 1;
                        let brute = brute_partial_sum(oracle.as_ref(), x, n);
                        if let Some(f) = mismatch(params, &closed, &brute) {
                            report.failures.push(f);
                        }
                    }
                    Err(Error::SingularDenominator { .. }) => {
                        report.degenerate.push(DegenerateCase {
                            params,
                            residual: None,
                        });
                    }
                    Err(other) => report.failures.push(FailureCase {
                        params,
                        residual: format!("error: {other}"),
                    }),
                }
            }
        }
    }
    report.tuples_checked = checked;
    suites.push(report);

    // six generic variants over the non-degenerate shift triples
    let triples = grid.shift_triples(false);
    let mut keys: Vec<(usize, usize)> = Vec::new();
    for si in 0..grid.specs.len() {
        for ti in 0..triples.len() {
            keys.push((si, ti));
        }
    }
    for variant in 1..=6u8 {
        let outcomes: Vec<Outcome> = keys
            .par_iter()
            .enumerate()
            .filter_map(|(key, &(si, ti))| {
                let spec = &grid.specs[si];
                let (s, k, m) = triples[ti];
                let desc = RecurrenceDescriptor::square_four_term(s, k, m).expect("non-degenerate");
                let reach = grid.r_bound + 3 * grid.skm_bound * (grid.n_max as i64 + 1) + 2;
                let oracle = SquareWindow::new(spec, -reach, reach).expect("window");
                for r in -grid.r_bound..=grid.r_bound {
                    for n in 0..=grid.n_max {
                        let residual = double_binomial_residual(&desc, &oracle, variant, r, n)
                            .expect("valid descriptor and oracle");
                        if !residual.is_zero() {
                            let mut params = spec_params(spec);
                            params.extend([
                                param("s", s),
                                param("k", k),
                                param("m", m),
                                param("r", r),
                                param("n", n),
                            ]);
                            return Some(Outcome {
                                key,
                                failure: Some(FailureCase {
                                    params,
                                    residual: format_rat(&residual),
                                }),
                                degenerate: None,
                            });
                        }
                    }
                }
                None
            })
            .collect();
        let per_key = (2 * grid.r_bound + 1) as u64 * (grid.n_max + 1);
        suites.push(collect_report(
            &format!("FOUR_TERM_VARIANT_{variant}"),
            keys.len() as u64 * per_key,
            outcomes,
        ));
    }

    // three concrete square identities over all shift triples
    let all_triples = grid.shift_triples(true);
    let mut all_keys: Vec<(usize, usize, i64, u64)> = Vec::new();
    for si in 0..grid.specs.len() {
        for ti in 0..all_triples.len() {
            for r in -grid.r_bound..=grid.r_bound {
                for n in 0..=grid.n_max {
                    all_keys.push((si, ti, r, n));
                }
            }
        }
    }
    for which in 1..=3u8 {
        let outcomes: Vec<Outcome> = all_keys
            .par_iter()
            .enumerate()
            .filter_map(|(key, &(si, ti, r, n))| {
                let spec = &grid.specs[si];
                let (s, k, m) = all_triples[ti];
                let residual = square_double_binomial_residual(spec, which, n, s, k, m, r)
                    .expect("valid variant");
                let degenerate = square_tuple_degenerate(s, k, m);
                if degenerate {
                    let mut params = spec_params(spec);
                    params.extend([
                        param("s", s),
                        param("k", k),
                        param("m", m),
                        param("r", r),
                        param("n", n),
                    ]);
                    Some(Outcome {
                        key,
                        failure: None,
                        degenerate: Some(DegenerateCase {
                            params,
                            residual: Some(residual.to_string()),
                        }),
                    })
                } else if !residual.is_zero() {
                    let mut params = spec_params(spec);
                    params.extend([
                        param("s", s),
                        param("k", k),
                        param("m", m),
                        param("r", r),
                        param("n", n),
                    ]);
                    Some(Outcome {
                        key,
                        failure: Some(FailureCase {
                            params,
                            residual: residual.to_string(),
                        }),
                        degenerate: None,
                    })
                } else {
                    None
                }
            })
            .collect();
        let degenerate_count = outcomes.iter().filter(|o| o.degenerate.is_some()).count() as u64;
        suites.push(collect_report(
            &format!("DOUBLE_BINOMIAL_SQ_{which}"),
            all_keys.len() as u64 - degenerate_count,
            outcomes,
        ));
    }

    suites
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_main_suite_passes() {
        let report = run_main_suite(&default_specs4(), 3);
        assert!(report.passed());
        assert_eq!(report.tuples_checked, 7u64.pow(4) * 4);
    }

    #[test]
    fn small_sum_suites_pass() {
        let grid = SumGrid {
            specs: vec![spec_of(0, 1), spec_of(3, -5)],
            shift_bound: 2,
            weights: vec![rq(0, 1), rq(1, 1), rq(-1, 1), rq(1, 2)],
            uppers: vec![0, 1, 3, 6],
        };
        for report in run_sum_suites(&grid) {
            assert!(report.passed(), "{} failed", report.identity);
        }
    }

    #[test]
    fn small_binomial_suites_pass() {
        let grid = BinomialGrid {
            specs: vec![spec_of(2, 1)],
            skm_bound: 2,
            r_bound: 2,
            n_max: 2,
        };
        for report in run_binomial_suites(&grid) {
            assert!(report.passed(), "{} failed", report.identity);
            assert!(report.degenerate_all_zero(), "{}", report.identity);
        }
    }

    #[test]
    fn gf_suites_pass() {
        for report in run_gf_suites(&default_specs4(), 2, 16, 8) {
            assert!(report.passed(), "{} failed", report.identity);
        }
    }
}
