//! The finite (non-summation) identity catalog as residual evaluators
//! (left side minus right side), plus a grid fuzzer that asserts every
//! residual vanishes.
//!
//! Residuals, not booleans: a failing tuple carries magnitude information
//! for diagnosis.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::report::{param, FailureCase, IdentityReport};
use crate::sequence::{fib, lucas, SequenceSpec};

/// Tags for the identity catalog. `Main` is the four-parameter weighted
/// square identity; the remaining entries are the fixed-shift square
/// identities it specializes to, the addition/cross-term identities it is
/// proved from, and the shift/spread identities used by the product sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// F_s F_m F_{m-s} G_{j+k}^2 = F_{m-s} F_{m-k} F_{s-k} G_j^2
    ///   + (-1)^{s+k} F_k F_m F_{m-k} G_{j+s}^2 - (-1)^{s+k} F_k F_s F_{s-k} G_{j+m}^2
    Main,
    /// G_{j-1}^2 + G_{j+2}^2 = 2 G_j^2 + 2 G_{j+1}^2
    BrousseauSq,
    /// G_{j+2}^2 + 2 G_{j-2}^2 = 3 G_{j-1}^2 + 6 G_j^2
    ThreeSix,
    /// 3 G_{j+3}^2 + G_{j-3}^2 = 16 G_{j+1}^2 + 12 G_j^2
    SixteenTwelve,
    /// F_k F_{k+1} G_{j+1}^2 - F_k F_{k-1} G_{j-1}^2 = G_{j+k}^2 - F_{k+1} F_{k-1} G_j^2
    FkShift,
    /// F_{s-k} G_{j+m} = F_{m-k} G_{j+s} + (-1)^{s+k+1} F_{m-s} G_{j+k}
    Addition3Term,
    /// (-1)^k F_{s-k} G_j = F_s G_{j+k} - F_k G_{j+s}
    M0Special,
    /// 2 F_s F_k G_{j+k} G_{j+s} = F_s^2 G_{j+k}^2 + F_k^2 G_{j+s}^2 - F_{s-k}^2 G_j^2
    CrossTerm,
    /// 5 F_m F_n = L_{m+n} - (-1)^n L_{m-n}
    MultFormula,
    /// G_{j+k}^2 = F_{k+1} F_{k-1} G_j^2 + F_{k+1} F_k G_{j+1}^2 - F_{k-1} F_k G_{j-1}^2
    Sq3Term,
    /// F_j F_{j-1} = F_j^2 - F_{j-1}^2 + (-1)^j
    CassiniProd,
    /// L_k G_j = G_{j+k} + (-1)^k G_{j-k}
    SpreadLk,
    /// L_k^2 G_j^2 = G_{j+k}^2 + G_{j-k}^2 + 2 (-1)^k G_{j+k} G_{j-k}
    SpreadLkSq,
    /// F_{2k} G_{j+r} = F_{r+k} G_{j+k} - F_{r-k} G_{j-k}
    F2kComb,
    /// G_{-j} = (-1)^j (G_0 L_j - G_j), with the left side taken from the
    /// backward recurrence sweep so the two negative-index routes are
    /// genuinely independent.
    NegIndex,
}

impl IdentityId {
    pub const ALL: [IdentityId; 15] = [
        IdentityId::Main,
        IdentityId::BrousseauSq,
        IdentityId::ThreeSix,
        IdentityId::SixteenTwelve,
        IdentityId::FkShift,
        IdentityId::Addition3Term,
        IdentityId::M0Special,
        IdentityId::CrossTerm,
        IdentityId::MultFormula,
        IdentityId::Sq3Term,
        IdentityId::CassiniProd,
        IdentityId::SpreadLk,
        IdentityId::SpreadLkSq,
        IdentityId::F2kComb,
        IdentityId::NegIndex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Main => "MAIN",
            IdentityId::BrousseauSq => "BROUSSEAU_SQ",
            IdentityId::ThreeSix => "THREE_SIX",
            IdentityId::SixteenTwelve => "SIXTEEN_TWELVE",
            IdentityId::FkShift => "FK_SHIFT",
            IdentityId::Addition3Term => "ADDITION_3TERM",
            IdentityId::M0Special => "M0_SPECIAL",
            IdentityId::CrossTerm => "CROSS_TERM",
            IdentityId::MultFormula => "MULT_FORMULA",
            IdentityId::Sq3Term => "SQ_3TERM",
            IdentityId::CassiniProd => "CASSINI_PROD",
            IdentityId::SpreadLk => "SPREAD_LK",
            IdentityId::SpreadLkSq => "SPREAD_LK_SQ",
            IdentityId::F2kComb => "F2K_COMB",
            IdentityId::NegIndex => "NEG_INDEX",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            IdentityId::Main => &["j", "k", "m", "s"],
            IdentityId::BrousseauSq
            | IdentityId::ThreeSix
            | IdentityId::SixteenTwelve
            | IdentityId::CassiniProd
            | IdentityId::NegIndex => &["j"],
            IdentityId::FkShift
            | IdentityId::Sq3Term
            | IdentityId::SpreadLk
            | IdentityId::SpreadLkSq => &["j", "k"],
            IdentityId::Addition3Term => &["j", "k", "m", "s"],
            IdentityId::M0Special | IdentityId::CrossTerm => &["j", "k", "s"],
            IdentityId::MultFormula => &["m", "n"],
            IdentityId::F2kComb => &["j", "k", "r"],
        }
    }

    pub fn arity(self) -> usize {
        self.param_names().len()
    }

    /// Whether the sequence initial terms enter the identity at all
    /// (the Fibonacci/Lucas-only entries ignore them).
    pub fn uses_spec(self) -> bool {
        !matches!(self, IdentityId::MultFormula | IdentityId::CassiniProd)
    }

    /// Per-parameter bound of the identity's declared verification grid:
    /// wide for low arities, narrower as the tuple count grows.
    pub fn default_bound(self) -> i64 {
        match self.arity() {
            1 | 2 => 50,
            3 => 20,
            _ => 8,
        }
    }

    /// The declared grid as per-parameter ranges, optionally clamped.
    pub fn grid(self, clamp: Option<i64>) -> Vec<RangeInclusive<i64>> {
        let mut b = self.default_bound();
        if let Some(c) = clamp {
            b = b.min(c.abs());
        }
        vec![-b..=b; self.arity()]
    }
}

fn flip_if_odd(exponent: i64, v: BigInt) -> BigInt {
    if exponent % 2 == 0 {
        v
    } else {
        -v
    }
}

/// Residual of the four-parameter square identity; zero for every choice
/// of integers j, k, m, s and every sequence.
pub fn residual_main(spec: &SequenceSpec, j: i64, k: i64, m: i64, s: i64) -> BigInt {
    let lhs = fib(s) * fib(m) * fib(m - s) * spec.term_sq(j + k);
    let t1 = fib(m - s) * fib(m - k) * fib(s - k) * spec.term_sq(j);
    let t2 = flip_if_odd(s + k, fib(k) * fib(m) * fib(m - k) * spec.term_sq(j + s));
    let t3 = flip_if_odd(s + k, fib(k) * fib(s) * fib(s - k) * spec.term_sq(j + m));
    lhs - (t1 + t2 - t3)
}

/// Residual (LHS - RHS) of the named catalog entry; zero everywhere.
/// Parameter order follows `IdentityId::param_names`.
pub fn residual_catalog(id: IdentityId, spec: &SequenceSpec, params: &[i64]) -> Result<BigInt, Error> {
    if params.len() != id.arity() {
        return Err(Error::WrongArity {
            identity: id.name(),
            expected: id.arity(),
            got: params.len(),
        });
    }
    let g = |i: i64| spec.term(i);
    let gsq = |i: i64| spec.term_sq(i);
    Ok(match id {
        IdentityId::Main => residual_main(spec, params[0], params[1], params[2], params[3]),
        IdentityId::BrousseauSq => {
            let j = params[0];
            gsq(j - 1) + gsq(j + 2) - 2 * gsq(j) - 2 * gsq(j + 1)
        }
        IdentityId::ThreeSix => {
            let j = params[0];
            gsq(j + 2) + 2 * gsq(j - 2) - 3 * gsq(j - 1) - 6 * gsq(j)
        }
        IdentityId::SixteenTwelve => {
            let j = params[0];
            3 * gsq(j + 3) + gsq(j - 3) - 16 * gsq(j + 1) - 12 * gsq(j)
        }
        IdentityId::FkShift => {
            let (j, k) = (params[0], params[1]);
            fib(k) * fib(k + 1) * gsq(j + 1) - fib(k) * fib(k - 1) * gsq(j - 1)
                - (gsq(j + k) - fib(k + 1) * fib(k - 1) * gsq(j))
        }
        IdentityId::Addition3Term => {
            let (j, k, m, s) = (params[0], params[1], params[2], params[3]);
            fib(s - k) * g(j + m)
                - fib(m - k) * g(j + s)
                - flip_if_odd(s + k + 1, fib(m - s) * g(j + k))
        }
        IdentityId::M0Special => {
            let (j, k, s) = (params[0], params[1], params[2]);
            flip_if_odd(k, fib(s - k) * g(j)) - fib(s) * g(j + k) + fib(k) * g(j + s)
        }
        IdentityId::CrossTerm => {
            let (j, k, s) = (params[0], params[1], params[2]);
            let (fs, fk) = (fib(s), fib(k));
            2 * &fs * &fk * g(j + k) * g(j + s) - &fs * &fs * gsq(j + k) - &fk * &fk * gsq(j + s)
                + fib(s - k) * fib(s - k) * gsq(j)
        }
        IdentityId::MultFormula => {
            let (m, n) = (params[0], params[1]);
            5 * fib(m) * fib(n) - lucas(m + n) + flip_if_odd(n, lucas(m - n))
        }
        IdentityId::Sq3Term => {
            let (j, k) = (params[0], params[1]);
            gsq(j + k) - fib(k + 1) * fib(k - 1) * gsq(j) - fib(k + 1) * fib(k) * gsq(j + 1)
                + fib(k - 1) * fib(k) * gsq(j - 1)
        }
        IdentityId::CassiniProd => {
            let j = params[0];
            fib(j) * fib(j - 1) - fib(j) * fib(j) + fib(j - 1) * fib(j - 1)
                - flip_if_odd(j, BigInt::one())
        }
        IdentityId::SpreadLk => {
            let (j, k) = (params[0], params[1]);
            lucas(k) * g(j) - g(j + k) - flip_if_odd(k, g(j - k))
        }
        IdentityId::SpreadLkSq => {
            let (j, k) = (params[0], params[1]);
            let l = lucas(k);
            &l * &l * gsq(j) - gsq(j + k) - gsq(j - k)
                - flip_if_odd(k, 2 * g(j + k) * g(j - k))
        }
        IdentityId::F2kComb => {
            let (j, k, r) = (params[0], params[1], params[2]);
            fib(2 * k) * g(j + r) - fib(r + k) * g(j + k) + fib(r - k) * g(j - k)
        }
        IdentityId::NegIndex => {
            let j = params[0];
            // left side from the backward sweep, right side from the
            // closed-form negative-index rule
            let swept = spec.window(-j, -j).expect("singleton window")[0].clone();
            swept - flip_if_odd(j, spec.g0() * lucas(j) - g(j))
        }
    })
}

/// Evaluates the identity's residual over the full Cartesian grid
/// (specs x ranges) and reports every nonzero residual. The failure list
/// is ordered by lexicographic (spec, parameter tuple) position no matter
/// how the work is split across threads.
pub fn fuzz_identity(
    id: IdentityId,
    specs: &[SequenceSpec],
    ranges: &[RangeInclusive<i64>],
) -> Result<IdentityReport, Error> {
    if ranges.len() != id.arity() {
        return Err(Error::WrongArity {
            identity: id.name(),
            expected: id.arity(),
            got: ranges.len(),
        });
    }
    let mut widths = Vec::with_capacity(ranges.len());
    for r in ranges {
        if r.start() > r.end() {
            return Err(Error::InvalidRange {
                lo: *r.start(),
                hi: *r.end(),
            });
        }
        widths.push((*r.end() as i128 - *r.start() as i128 + 1) as u128);
    }
    let grid: u128 = widths.iter().product();
    let total = grid
        .checked_mul(specs.len() as u128)
        .filter(|t| *t <= u64::MAX as u128)
        .ok_or(Error::GridTooLarge)? as u64;

    let decode = |ix: u64| -> (usize, Vec<i64>) {
        let mut rest = ix as u128;
        let mut params = vec![0i64; ranges.len()];
        for (slot, (range, width)) in params.iter_mut().zip(ranges.iter().zip(&widths)).rev() {
            let offset = (rest % width) as i64;
            rest /= width;
            *slot = range.start() + offset;
        }
        (rest as usize, params)
    };

    let mut failures: Vec<(u64, FailureCase)> = (0..total)
        .into_par_iter()
        .filter_map(|ix| {
            let (spec_ix, params) = decode(ix);
            let spec = &specs[spec_ix];
            let residual = residual_catalog(id, spec, &params).expect("arity checked");
            if residual.is_zero() {
                None
            } else {
                let mut ps = vec![param("g0", spec.g0()), param("g1", spec.g1())];
                for (name, value) in id.param_names().iter().zip(&params) {
                    ps.push(param(name, value));
                }
                Some((
                    ix,
                    FailureCase {
                        params: ps,
                        residual: residual.to_string(),
                    },
                ))
            }
        })
        .collect();
    failures.sort_by_key(|(ix, _)| *ix);

    Ok(IdentityReport {
        identity: id.name().to_string(),
        tuples_checked: total,
        failures: failures.into_iter().map(|(_, case)| case).collect(),
        degenerate: Vec::new(),
    })
}
