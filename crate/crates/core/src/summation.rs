//! Closed-form evaluation of weighted partial sums of squares and products
//! of Fibonacci-like numbers, each paired with a brute-force oracle.
//!
//! Weights are exact rationals throughout; every equality below is decidable
//! structural equality, never floating point. The characteristic denominator
//! x^3 - 2x^2 - 2x + 1 = (x + 1)(x^2 - 3x + 1) vanishes at a rational weight
//! only at x = -1, so each closed form dispatches x = -1 (and, where a bare
//! 1/x or 1/(2x) factor appears, x = 0) to a formula that stays total.
//! x^0 = 1 by convention, including at x = 0.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::Error;
use crate::sequence::{fib, lucas, SequenceSpec};

pub type BigRat = BigRational;

/// One weighted square-sum query: sum_{j=0}^{upper} weight^j G_{j+shift}^2.
#[derive(Debug, Clone)]
pub struct WeightedSumQuery {
    pub spec: SequenceSpec,
    pub shift: i64,
    pub weight: BigRat,
    pub upper: u64,
}

impl WeightedSumQuery {
    pub fn new(spec: SequenceSpec, shift: i64, weight: BigRat, upper: u64) -> Self {
        Self {
            spec,
            shift,
            weight,
            upper,
        }
    }
}

pub(crate) fn rat(v: BigInt) -> BigRat {
    BigRat::from_integer(v)
}

fn rat_i(v: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(v))
}

/// x^e for e >= 0. Canonical form is preserved: coprime numerator and
/// denominator stay coprime under powers and the denominator stays positive.
pub(crate) fn rat_pow(x: &BigRat, e: u64) -> BigRat {
    if e == 0 {
        return BigRat::one();
    }
    BigRat::new_raw(Pow::pow(x.numer(), e), Pow::pow(x.denom(), e))
}

fn is_neg_one(x: &BigRat) -> bool {
    x.is_integer() && x.numer() == &BigInt::from(-1)
}

fn flip_if_odd_int(exponent: i64, v: BigInt) -> BigInt {
    if exponent % 2 == 0 {
        v
    } else {
        -v
    }
}

fn upper_as_i64(n: u64) -> i64 {
    i64::try_from(n).expect("upper limit fits in i64")
}

// ---------------------------------------------------------------------------
// brute-force oracles
// ---------------------------------------------------------------------------

/// Direct O(n) summation of sum_{j=0}^n x^j G_{j+k} G_{j+s}; the oracle for
/// all product closed forms, and (at k = s) for the square sums. Constant
/// memory: one recurrence sweep per shifted factor.
pub fn sum_product_brute(spec: &SequenceSpec, k: i64, s: i64, x: &BigRat, n: u64) -> BigRat {
    if x.is_integer() {
        let xi = x.to_integer();
        let mut acc = BigInt::zero();
        let mut xp = BigInt::one();
        let mut fold = |term: BigInt, last: bool| {
            acc += &xp * term;
            if !last {
                xp = &xp * &xi;
            }
        };
        if k == s {
            let mut it = spec.iter_from(k);
            for j in 0..=n {
                let t = it.next().expect("infinite iterator");
                fold(&t * &t, j == n);
            }
        } else {
            let mut left = spec.iter_from(k);
            let mut right = spec.iter_from(s);
            for j in 0..=n {
                let a = left.next().expect("infinite iterator");
                let b = right.next().expect("infinite iterator");
                fold(a * b, j == n);
            }
        }
        return rat(acc);
    }
    let mut acc = BigRat::zero();
    let mut xp = BigRat::one();
    let mut left = spec.iter_from(k);
    let mut right = spec.iter_from(s);
    for _ in 0..=n {
        let a = left.next().expect("infinite iterator");
        let b = right.next().expect("infinite iterator");
        acc += &xp * rat(a * b);
        xp *= x;
    }
    acc
}

/// Direct O(n) summation of the weighted square sum; the master oracle.
pub fn sum_sq_brute(q: &WeightedSumQuery) -> BigRat {
    sum_product_brute(&q.spec, q.shift, q.shift, &q.weight, q.upper)
}

// ---------------------------------------------------------------------------
// weighted square sums
// ---------------------------------------------------------------------------

/// sum_{j=0}^n x^j G_j^2 for weights off the singular point x = -1 (callers
/// dispatch x = -1 elsewhere). Numerator and denominator of the closed form:
///
///   [-(2x^2+2x-1) G_0^2 - (2x^2-x) G_1^2 + x^2 G_2^2
///    + (2x^2+2x-1) x^{n+1} G_{n+1}^2 + (2x-1) x^{n+2} G_{n+2}^2
///    - x^{n+3} G_{n+3}^2] / (x^3 - 2x^2 - 2x + 1)
fn square_sum_generic(spec: &SequenceSpec, x: &BigRat, n: u64) -> BigRat {
    let ni = upper_as_i64(n);
    let x2 = x * x;
    let x3 = &x2 * x;
    let den = &x3 - rat_i(2) * &x2 - rat_i(2) * x + BigRat::one();
    debug_assert!(!den.is_zero(), "rational singularity is x = -1 only");
    let c1 = rat_i(2) * &x2 + rat_i(2) * x - BigRat::one();
    let c2 = rat_i(2) * &x2 - x;
    let c3 = rat_i(2) * x - BigRat::one();
    let xp1 = rat_pow(x, n + 1);
    let xp2 = &xp1 * x;
    let xp3 = &xp2 * x;
    let num = -&c1 * rat(spec.term_sq(0)) - &c2 * rat(spec.term_sq(1)) + &x2 * rat(spec.term_sq(2))
        + &c1 * &xp1 * rat(spec.term_sq(ni + 1))
        + &c3 * &xp2 * rat(spec.term_sq(ni + 2))
        - &xp3 * rat(spec.term_sq(ni + 3));
    num / den
}

/// sum x^j F_j^2 off the singular point, same denominator as above:
///
///   [x(1-x) - (1-2x-2x^2) x^{n+1} F_{n+1}^2 - (1-2x) x^{n+2} F_{n+2}^2
///    - x^{n+3} F_{n+3}^2] / (1 - 2x - 2x^2 + x^3)
fn fib_square_sum_generic(x: &BigRat, n: u64) -> BigRat {
    let ni = upper_as_i64(n);
    let fsq = |i: i64| {
        let f = fib(i);
        rat(&f * &f)
    };
    let x2 = x * x;
    let den = BigRat::one() - rat_i(2) * x - rat_i(2) * &x2 + &x2 * x;
    debug_assert!(!den.is_zero());
    let xp1 = rat_pow(x, n + 1);
    let xp2 = &xp1 * x;
    let xp3 = &xp2 * x;
    let num = x * (BigRat::one() - x)
        - (BigRat::one() - rat_i(2) * x - rat_i(2) * &x2) * &xp1 * fsq(ni + 1)
        - (BigRat::one() - rat_i(2) * x) * &xp2 * fsq(ni + 2)
        - &xp3 * fsq(ni + 3);
    num / den
}

/// Alternating sum sum_{j=0}^n (-1)^j F_j^2, removing the x = -1
/// indeterminacy of the generic form:
///
///   5 (-1)^{n-1} S = (n+3) F_{n+3}^2 - (3n+8) F_{n+2}^2 + (n-1) F_{n+1}^2
///                    + 3 (-1)^{n-1}
fn fib_square_sum_alternating(n: u64) -> BigRat {
    let ni = upper_as_i64(n);
    let fsq = |i: i64| {
        let f = fib(i);
        &f * &f
    };
    let nb = BigInt::from(n);
    let sign_unit = flip_if_odd_int(ni + 1, BigInt::one());
    let v = (&nb + 3) * fsq(ni + 3) - (3 * &nb + 8) * fsq(ni + 2) + (&nb - 1) * fsq(ni + 1)
        + 3 * &sign_unit;
    BigRat::new(sign_unit * v, BigInt::from(5))
}

/// sum_{j=0}^n x^j F_j^2 with three-way dispatch: generic rational closed
/// form, F_n F_{n+1} at x = 1, and the alternating form at x = -1.
pub fn sum_fib_sq_closed(x: &BigRat, n: u64) -> BigRat {
    let ni = upper_as_i64(n);
    if x.is_one() {
        return rat(fib(ni) * fib(ni + 1));
    }
    if is_neg_one(x) {
        return fib_square_sum_alternating(n);
    }
    fib_square_sum_generic(x, n)
}

/// sum_{j=0}^n (-x)^j in closed form: (1 - (-x)^{n+1}) / (1 + x) for
/// x != -1, and n + 1 at x = -1. This is the total replacement for the
/// (1 + (-1)^n x^{n+1}) / (1 + x) factor of the init-free evaluation.
pub(crate) fn alternating_geometric(x: &BigRat, n: u64) -> BigRat {
    if is_neg_one(x) {
        return rat(BigInt::from(n) + 1);
    }
    (BigRat::one() - rat_pow(&(-x), n + 1)) / (BigRat::one() + x)
}

/// Weighted square sum evaluated without the closed form ever meeting the
/// initial values G_0, G_1 of the shifted window; total for every rational
/// weight. Always equals `sum_sq_brute`.
pub fn sum_sq_initfree(q: &WeightedSumQuery) -> BigRat {
    let x = &q.weight;
    let n = q.upper;
    let ni = upper_as_i64(n);
    let gk = rat(q.spec.term(q.shift));
    let gk1 = rat(q.spec.term(q.shift + 1));
    let fs = sum_fib_sq_closed(x, n);
    let fn_sq = {
        let f = fib(ni);
        rat(&f * &f)
    };
    let cross = &gk * &gk1;
    let two = rat_i(2);
    fs * (&gk1 * &gk1 + x * &gk * &gk + &two * (BigRat::one() - x) * &cross)
        + (BigRat::one() - rat_pow(x, n + 1) * fn_sq) * (&gk * &gk - &two * &cross)
        + alternating_geometric(x, n) * two * cross
}

/// x = 1 square sum through the weighted-recurrence route:
///
///   sum G_{j+k}^2 = (F_{k+1} F_{k-1} + F_k^2) W + F_{k-1} F_k P + F_{k+1} F_k Q
///
/// with W = G_n G_{n+1} - G_0 G_1 + G_0^2,
///      P = (G_n - G_1 + G_0)(G_n + G_1 - G_0),
///      Q = (G_{n+1} - G_0)(G_{n+1} + G_0).
fn unit_square_sum_weighted(spec: &SequenceSpec, k: i64, n: u64) -> BigInt {
    let ni = upper_as_i64(n);
    let (w, p, q) = unit_square_blocks(spec, ni);
    (fib(k + 1) * fib(k - 1) + fib(k) * fib(k)) * w
        + fib(k - 1) * fib(k) * p
        + fib(k + 1) * fib(k) * q
}

fn unit_square_blocks(spec: &SequenceSpec, ni: i64) -> (BigInt, BigInt, BigInt) {
    let gn = spec.term(ni);
    let gn1 = spec.term(ni + 1);
    let w = &gn * &gn1 - spec.g0() * spec.g1() + spec.g0() * spec.g0();
    let p = (&gn - spec.g1() + spec.g0()) * (&gn + spec.g1() - spec.g0());
    let q = (&gn1 - spec.g0()) * (&gn1 + spec.g0());
    (w, p, q)
}

/// x = 1 square sum through the squared addition formula:
///
///   sum G_{j+k}^2 = F_n F_{n+1} (G_{k+1}^2 + G_k^2)
///                 + (F_n^2 - 1)(G_{k+1}^2 - G_{k-1}^2)
///                 + (1 + (-1)^n) G_{k+1} G_k
fn unit_square_sum_addition(spec: &SequenceSpec, k: i64, n: u64) -> BigInt {
    let ni = upper_as_i64(n);
    let fnv = fib(ni);
    let parity = 1 + flip_if_odd_int(ni, BigInt::one());
    &fnv * fib(ni + 1) * (spec.term_sq(k + 1) + spec.term_sq(k))
        + (&fnv * &fnv - 1) * (spec.term_sq(k + 1) - spec.term_sq(k - 1))
        + parity * spec.term(k + 1) * spec.term(k)
}

/// x = 1 square sum through the parity-split forms: upper limit 2t - 1 drops
/// the cross term, upper limit 2t keeps it doubled.
fn unit_square_sum_parity(spec: &SequenceSpec, k: i64, n: u64) -> BigInt {
    let ni = upper_as_i64(n);
    let base = |lo_f: i64, hi_f: i64| {
        fib(lo_f) * fib(hi_f) * (spec.term_sq(k + 1) + spec.term_sq(k))
            + (fib(lo_f) * fib(lo_f) - 1) * (spec.term_sq(k + 1) - spec.term_sq(k - 1))
    };
    if ni % 2 == 1 {
        // n = 2t - 1
        base(ni, ni + 1)
    } else {
        // n = 2t
        base(ni, ni + 1) + 2 * spec.term(k + 1) * spec.term(k)
    }
}

/// Fibonacci specialization sum F_{j+k}^2 = F_n F_{n+1} F_{2k+1}
/// + (F_n^2 - 1) F_{2k} + (1 + (-1)^n) F_k F_{k+1}.
fn unit_fib_square_sum(k: i64, n: u64) -> BigInt {
    let ni = upper_as_i64(n);
    let fnv = fib(ni);
    let parity = 1 + flip_if_odd_int(ni, BigInt::one());
    &fnv * fib(ni + 1) * fib(2 * k + 1) + (&fnv * &fnv - 1) * fib(2 * k)
        + parity * fib(k) * fib(k + 1)
}

/// Parity-split Fibonacci specialization.
fn unit_fib_square_sum_parity(k: i64, n: u64) -> BigInt {
    let ni = upper_as_i64(n);
    if ni % 2 == 1 {
        fib(ni + 1) * fib(ni) * fib(2 * k + 1) + (fib(ni) * fib(ni) - 1) * fib(2 * k)
    } else {
        fib(ni) * fib(ni + 1) * fib(2 * k + 1) + (fib(ni) * fib(ni) - 1) * fib(2 * k)
            + 2 * fib(k) * fib(k + 1)
    }
}

/// The x = 1 square-sum closed forms, each computed independently; all
/// fields agree with one another and with `sum_sq_brute` at weight 1. The
/// Fibonacci routes are populated only for the (0, 1) sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSquareSums {
    pub via_weighted: BigInt,
    pub via_addition: BigInt,
    pub via_parity: BigInt,
    pub via_fib: Option<BigInt>,
    pub via_fib_parity: Option<BigInt>,
}

impl UnitSquareSums {
    /// All populated routes, for uniform comparison against the oracle.
    pub fn routes(&self) -> Vec<(&'static str, &BigInt)> {
        let mut out = vec![
            ("weighted", &self.via_weighted),
            ("addition", &self.via_addition),
            ("parity", &self.via_parity),
        ];
        if let Some(v) = &self.via_fib {
            out.push(("fib", v));
        }
        if let Some(v) = &self.via_fib_parity {
            out.push(("fib_parity", v));
        }
        out
    }
}

/// Evaluates every unit-weight (x = 1) square-sum closed form.
pub fn unit_sum_specials(spec: &SequenceSpec, k: i64, n: u64) -> UnitSquareSums {
    let fib_routes = spec.is_fibonacci();
    UnitSquareSums {
        via_weighted: unit_square_sum_weighted(spec, k, n),
        via_addition: unit_square_sum_addition(spec, k, n),
        via_parity: unit_square_sum_parity(spec, k, n),
        via_fib: fib_routes.then(|| unit_fib_square_sum(k, n)),
        via_fib_parity: fib_routes.then(|| unit_fib_square_sum_parity(k, n)),
    }
}

/// Generic-weight shifted square sum, obtained from the shifted-recurrence
/// expansion divided through by x (so the caller must dispatch x = 0):
///
///   x sum x^j G_{j+k}^2 = (x F_{k+1} F_{k-1} + F_{k+1} F_k - x^2 F_{k-1} F_k) S_n(x)
///     + x F_{k-1} F_k (x^{n+1} G_n^2 - G_0^2 - G_1^2 + 2 G_0 G_1)
///     + F_{k+1} F_k (x^{n+1} G_{n+1}^2 - G_0^2)
fn shifted_square_sum_generic(spec: &SequenceSpec, k: i64, x: &BigRat, n: u64) -> BigRat {
    let ni = upper_as_i64(n);
    let s = square_sum_generic(spec, x, n);
    let fk1 = rat(fib(k + 1));
    let fk = rat(fib(k));
    let fkm1 = rat(fib(k - 1));
    let g0 = rat(spec.g0().clone());
    let g1 = rat(spec.g1().clone());
    let xp1 = rat_pow(x, n + 1);
    let head = (x * &fk1 * &fkm1 + &fk1 * &fk - x * x * &fkm1 * &fk) * s;
    let mid = x * &fkm1 * &fk
        * (&xp1 * rat(spec.term_sq(ni)) - &g0 * &g0 - &g1 * &g1 + rat_i(2) * &g0 * &g1);
    let tail = &fk1 * &fk * (&xp1 * rat(spec.term_sq(ni + 1)) - &g0 * &g0);
    (head + mid + tail) / x
}

/// Closed-form weighted square sum sum_{j=0}^n x^j G_{j+k}^2 in O(log n)
/// big-integer multiplications. Equals `sum_sq_brute` for every input:
/// x = 0 returns the j = 0 term, x = 1 runs the unit-weight route, and
/// x = -1 (the only rational root of the characteristic denominator)
/// routes through the total init-free evaluation.
pub fn sum_sq_closed(q: &WeightedSumQuery) -> BigRat {
    let x = &q.weight;
    if x.is_zero() {
        return rat(q.spec.term_sq(q.shift));
    }
    if is_neg_one(x) {
        return sum_sq_initfree(q);
    }
    if x.is_one() {
        return rat(unit_square_sum_weighted(&q.spec, q.shift, q.upper));
    }
    shifted_square_sum_generic(&q.spec, q.shift, x, q.upper)
}

// ---------------------------------------------------------------------------
// product sums
// ---------------------------------------------------------------------------

/// sum_{j=0}^n x^j G_{j+k} G_{j+s} via the square-sum combination
///
///   [F_s^2 A(x;k) + F_k^2 A(x;s) - F_{s-k}^2 A(x;0)] / (2 F_s F_k),
///
/// which needs k and s nonzero so the 2 F_s F_k factor is invertible;
/// degenerate shifts are reported and the caller falls back to the oracle.
pub fn sum_product_closed(
    spec: &SequenceSpec,
    k: i64,
    s: i64,
    x: &BigRat,
    n: u64,
) -> Result<BigRat, Error> {
    if k == 0 || s == 0 {
        return Err(Error::DegenerateFactor { k, s });
    }
    let shifted = |shift: i64| {
        sum_sq_closed(&WeightedSumQuery::new(spec.clone(), shift, x.clone(), n))
    };
    let fs = rat(fib(s));
    let fk = rat(fib(k));
    let fsk = rat(fib(s - k));
    let num = &fs * &fs * shifted(k) + &fk * &fk * shifted(s) - &fsk * &fsk * shifted(0);
    Ok(num / (rat_i(2) * fs * fk))
}

/// The two fixed-shift product sums
/// (sum x^j G_{j+1} G_{j-2}, sum x^j G_j G_{j-1}).
///
/// The first is total as written; the second carries a 1/(2x) factor, so
/// weight 0 returns the j = 0 term G_0 G_{-1} directly.
pub fn corollary_product_sums(spec: &SequenceSpec, x: &BigRat, n: u64) -> (BigRat, BigRat) {
    let ni = upper_as_i64(n);
    let s = sum_sq_closed(&WeightedSumQuery::new(spec.clone(), 0, x.clone(), n));
    let xp1 = rat_pow(x, n + 1);
    let step = rat(spec.g1() - spec.g0());
    let g0 = rat(spec.g0().clone());
    let first =
        (BigRat::one() - x) * &s + &xp1 * rat(spec.term_sq(ni)) - &step * &step;
    let second = if x.is_zero() {
        rat(spec.term(0) * spec.term(-1))
    } else {
        let num = (BigRat::one() - x - x * x) * &s
            + &xp1 * rat(spec.term_sq(ni + 1))
            + &xp1 * x * rat(spec.term_sq(ni))
            - x * &step * &step
            - &g0 * &g0;
        num / (rat_i(2) * x)
    };
    (first, second)
}

/// sum_{j=0}^n x^j G_{j+k} G_{j-k} via
///
///   (-1)^k 2x sum = (x L_k^2 - (1+x^2) F_k^2 - 2x F_{k-1} F_{k+1}) S_n(x)
///     + x F_k^2 (x^{n+1} G_n^2 - G_0^2 - G_1^2 + 2 G_0 G_1)
///     - F_k^2 (x^{n+1} G_{n+1}^2 - G_0^2);
///
/// weight 0 returns the j = 0 term G_k G_{-k} directly.
pub fn spread_product_closed(spec: &SequenceSpec, k: i64, x: &BigRat, n: u64) -> BigRat {
    if x.is_zero() {
        return rat(spec.term(k) * spec.term(-k));
    }
    let ni = upper_as_i64(n);
    let s = sum_sq_closed(&WeightedSumQuery::new(spec.clone(), 0, x.clone(), n));
    let lk = rat(lucas(k));
    let fk = rat(fib(k));
    let fk_sq = &fk * &fk;
    let neighbors = rat(fib(k - 1) * fib(k + 1));
    let g0 = rat(spec.g0().clone());
    let g1 = rat(spec.g1().clone());
    let xp1 = rat_pow(x, n + 1);
    let head = (x * &lk * &lk - (BigRat::one() + x * x) * &fk_sq - rat_i(2) * x * neighbors) * s;
    let mid = x * &fk_sq
        * (&xp1 * rat(spec.term_sq(ni)) - &g0 * &g0 - &g1 * &g1 + rat_i(2) * &g0 * &g1);
    let tail = &fk_sq * (&xp1 * rat(spec.term_sq(ni + 1)) - &g0 * &g0);
    let scaled = head + mid - tail;
    let divisor = if k % 2 == 0 {
        rat_i(2) * x
    } else {
        rat_i(-2) * x
    };
    scaled / divisor
}

/// The x = 1 product-sum closed forms, each returned scaled by the
/// 2 F_s F_k factor they are stated with (so they stay total at k = 0 or
/// s = 0). All fields equal 2 F_s F_k sum_{j<=n} G_{j+k} G_{j+s}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitProductSums {
    pub via_square_sums: BigInt,
    pub via_addition: BigInt,
    pub via_parity: BigInt,
}

impl UnitProductSums {
    pub fn routes(&self) -> [(&'static str, &BigInt); 3] {
        [
            ("square_sums", &self.via_square_sums),
            ("addition", &self.via_addition),
            ("parity", &self.via_parity),
        ]
    }
}

/// Evaluates the x = 1 product-sum forms. The square-sum route expands the
/// three unit square sums; its third coefficient is
/// F_s F_k (F_s F_{k+1} + F_k F_{s+1}) — the symmetric counterpart of the
/// P-term coefficient, as the expansion requires.
pub fn unit_product_sum_routes(spec: &SequenceSpec, k: i64, s: i64, n: u64) -> UnitProductSums {
    let ni = upper_as_i64(n);
    let (w, p, q) = unit_square_blocks(spec, ni);
    let (fs, fk) = (fib(s), fib(k));
    let fsk = fib(s - k);

    let via_square_sums = (&fs * &fs * (fib(k + 1) * fib(k - 1) + &fk * &fk)
        + &fk * &fk * (fib(s + 1) * fib(s - 1) + &fs * &fs)
        - &fsk * &fsk)
        * &w
        + &fs * &fk * (&fs * fib(k - 1) + &fk * fib(s - 1)) * p
        + &fs * &fk * (&fs * fib(k + 1) + &fk * fib(s + 1)) * q;

    let fnv = fib(ni);
    let pair_sum = &fs * &fs * (spec.term_sq(k + 1) + spec.term_sq(k))
        + &fk * &fk * (spec.term_sq(s + 1) + spec.term_sq(s));
    let pair_diff = &fs * &fs * (spec.term_sq(k + 1) - spec.term_sq(k - 1))
        + &fk * &fk * (spec.term_sq(s + 1) - spec.term_sq(s - 1));
    let cross = &fs * &fs * spec.term(k + 1) * spec.term(k)
        + &fk * &fk * spec.term(s + 1) * spec.term(s);
    let parity = 1 + flip_if_odd_int(ni, BigInt::one());
    let via_addition = &fnv * fib(ni + 1) * &pair_sum + (&fnv * &fnv - 1) * &pair_diff
        + parity * &cross
        - &fsk * &fsk * &w;

    let via_parity = if ni % 2 == 1 {
        fib(ni) * fib(ni + 1) * &pair_sum + (fib(ni) * fib(ni) - 1) * &pair_diff - &fsk * &fsk * &w
    } else {
        fib(ni) * fib(ni + 1) * &pair_sum + (fib(ni) * fib(ni) - 1) * &pair_diff + 2 * &cross
            - &fsk * &fsk * &w
    };

    UnitProductSums {
        via_square_sums,
        via_addition,
        via_parity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(g0: i64, g1: i64) -> SequenceSpec {
        SequenceSpec::new(g0, g1).unwrap()
    }

    fn q(g0: i64, g1: i64, k: i64, x: BigRat, n: u64) -> WeightedSumQuery {
        WeightedSumQuery::new(spec(g0, g1), k, x, n)
    }

    fn rq(p: i64, d: i64) -> BigRat {
        BigRat::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn brute_examples() {
        assert_eq!(sum_sq_brute(&q(0, 1, 0, rq(2, 1), 2)), rq(6, 1));
        assert_eq!(sum_sq_brute(&q(0, 1, 0, rq(1, 1), 5)), rq(40, 1));
        // n = 0 is the bare j = 0 term for any weight
        assert_eq!(sum_sq_brute(&q(3, -5, 4, rq(7, 3), 0)), rq(81, 1));
    }

    #[test]
    fn closed_examples() {
        assert_eq!(sum_sq_closed(&q(0, 1, 0, rq(2, 1), 2)), rq(6, 1));
        assert_eq!(sum_sq_closed(&q(2, 1, 0, rq(1, 1), 3)), rq(30, 1));
        // must route through the singular path
        assert_eq!(sum_sq_closed(&q(0, 1, 0, rq(-1, 1), 3)), rq(-4, 1));
        assert_eq!(sum_sq_closed(&q(2, 1, 5, rq(0, 1), 9)), rat(spec(2, 1).term_sq(5)));
    }

    #[test]
    fn fib_square_examples() {
        assert_eq!(sum_fib_sq_closed(&rq(2, 1), 2), rq(6, 1));
        assert_eq!(sum_fib_sq_closed(&rq(1, 1), 5), rq(40, 1));
        assert_eq!(sum_fib_sq_closed(&rq(-1, 1), 3), rq(-4, 1));
    }

    #[test]
    fn initfree_matches_brute_on_examples() {
        let cases = [
            q(2, 1, 3, rq(1, 2), 10),
            q(2, 1, 0, rq(-1, 1), 4),
            q(0, 1, -2, rq(-7, 2), 6),
        ];
        for case in cases {
            assert_eq!(sum_sq_initfree(&case), sum_sq_brute(&case));
        }
        // G = F makes the init-free and standard routes coincide
        let f = q(0, 1, 0, rq(3, 7), 8);
        assert_eq!(sum_sq_initfree(&f), sum_sq_closed(&f));
    }

    #[test]
    fn product_examples() {
        let s01 = spec(0, 1);
        // 1*1 + 1*2 + 2*3 + 3*5
        assert_eq!(
            sum_product_closed(&s01, 1, 2, &rq(1, 1), 3).unwrap(),
            rq(24, 1)
        );
        assert_eq!(
            sum_product_brute(&s01, 1, 2, &rq(1, 1), 3),
            rq(24, 1)
        );
        // k = s reduces to the square sum
        assert_eq!(
            sum_product_closed(&s01, 2, 2, &rq(1, 3), 5).unwrap(),
            sum_sq_closed(&q(0, 1, 2, rq(1, 3), 5))
        );
        let l = spec(2, 1);
        assert_eq!(
            sum_product_closed(&l, 2, -1, &rq(1, 3), 6).unwrap(),
            sum_product_brute(&l, 2, -1, &rq(1, 3), 6)
        );
        assert_eq!(
            sum_product_closed(&l, 0, 3, &rq(1, 1), 2).unwrap_err(),
            Error::DegenerateFactor { k: 0, s: 3 }
        );
    }

    #[test]
    fn corollary_examples() {
        let s01 = spec(0, 1);
        let (_, second) = corollary_product_sums(&s01, &rq(1, 1), 3);
        assert_eq!(second, rq(3, 1));
        let l = spec(2, 1);
        for n in [0u64, 1, 5] {
            let (first, second) = corollary_product_sums(&l, &rq(-2, 1), n);
            assert_eq!(first, sum_product_brute(&l, 1, -2, &rq(-2, 1), n));
            assert_eq!(second, sum_product_brute(&l, 0, -1, &rq(-2, 1), n));
        }
        // x = 0 keeps the second component total
        let (first, second) = corollary_product_sums(&l, &rq(0, 1), 7);
        assert_eq!(first, sum_product_brute(&l, 1, -2, &rq(0, 1), 7));
        assert_eq!(second, rat(l.term(0) * l.term(-1)));
    }

    #[test]
    fn spread_examples() {
        let s01 = spec(0, 1);
        assert_eq!(spread_product_closed(&s01, 1, &rq(1, 1), 2), rq(3, 1));
        // k = 0 reduces to the square sum
        assert_eq!(
            spread_product_closed(&s01, 0, &rq(2, 1), 5),
            sum_sq_closed(&q(0, 1, 0, rq(2, 1), 5))
        );
        let g = spec(3, -5);
        assert_eq!(
            spread_product_closed(&g, 4, &rq(2, 5), 8),
            sum_product_brute(&g, 4, -4, &rq(2, 5), 8)
        );
        assert_eq!(
            spread_product_closed(&g, -3, &rq(0, 1), 5),
            rat(g.term(-3) * g.term(3))
        );
    }

    #[test]
    fn unit_specials_example() {
        let got = unit_sum_specials(&spec(0, 1), 2, 4);
        assert_eq!(got.via_weighted, BigInt::from(103));
        assert_eq!(got.via_addition, BigInt::from(103));
        assert_eq!(got.via_parity, BigInt::from(103));
        assert_eq!(got.via_fib, Some(BigInt::from(103)));
        assert_eq!(got.via_fib_parity, Some(BigInt::from(103)));
        // k = 0 for G = F reduces to F_n F_{n+1}
        let got = unit_sum_specials(&spec(0, 1), 0, 6);
        assert_eq!(got.via_weighted, fib(6) * fib(7));
        // oracle value for a general sequence
        let l = spec(2, 1);
        let brute = sum_sq_brute(&q(2, 1, -3, rq(1, 1), 7));
        for (_name, v) in unit_sum_specials(&l, -3, 7).routes() {
            assert_eq!(rat(v.clone()), brute);
        }
    }

    #[test]
    fn unit_product_routes_match_scaled_brute() {
        for (g0, g1) in [(0, 1), (2, 1), (3, -5)] {
            let sp = spec(g0, g1);
            for (k, s) in [(1, 2), (-1, 3), (2, -3), (0, 2), (1, 0)] {
                for n in [0u64, 1, 2, 5, 10] {
                    let scale = rat(2 * fib(s) * fib(k));
                    let expected = scale * sum_product_brute(&sp, k, s, &rq(1, 1), n);
                    for (name, v) in unit_product_sum_routes(&sp, k, s, n).routes() {
                        assert_eq!(rat(v.clone()), expected, "route {name} k={k} s={s} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn alternating_geometric_total() {
        assert_eq!(alternating_geometric(&rq(-1, 1), 6), rq(7, 1));
        assert_eq!(alternating_geometric(&rq(2, 1), 3), rq(-5, 1));
        assert_eq!(alternating_geometric(&rq(0, 1), 5), rq(1, 1));
    }
}
