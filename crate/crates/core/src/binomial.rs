//! Generic engines for multi-term recurrences: the weighted partial-sum
//! closed form of an (r+1)-term recurrence, the six double-binomial
//! identities of a four-term recurrence, and the three concrete
//! double-binomial identities for squares of Fibonacci-like numbers.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::Error;
use crate::sequence::{fib, SequenceSpec};
use crate::series::format_rat;
use crate::summation::BigRat;

/// Exact binomial coefficient; zero for k < 0 or k > n.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// Accessor j -> X_j for an arbitrary integer-indexed sequence; the
/// engines below only read through this interface.
pub trait SequenceOracle: Sync {
    fn value(&self, index: i64) -> BigInt;
}

impl<F> SequenceOracle for F
where
    F: Fn(i64) -> BigInt + Sync,
{
    fn value(&self, index: i64) -> BigInt {
        self(index)
    }
}

/// X_j = G_j^2 with a precomputed window, falling back to direct
/// evaluation outside it.
pub struct SquareWindow {
    spec: SequenceSpec,
    lo: i64,
    cache: Vec<BigInt>,
}

impl SquareWindow {
    pub fn new(spec: &SequenceSpec, lo: i64, hi: i64) -> Result<Self, Error> {
        let cache = spec
            .window(lo, hi)?
            .into_iter()
            .map(|g| &g * &g)
            .collect();
        Ok(Self {
            spec: spec.clone(),
            lo,
            cache,
        })
    }
}

impl SequenceOracle for SquareWindow {
    fn value(&self, index: i64) -> BigInt {
        let offset = index as i128 - self.lo as i128;
        if offset >= 0 && (offset as usize) < self.cache.len() {
            self.cache[offset as usize].clone()
        } else {
            self.spec.term_sq(index)
        }
    }
}

/// A linear relation h X_j = sum_m f_m X_{j - c_m} with nonzero rational
/// coefficients and pairwise-distinct integer gaps. The plain (r+1)-term
/// form has h = 1; the four-term form used by the double-binomial
/// identities has exactly three terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceDescriptor {
    scale: BigRat,
    terms: Vec<(BigRat, i64)>,
}

impl RecurrenceDescriptor {
    pub fn new(terms: Vec<(BigRat, i64)>) -> Result<Self, Error> {
        Self::with_scale(BigRat::one(), terms)
    }

    pub fn with_scale(scale: BigRat, terms: Vec<(BigRat, i64)>) -> Result<Self, Error> {
        if scale.is_zero() {
            return Err(Error::InvalidDescriptor("scale h must be nonzero".into()));
        }
        if terms.is_empty() {
            return Err(Error::InvalidDescriptor("at least one term required".into()));
        }
        for (f, _) in &terms {
            if f.is_zero() {
                return Err(Error::InvalidDescriptor(
                    "coefficients must be nonzero".into(),
                ));
            }
        }
        for (i, (_, gi)) in terms.iter().enumerate() {
            if terms[i + 1..].iter().any(|(_, gj)| gj == gi) {
                return Err(Error::InvalidDescriptor(format!(
                    "gaps must be pairwise distinct, {gi} repeats"
                )));
            }
        }
        Ok(Self { scale, terms })
    }

    pub fn scale(&self) -> &BigRat {
        &self.scale
    }

    pub fn terms(&self) -> &[(BigRat, i64)] {
        &self.terms
    }

    /// Checks that the oracle satisfies this relation at every anchor index
    /// in `window`.
    pub fn verify_oracle(
        &self,
        oracle: &dyn SequenceOracle,
        window: RangeInclusive<i64>,
    ) -> Result<(), Error> {
        for anchor in window {
            let lhs = &self.scale * BigRational::from_integer(oracle.value(anchor));
            let mut rhs = BigRat::zero();
            for (f, gap) in &self.terms {
                rhs += f * BigRational::from_integer(oracle.value(anchor - gap));
            }
            if lhs != rhs {
                return Err(Error::OracleMismatch { index: anchor });
            }
        }
        Ok(())
    }

    /// The four-term recurrence of the squares of a Fibonacci-like
    /// sequence built from the main square identity at shifts (s, k, m):
    /// h = F_{m-s} F_{m-k} F_{s-k}, f_1 = (-1)^{s+k} F_k F_s F_{s-k},
    /// f_2 = (-1)^{s+k+1} F_k F_m F_{m-k}, f_3 = F_s F_m F_{m-s},
    /// gaps (-m, -s, -k). Requires s, k, m pairwise distinct and nonzero.
    pub fn square_four_term(s: i64, k: i64, m: i64) -> Result<Self, Error> {
        let sign = |e: i64, v: BigInt| if e % 2 == 0 { v } else { -v };
        let h = BigRational::from_integer(fib(m - s) * fib(m - k) * fib(s - k));
        let f1 = BigRational::from_integer(sign(s + k, fib(k) * fib(s) * fib(s - k)));
        let f2 = BigRational::from_integer(sign(s + k + 1, fib(k) * fib(m) * fib(m - k)));
        let f3 = BigRational::from_integer(fib(s) * fib(m) * fib(m - s));
        Self::with_scale(h, vec![(f1, -m), (f2, -s), (f3, -k)])
    }
}

fn rat_pow(x: &BigRat, e: u64) -> BigRat {
    if e == 0 {
        return BigRat::one();
    }
    BigRat::new_raw(Pow::pow(x.numer(), e), Pow::pow(x.denom(), e))
}

/// x^e for signed e; negative exponents invert (x must be nonzero there).
fn rat_pow_signed(x: &BigRat, e: i64) -> Option<BigRat> {
    if e >= 0 {
        Some(rat_pow(x, e as u64))
    } else if x.is_zero() {
        None
    } else {
        Some(rat_pow(&x.recip(), e.unsigned_abs()))
    }
}

/// Sum f(j) for j = lo..=hi under the signed convention
/// sum_{j=lo}^{hi} = -sum_{j=hi+1}^{lo-1} when hi < lo - 1 (and 0 when
/// hi = lo - 1), which keeps the partial-sum formula valid for negative
/// gaps as well.
fn signed_sum(
    lo: i64,
    hi: i64,
    mut f: impl FnMut(i64) -> Option<BigRat>,
) -> Option<BigRat> {
    let (range, negate) = if hi >= lo {
        (lo..=hi, false)
    } else if hi == lo - 1 {
        return Some(BigRat::zero());
    } else {
        (hi + 1..=lo - 1, true)
    };
    let mut acc = BigRat::zero();
    for j in range {
        acc += f(j)?;
    }
    Some(if negate { -acc } else { acc })
}

/// Closed-form weighted partial sum sum_{j=0}^n x^j X_j of a sequence
/// satisfying the descriptor:
///
///   sum = [ sum_m x^{c_m} f_m ( sum_{j=1}^{c_m} x^{-j} X_{-j}
///                               - sum_{j=n-c_m+1}^{n} x^j X_j ) ]
///         / (1 - sum_m x^{c_m} f_m)
///
/// (coefficients normalized by the scale h). Weight 0 returns X_0; a
/// vanishing lemma denominator — or a zero weight meeting a negative gap —
/// is reported as `SingularDenominator`, and the caller falls back to
/// direct summation.
pub fn closed_partial_sum(
    desc: &RecurrenceDescriptor,
    oracle: &dyn SequenceOracle,
    x: &BigRat,
    n: u64,
) -> Result<BigRat, Error> {
    if x.is_zero() && desc.terms.iter().all(|(_, c)| *c >= 0) {
        return Ok(BigRational::from_integer(oracle.value(0)));
    }
    let singular = || Error::SingularDenominator {
        weight: format_rat(x),
    };
    let ni = i64::try_from(n).expect("upper limit fits in i64");
    let mut den = BigRat::one();
    let mut num = BigRat::zero();
    for (f, c) in &desc.terms {
        let coeff = f / &desc.scale;
        let xc = rat_pow_signed(x, *c).ok_or_else(singular)?;
        den -= &xc * &coeff;
        let head = signed_sum(1, *c, |j| {
            Some(rat_pow_signed(x, -j)? * BigRational::from_integer(oracle.value(-j)))
        })
        .ok_or_else(singular)?;
        let tail = signed_sum(ni - c + 1, ni, |j| {
            Some(rat_pow_signed(x, j)? * BigRational::from_integer(oracle.value(j)))
        })
        .ok_or_else(singular)?;
        num += xc * coeff * (head - tail);
    }
    if den.is_zero() {
        return Err(singular());
    }
    Ok(num / den)
}

/// Direct summation sum_{j=0}^n x^j X_j; the oracle side of
/// `closed_partial_sum`.
pub fn brute_partial_sum(oracle: &dyn SequenceOracle, x: &BigRat, n: u64) -> BigRat {
    let mut acc = BigRat::zero();
    let mut xp = BigRat::one();
    for j in 0..=n {
        acc += &xp * BigRational::from_integer(oracle.value(j as i64));
        xp *= x;
    }
    acc
}

// ---------------------------------------------------------------------------
// double binomial identities
// ---------------------------------------------------------------------------

/// Slot permutations realizing the six double-binomial identities of a
/// four-term recurrence. Slots index into terms[] = [(f1,a),(f2,b),(f3,c)].
/// Power form (weights p^{n-j} q^{n+j-i} t^i, index
/// r - pg n + (pg-qg) j + (qg-tg) i, right side (h q)^n) for the first
/// three; alternating form (weights (-1)^i h^i p^{n-j} q^{j-i}, index
/// r - (pg-tg) n + (pg-qg) j + qg i, right side (-t)^n) for the rest.
const VARIANTS: [(usize, usize, usize, bool); 6] = [
    (2, 1, 0, true),
    (1, 2, 0, true),
    (0, 2, 1, true),
    (2, 1, 0, false),
    (2, 0, 1, false),
    (1, 0, 2, false),
];

/// Index window touched by the double sum of one variant: the index form is
/// linear in (j, i), so the extremes sit at the corners of the triangle
/// 0 <= i <= j <= n.
fn variant_index_window(
    desc: &RecurrenceDescriptor,
    variant: u8,
    r: i64,
    n: u64,
) -> (i64, i64) {
    let (p, q, t, power_form) = VARIANTS[(variant - 1) as usize];
    let (pg, qg, tg) = (desc.terms[p].1, desc.terms[q].1, desc.terms[t].1);
    let ni = n as i64;
    let idx = |j: i64, i: i64| {
        if power_form {
            r - pg * ni + (pg - qg) * j + (qg - tg) * i
        } else {
            r - (pg - tg) * ni + (pg - qg) * j + qg * i
        }
    };
    let corners = [idx(0, 0), idx(ni, 0), idx(ni, ni), r];
    (
        *corners.iter().min().expect("nonempty"),
        *corners.iter().max().expect("nonempty"),
    )
}

/// Residual (double sum minus right side) of the chosen variant; zero for
/// every sequence actually satisfying the descriptor. The oracle is checked
/// against the descriptor over the touched index window first and an
/// `OracleMismatch` refuses to evaluate a meaningless residual.
pub fn double_binomial_residual(
    desc: &RecurrenceDescriptor,
    oracle: &dyn SequenceOracle,
    variant: u8,
    r: i64,
    n: u64,
) -> Result<BigRat, Error> {
    if !(1..=6).contains(&variant) {
        return Err(Error::InvalidVariant {
            given: variant,
            max: 6,
        });
    }
    if desc.terms.len() != 3 {
        return Err(Error::InvalidDescriptor(format!(
            "double binomial identities need a four-term recurrence, got {} terms",
            desc.terms.len() + 1
        )));
    }
    let (lo, hi) = variant_index_window(desc, variant, r, n);
    desc.verify_oracle(oracle, lo..=hi)?;

    let (p, q, t, power_form) = VARIANTS[(variant - 1) as usize];
    let (fp, pg) = (&desc.terms[p].0, desc.terms[p].1);
    let (fq, qg) = (&desc.terms[q].0, desc.terms[q].1);
    let (ft, tg) = (&desc.terms[t].0, desc.terms[t].1);
    let h = &desc.scale;
    let ni = n as i64;

    // power tables up to the largest exponent in play (2n)
    let powers = |base: &BigRat| -> Vec<BigRat> {
        let mut out = Vec::with_capacity(2 * n as usize + 1);
        out.push(BigRat::one());
        for _ in 0..2 * n {
            out.push(out.last().expect("nonempty") * base);
        }
        out
    };
    let (pp, qp, tp, hp) = (powers(fp), powers(fq), powers(ft), powers(h));

    let mut total = BigRat::zero();
    for j in 0..=ni {
        let row = binomial(n, j);
        for i in 0..=j {
            let c = BigRational::from_integer(&row * binomial(j as u64, i));
            let (weight, index) = if power_form {
                (
                    &pp[(ni - j) as usize] * &qp[(ni + j - i) as usize] * &tp[i as usize],
                    r - pg * ni + (pg - qg) * j + (qg - tg) * i,
                )
            } else {
                let w = &hp[i as usize] * &pp[(ni - j) as usize] * &qp[(j - i) as usize];
                (
                    if i % 2 == 0 { w } else { -w },
                    r - (pg - tg) * ni + (pg - qg) * j + qg * i,
                )
            };
            total += c * weight * BigRational::from_integer(oracle.value(index));
        }
    }
    let rhs_scale = if power_form {
        rat_pow(&(h * fq), n)
    } else {
        rat_pow(&(-ft), n)
    };
    Ok(total - rhs_scale * BigRational::from_integer(oracle.value(r)))
}

/// Whether a (s, k, m) shift triple violates the non-vanishing hypotheses
/// of the square four-term recurrence (some F factor is zero).
pub fn square_tuple_degenerate(s: i64, k: i64, m: i64) -> bool {
    s == 0 || k == 0 || m == 0 || s == k || s == m || k == m
}

/// Residual of one of the three concrete double-binomial identities for
/// G^2. Zero whenever (s, k, m) is non-degenerate; degenerate tuples are
/// still evaluated (the expression is polynomial throughout) and reported
/// separately by the fuzzing layer.
///
/// `which` = 1:
///   sum (-1)^{i+(s+k+1)j} C(n,j) C(j,i) F_s^{n-j+i} F_k^{n+j} F_m^{2n-i}
///       F_{m-s}^{n-j} F_{m-k}^{n+j-i} F_{s-k}^i G_{r+kn+(s-k)j+(m-s)i}^2
///     = (F_m F_k F_{m-k}^2 F_{m-s} F_{s-k})^n G_r^2
///
/// `which` = 2:
///   sum (-1)^{j+(s+k)(i+j)} C(n,j) C(j,i) F_s^{n+j} F_k^{n-j+i} F_m^{2n-i}
///       F_{m-s}^{n+j-i} F_{m-k}^{n-j} F_{s-k}^i G_{r+sn+(k-s)j+(m-k)i}^2
///     = (-1)^{(s+k-1)n} (F_m F_s F_{m-s}^2 F_{m-k} F_{s-k})^n G_r^2
///
/// `which` = 3:
///   sum (-1)^{(s+k)(i+j)+i} C(n,j) C(j,i) F_s^{2n-i} F_k^{n-j+i} F_m^{n+j}
///       F_{m-s}^{n+j-i} F_{m-k}^i F_{s-k}^{n-j} G_{r+mn+(k-m)j+(s-k)i}^2
///     = (-1)^{(s+k)n} (F_m F_s F_{m-k} F_{s-k} F_{m-s}^2)^n G_r^2
pub fn square_double_binomial_residual(
    spec: &SequenceSpec,
    which: u8,
    n: u64,
    s: i64,
    k: i64,
    m: i64,
    r: i64,
) -> Result<BigInt, Error> {
    if !(1..=3).contains(&which) {
        return Err(Error::InvalidVariant { given: which, max: 3 });
    }
    let ni = n as i64;
    let e = |v: i64| -> u64 { u64::try_from(v).expect("exponent nonnegative") };
    let powers = |base: BigInt| -> Vec<BigInt> {
        let mut out = Vec::with_capacity(2 * n as usize + 1);
        out.push(BigInt::one());
        for _ in 0..2 * n {
            out.push(out.last().expect("nonempty") * &base);
        }
        out
    };
    let fs = powers(fib(s));
    let fk = powers(fib(k));
    let fm = powers(fib(m));
    let fms = powers(fib(m - s));
    let fmk = powers(fib(m - k));
    let fsk = powers(fib(s - k));

    // squared G values over the touched window
    let idx = |j: i64, i: i64| match which {
        1 => r + k * ni + (s - k) * j + (m - s) * i,
        2 => r + s * ni + (k - s) * j + (m - k) * i,
        _ => r + m * ni + (k - m) * j + (s - k) * i,
    };
    let corners = [idx(0, 0), idx(ni, 0), idx(ni, ni), r];
    let lo = *corners.iter().min().expect("nonempty");
    let hi = *corners.iter().max().expect("nonempty");
    let squares: Vec<BigInt> = spec
        .window(lo, hi)
        .expect("lo <= hi by construction")
        .into_iter()
        .map(|g| &g * &g)
        .collect();
    let gsq = |index: i64| &squares[(index - lo) as usize];

    let flip = |exp: i64, v: BigInt| if exp % 2 == 0 { v } else { -v };
    let mut total = BigInt::zero();
    for j in 0..=ni {
        let row = binomial(n, j);
        for i in 0..=j {
            let c = &row * binomial(j as u64, i);
            let (sign_exp, weight) = match which {
                1 => (
                    i + (s + k + 1) * j,
                    &fs[e(ni - j + i) as usize]
                        * &fk[e(ni + j) as usize]
                        * &fm[e(2 * ni - i) as usize]
                        * &fms[e(ni - j) as usize]
                        * &fmk[e(ni + j - i) as usize]
                        * &fsk[e(i) as usize],
                ),
                2 => (
                    j + (s + k) * (i + j),
                    &fs[e(ni + j) as usize]
                        * &fk[e(ni - j + i) as usize]
                        * &fm[e(2 * ni - i) as usize]
                        * &fms[e(ni + j - i) as usize]
                        * &fmk[e(ni - j) as usize]
                        * &fsk[e(i) as usize],
                ),
                _ => (
                    (s + k) * (i + j) + i,
                    &fs[e(2 * ni - i) as usize]
                        * &fk[e(ni - j + i) as usize]
                        * &fm[e(ni + j) as usize]
                        * &fms[e(ni + j - i) as usize]
                        * &fmk[e(i) as usize]
                        * &fsk[e(ni - j) as usize],
                ),
            };
            total += flip(sign_exp, c * weight * gsq(idx(j, i)));
        }
    }

    let rhs = match which {
        1 => {
            &fm[n as usize]
                * &fk[n as usize]
                * &fmk[2 * n as usize]
                * &fms[n as usize]
                * &fsk[n as usize]
                * gsq(r)
        }
        2 => flip(
            (s + k - 1) * ni,
            &fm[n as usize]
                * &fs[n as usize]
                * &fms[2 * n as usize]
                * &fmk[n as usize]
                * &fsk[n as usize]
                * gsq(r),
        ),
        _ => flip(
            (s + k) * ni,
            &fm[n as usize]
                * &fs[n as usize]
                * &fmk[n as usize]
                * &fsk[n as usize]
                * &fms[2 * n as usize]
                * gsq(r),
        ),
    };
    Ok(total - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn spec(g0: i64, g1: i64) -> SequenceSpec {
        SequenceSpec::new(g0, g1).unwrap()
    }

    fn r(p: i64) -> BigRat {
        BigRational::from_integer(BigInt::from(p))
    }

    fn rq(p: i64, q: i64) -> BigRat {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(17, 0), BigInt::one());
        assert_eq!(binomial(30, 15), BigInt::from(155_117_520i64));
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(4, 5), BigInt::zero());
    }

    fn fib_oracle() -> impl SequenceOracle {
        |j: i64| fib(j)
    }

    fn square_desc() -> RecurrenceDescriptor {
        // G_j^2 = 2 G_{j-1}^2 + 2 G_{j-2}^2 - G_{j-3}^2
        RecurrenceDescriptor::new(vec![(r(2), 1), (r(2), 2), (r(-1), 3)]).unwrap()
    }

    #[test]
    fn partial_sum_fib_example() {
        let desc = RecurrenceDescriptor::new(vec![(r(1), 1), (r(1), 2)]).unwrap();
        let got = closed_partial_sum(&desc, &fib_oracle(), &r(1), 5).unwrap();
        assert_eq!(got, r(12)); // F_7 - 1
        assert_eq!(
            closed_partial_sum(&desc, &fib_oracle(), &rq(1, 2), 0).unwrap(),
            r(0)
        );
    }

    #[test]
    fn partial_sum_square_recurrence() {
        let l = spec(2, 1);
        let oracle = SquareWindow::new(&l, -5, 30).unwrap();
        let desc = square_desc();
        for x in [r(2), rq(1, 2), rq(-1, 3), r(1)] {
            for n in [0u64, 1, 2, 3, 5, 10, 20] {
                let closed = closed_partial_sum(&desc, &oracle, &x, n).unwrap();
                assert_eq!(closed, brute_partial_sum(&oracle, &x, n), "x={x} n={n}");
            }
        }
        // the characteristic denominator vanishes at x = -1
        assert!(matches!(
            closed_partial_sum(&desc, &oracle, &r(-1), 4),
            Err(Error::SingularDenominator { .. })
        ));
    }

    #[test]
    fn partial_sum_negative_gaps() {
        // reversed recurrence F_j = -F_{j+1} + F_{j+2}: gaps -1, -2
        let desc = RecurrenceDescriptor::new(vec![(r(-1), -1), (r(1), -2)]).unwrap();
        for x in [r(2), rq(1, 2), rq(-1, 3)] {
            for n in [0u64, 1, 3, 7] {
                match closed_partial_sum(&desc, &fib_oracle(), &x, n) {
                    Ok(closed) => {
                        assert_eq!(closed, brute_partial_sum(&fib_oracle(), &x, n))
                    }
                    Err(Error::SingularDenominator { .. }) => {}
                    Err(other) => panic!("unexpected error {other}"),
                }
            }
        }
        // zero weight cannot meet a negative gap
        assert!(matches!(
            closed_partial_sum(&desc, &fib_oracle(), &r(0), 3),
            Err(Error::SingularDenominator { .. })
        ));
    }

    #[test]
    fn descriptor_invariants() {
        assert!(matches!(
            RecurrenceDescriptor::new(vec![(r(0), 1)]),
            Err(Error::InvalidDescriptor(_))
        ));
        assert!(matches!(
            RecurrenceDescriptor::new(vec![(r(1), 2), (r(2), 2)]),
            Err(Error::InvalidDescriptor(_))
        ));
        assert!(matches!(
            RecurrenceDescriptor::with_scale(r(0), vec![(r(1), 1)]),
            Err(Error::InvalidDescriptor(_))
        ));
    }

    #[test]
    fn oracle_mismatch_detected() {
        let desc = square_desc();
        let not_squares = |j: i64| fib(j);
        let err = double_binomial_residual(&desc, &not_squares, 1, 0, 2).unwrap_err();
        assert!(matches!(err, Error::OracleMismatch { .. }));
    }

    #[test]
    fn double_binomial_trivial_n0() {
        let desc = RecurrenceDescriptor::square_four_term(1, -1, 2).unwrap();
        let g = spec(2, 1);
        let oracle = SquareWindow::new(&g, -20, 20).unwrap();
        for v in 1..=6u8 {
            assert_eq!(
                double_binomial_residual(&desc, &oracle, v, 4, 0).unwrap(),
                BigRat::zero()
            );
        }
    }

    #[test]
    fn double_binomial_examples() {
        let desc = RecurrenceDescriptor::square_four_term(1, -1, 2).unwrap();
        let g = spec(2, 1);
        let oracle = SquareWindow::new(&g, -60, 60).unwrap();
        assert_eq!(
            double_binomial_residual(&desc, &oracle, 1, 3, 4).unwrap(),
            BigRat::zero()
        );
        assert_eq!(
            double_binomial_residual(&desc, &oracle, 4, -2, 3).unwrap(),
            BigRat::zero()
        );
        assert!(matches!(
            double_binomial_residual(&desc, &oracle, 7, 0, 1),
            Err(Error::InvalidVariant { given: 7, max: 6 })
        ));
    }

    #[test]
    fn square_double_binomial_examples() {
        let zero = BigInt::zero();
        assert_eq!(
            square_double_binomial_residual(&spec(0, 1), 1, 2, 2, 1, 3, 0).unwrap(),
            zero
        );
        assert_eq!(
            square_double_binomial_residual(&spec(2, 1), 3, 3, -1, 2, 4, 5).unwrap(),
            zero
        );
        // n = 0 collapses both sides to G_r^2 for any tuple
        for which in 1..=3u8 {
            assert_eq!(
                square_double_binomial_residual(&spec(3, -5), which, 0, 7, 7, 0, -3).unwrap(),
                zero
            );
        }
        assert!(matches!(
            square_double_binomial_residual(&spec(0, 1), 4, 1, 1, 2, 3, 0),
            Err(Error::InvalidVariant { given: 4, max: 3 })
        ));
    }

    #[test]
    fn degenerate_tuples_still_balance() {
        for (s, k, m) in [(1, 1, 3), (2, 1, 2), (0, 1, 3), (2, 0, 3), (2, 2, 2)] {
            assert!(square_tuple_degenerate(s, k, m));
            for which in 1..=3u8 {
                for n in 0..=3u64 {
                    let res =
                        square_double_binomial_residual(&spec(2, 1), which, n, s, k, m, 1)
                            .unwrap();
                    assert!(res.is_zero(), "which={which} n={n} skm=({s},{k},{m})");
                }
            }
        }
    }

    #[test]
    fn negative_exponent_guard() {
        assert_eq!(rat_pow_signed(&r(0), -1), None);
        assert_eq!(rat_pow_signed(&rq(2, 3), -2), Some(rq(9, 4)));
    }
}
