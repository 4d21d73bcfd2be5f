//! Fibonacci, Lucas, and arbitrary Fibonacci-like sequences over exact big
//! integers, with O(log |j|) index-to-value evaluation.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;

/// Initial terms (G0, G1) of a Fibonacci-like sequence G, where
/// G_j = G_{j-1} + G_{j-2} and the recurrence is run backwards for
/// negative indices. The terms must not both be zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceSpec {
    g0: BigInt,
    g1: BigInt,
}

impl SequenceSpec {
    pub fn new(g0: impl Into<BigInt>, g1: impl Into<BigInt>) -> Result<Self, Error> {
        let (g0, g1) = (g0.into(), g1.into());
        if g0.is_zero() && g1.is_zero() {
            return Err(Error::ZeroSequence);
        }
        Ok(Self { g0, g1 })
    }

    /// The Fibonacci instance (0, 1).
    pub fn fibonacci() -> Self {
        Self {
            g0: BigInt::zero(),
            g1: BigInt::one(),
        }
    }

    /// The Lucas instance (2, 1).
    pub fn lucas() -> Self {
        Self {
            g0: BigInt::from(2),
            g1: BigInt::one(),
        }
    }

    pub fn g0(&self) -> &BigInt {
        &self.g0
    }

    pub fn g1(&self) -> &BigInt {
        &self.g1
    }

    pub fn is_fibonacci(&self) -> bool {
        self.g0.is_zero() && self.g1.is_one()
    }

    /// G_j. Non-negative indices go through the addition formula
    /// G_j = F_{j-1} G0 + F_j G1 on top of fast doubling; negative indices
    /// through G_{-j} = (-1)^j (G0 L_j - G_j). Cost is O(log |j|)
    /// big-integer multiplications either way.
    pub fn term(&self, j: i64) -> BigInt {
        if j >= 0 {
            self.forward_term(j as u64)
        } else {
            let m = j.unsigned_abs();
            let v = &self.g0 * lucas_nonneg(m) - self.forward_term(m);
            if m % 2 == 0 {
                v
            } else {
                -v
            }
        }
    }

    /// G_j^2.
    pub fn term_sq(&self, j: i64) -> BigInt {
        let t = self.term(j);
        &t * &t
    }

    fn forward_term(&self, j: u64) -> BigInt {
        if j == 0 {
            return self.g0.clone();
        }
        let (f_prev, f) = fib_pair(j - 1);
        f_prev * &self.g0 + f * &self.g1
    }

    /// The window [G_lo, ..., G_hi] produced by a plain recurrence sweep
    /// anchored at (G0, G1). This is the slow oracle the fast path is
    /// checked against; it never consults `term`.
    pub fn window(&self, lo: i64, hi: i64) -> Result<Vec<BigInt>, Error> {
        if lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        let len = usize::try_from(hi as i128 - lo as i128 + 1)
            .map_err(|_| Error::InvalidRange { lo, hi })?;
        let mut out = vec![BigInt::zero(); len];
        let pos = |idx: i64| -> Option<usize> {
            (lo..=hi)
                .contains(&idx)
                .then(|| (idx as i128 - lo as i128) as usize)
        };
        if hi >= 0 {
            let (mut a, mut b) = (self.g0.clone(), self.g1.clone());
            for j in 0..=hi {
                if let Some(p) = pos(j) {
                    out[p] = a.clone();
                }
                let next = &a + &b;
                a = std::mem::replace(&mut b, next);
            }
        }
        if lo < 0 {
            // G_j = G_{j+2} - G_{j+1}
            let (mut above1, mut above0) = (self.g1.clone(), self.g0.clone());
            let mut j = -1i64;
            while j >= lo {
                let v = &above1 - &above0;
                if let Some(p) = pos(j) {
                    out[p] = v.clone();
                }
                above1 = std::mem::replace(&mut above0, v);
                j -= 1;
            }
        }
        Ok(out)
    }

    /// Forward iterator yielding G_start, G_{start+1}, ... with constant
    /// memory; the two seeds come from `term`.
    pub fn iter_from(&self, start: i64) -> TermIter {
        TermIter {
            cur: self.term(start),
            next: self.term(start + 1),
        }
    }
}

/// Infinite forward iterator over consecutive sequence terms.
pub struct TermIter {
    cur: BigInt,
    next: BigInt,
}

impl Iterator for TermIter {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let advanced = &self.cur + &self.next;
        let out = std::mem::replace(&mut self.cur, std::mem::replace(&mut self.next, advanced));
        Some(out)
    }
}

/// F_j for any signed j, with F_{-j} = (-1)^{j-1} F_j.
pub fn fib(j: i64) -> BigInt {
    let v = fib_pair(j.unsigned_abs()).0;
    if j < 0 && j % 2 == 0 {
        -v
    } else {
        v
    }
}

/// L_j for any signed j, with L_{-j} = (-1)^j L_j.
pub fn lucas(j: i64) -> BigInt {
    let v = lucas_nonneg(j.unsigned_abs());
    if j < 0 && j % 2 != 0 {
        -v
    } else {
        v
    }
}

fn lucas_nonneg(m: u64) -> BigInt {
    // L_m = 2 F_{m+1} - F_m
    let (f, f_next) = fib_pair(m);
    (f_next << 1) - f
}

/// (F_n, F_{n+1}) by fast doubling:
/// F_{2t} = F_t (2 F_{t+1} - F_t), F_{2t+1} = F_t^2 + F_{t+1}^2.
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    if n == 0 {
        return (a, b);
    }
    let bits = 64 - n.leading_zeros();
    for i in (0..bits).rev() {
        let c = &a * ((&b << 1) - &a);
        let d = &a * &a + &b * &b;
        if (n >> i) & 1 == 0 {
            a = c;
            b = d;
        } else {
            b = &c + &d;
            a = d;
        }
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(g0: i64, g1: i64) -> SequenceSpec {
        SequenceSpec::new(g0, g1).unwrap()
    }

    #[test]
    fn fib_base_cases() {
        assert_eq!(fib(0), BigInt::zero());
        assert_eq!(fib(1), BigInt::one());
        assert_eq!(fib(10), BigInt::from(55));
        assert_eq!(fib(-5), BigInt::from(5));
        assert_eq!(fib(-6), BigInt::from(-8));
    }

    #[test]
    fn lucas_base_cases() {
        assert_eq!(lucas(0), BigInt::from(2));
        assert_eq!(lucas(1), BigInt::one());
        assert_eq!(lucas(7), BigInt::from(29));
        assert_eq!(lucas(-5), BigInt::from(-11));
        assert_eq!(lucas(-4), BigInt::from(7));
    }

    #[test]
    fn term_matches_examples() {
        assert_eq!(spec(0, 1).term(9), BigInt::from(34));
        assert_eq!(spec(2, 1).term(-3), BigInt::from(-4));
        // forward recurrence oracle: 3, -5, -2, -7, -9
        assert_eq!(spec(3, -5).term(4), BigInt::from(-9));
        assert_eq!(spec(2, 1).term(0), BigInt::from(2));
    }

    #[test]
    fn window_matches_examples() {
        let w = spec(0, 1).window(0, 5).unwrap();
        let expect: Vec<BigInt> = [0, 1, 1, 2, 3, 5].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(w, expect);

        let w = spec(2, 1).window(-2, 2).unwrap();
        let expect: Vec<BigInt> = [3, -1, 2, 1, 3].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(w, expect);

        assert_eq!(spec(1, 1).window(0, 0).unwrap(), vec![BigInt::one()]);
        assert_eq!(
            spec(1, 1).window(3, 2).unwrap_err(),
            Error::InvalidRange { lo: 3, hi: 2 }
        );
    }

    #[test]
    fn window_agrees_with_term_far_from_zero() {
        for s in [spec(0, 1), spec(2, 1), spec(3, -5)] {
            for base in [-10_000i64, 0, 10_000] {
                let w = s.window(base - 3, base + 3).unwrap();
                for (off, value) in w.iter().enumerate() {
                    assert_eq!(*value, s.term(base - 3 + off as i64));
                }
            }
        }
    }

    #[test]
    fn iterator_tracks_term() {
        let s = spec(3, -5);
        let collected: Vec<BigInt> = s.iter_from(-4).take(9).collect();
        for (off, value) in collected.iter().enumerate() {
            assert_eq!(*value, s.term(-4 + off as i64));
        }
    }

    #[test]
    fn rejects_zero_sequence() {
        assert_eq!(SequenceSpec::new(0, 0).unwrap_err(), Error::ZeroSequence);
    }
}
