//! Exact polynomials over rationals, truncated power-series expansion of
//! rational functions, and the coefficient-level generating-function checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::report::{param, FailureCase, IdentityReport};
use crate::sequence::{fib, lucas, SequenceSpec};
use crate::summation::BigRat;

/// Polynomial with exact rational coefficients, index = power of x.
/// Canonical form: trailing zero coefficients trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_integers(cs: &[i64]) -> Self {
        Self::new(
            cs.iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_bigints(cs: Vec<BigInt>) -> Self {
        Self::new(cs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::new(out)
    }
}

/// The first order+1 coefficients of a formal power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPrefix {
    coeffs: Vec<BigRat>,
}

impl SeriesPrefix {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRat {
        &self.coeffs[i]
    }
}

/// The unique formal power series T with den * T = num (mod x^{order+1}),
/// by exact long division; den must have a nonzero constant term.
pub fn series_expand(num: &Poly, den: &Poly, order: usize) -> Result<SeriesPrefix, Error> {
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let den_len = den.coeffs().len();
    let mut out: Vec<BigRat> = Vec::with_capacity(order + 1);
    for i in 0..=order {
        let mut acc = num.coeff(i);
        for j in 1..den_len.min(i + 1) {
            acc -= &den.coeffs()[j] * &out[i - j];
        }
        out.push(acc / &d0);
    }
    Ok(SeriesPrefix { coeffs: out })
}

/// Checks coefficient-by-coefficient that x(1 - x)/(1 - 2x - 2x^2 + x^3)
/// generates F_j^2.
pub fn gf_fib_square_check(order: usize) -> IdentityReport {
    let num = Poly::from_integers(&[0, 1, -1]);
    let den = Poly::from_integers(&[1, -2, -2, 1]);
    let series = series_expand(&num, &den, order).expect("den constant term is 1");
    let mut report = IdentityReport::new("GF_FIB_SQUARES");
    report.tuples_checked = (order + 1) as u64;
    for (j, got) in series.coeffs().iter().enumerate() {
        let f = fib(j as i64);
        let want = BigRational::from_integer(&f * &f);
        if *got != want {
            report.failures.push(FailureCase {
                params: vec![param("j", j)],
                residual: format_rat(&(got - &want)),
            });
        }
    }
    report
}

/// Checks the spread-product generating function: termwise coefficients of
/// (-1)^k 2x sum x^j G_{j+k} G_{j-k} against the rational-function expansion
///
///   (x L_k^2 - (1+x^2) F_k^2 - 2x F_{k+1} F_{k-1})
///     (x^2 G_2^2 - (2x^2+2x-1) G_0^2 - (2x^2-x) G_1^2) / (x^3-2x^2-2x+1)
///   - x F_k^2 (G_1 - G_0)^2 + F_k^2 G_0^2
pub fn gf_spread_product_check(spec: &SequenceSpec, k: i64, order: usize) -> IdentityReport {
    let fk = fib(k);
    let fk_sq = &fk * &fk;
    let lk = lucas(k);
    let weight_poly = Poly::from_bigints(vec![
        -fk_sq.clone(),
        &lk * &lk - 2 * fib(k + 1) * fib(k - 1),
        -fk_sq.clone(),
    ]);
    let seq_poly = Poly::from_bigints(vec![
        spec.g0() * spec.g0(),
        spec.g1() * spec.g1() - 2 * spec.g0() * spec.g0(),
        spec.term_sq(2) - 2 * spec.g0() * spec.g0() - 2 * spec.g1() * spec.g1(),
    ]);
    let num = &weight_poly * &seq_poly;
    let den = Poly::from_integers(&[1, -2, -2, 1]);
    let series = series_expand(&num, &den, order).expect("den constant term is 1");

    let step = spec.g1() - spec.g0();
    let mut rhs: Vec<BigRat> = series.coeffs().to_vec();
    rhs[0] += BigRational::from_integer(&fk_sq * spec.g0() * spec.g0());
    if order >= 1 {
        rhs[1] -= BigRational::from_integer(&fk_sq * &step * &step);
    }

    let mut report = IdentityReport::new("GF_SPREAD_PRODUCT");
    report.tuples_checked = (order + 1) as u64;
    for (t, want) in rhs.iter().enumerate() {
        let got = if t == 0 {
            BigRat::zero()
        } else {
            let j = t as i64 - 1;
            let v = 2 * spec.term(j + k) * spec.term(j - k);
            BigRational::from_integer(if k % 2 == 0 { v } else { -v })
        };
        if got != *want {
            report.failures.push(FailureCase {
                params: vec![
                    param("g0", spec.g0()),
                    param("g1", spec.g1()),
                    param("k", k),
                    param("t", t),
                ],
                residual: format_rat(&(&got - want)),
            });
        }
    }
    report
}

/// Renders a rational as "p" when integral, "p/q" otherwise.
pub fn format_rat(x: &BigRat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
