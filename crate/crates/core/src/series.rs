//! Exact truncated bivariate power series in `(t, x)`.
//!
//! The even-multigraph generating function
//!
//! ```text
//! E(x, t) = Σ_v 2^-v x^v / v! · (1 - t)^(-v(v-1)/2) · Σ_s C(v, s) ((1 - t) / (1 + t))^(s(v - s))
//! ```
//!
//! is built here in two independent ways: [`build_e`] expands each `x^v` term
//! as a product of univariate series in `t`, while [`e_coeff`] evaluates the
//! closed double sum over `s` and `μ`. The two must agree coefficient by
//! coefficient.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Rational = BigRational;

/// Binomial coefficient with the convention used for the multigraph sums:
/// `C(a, 0) = 1` for every `a` (including negative), `C(a, b) = 0` whenever
/// `b > a` and `b ≠ 0`, and the ordinary value otherwise.
///
/// This is *not* the generalized binomial: `C(-1, 3)` is `0`, not `-1`.
pub fn binomial_ext(a: i64, b: i64) -> Result<BigInt> {
    if b < 0 {
        return Err(Error::Domain(format!("binomial lower index {b} < 0")));
    }
    if b == 0 {
        return Ok(BigInt::one());
    }
    if b > a {
        return Ok(BigInt::zero());
    }
    let k = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= a - i;
        acc /= i + 1;
    }
    Ok(acc)
}

fn binom(a: i64, b: i64) -> BigInt {
    binomial_ext(a, b).expect("nonnegative lower index")
}

fn choose2(k: i64) -> i64 {
    k * (k - 1) / 2
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `2^v · v!`, the common denominator of every `E_{n,v}`.
fn e_denominator(v: u64) -> BigInt {
    factorial(v) << v as usize
}

/// Closed-form coefficient of `t^n x^v` in `E(x, t)`.
pub fn e_coeff(n: u64, v: u64) -> Rational {
    let (n, vi) = (n as i64, v as i64);
    let mut sum = BigInt::zero();
    for s in 0..=vi {
        let cross = s * (vi - s);
        let same = choose2(s) + choose2(vi - s);
        let outer = binom(vi, s);
        for mu in 0..=n {
            let term = binom(mu + cross - 1, mu) * binom(n - mu + same - 1, n - mu);
            if term.is_zero() {
                continue;
            }
            let term = term * &outer;
            if mu % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
    }
    Rational::new(sum, e_denominator(v))
}

/// `E_{n,v}` for every `n ≤ n_max` at fixed `v`.
///
/// Same double sum as [`e_coeff`]; the inner sum over `μ` is a convolution in
/// `n`, so the binomial sequences are evaluated once per `s` and convolved.
pub fn e_coeff_column(n_max: u64, v: u64) -> Vec<Rational> {
    let len = n_max as usize + 1;
    let vi = v as i64;
    let mut numer = vec![BigInt::zero(); len];
    for s in 0..=vi {
        let cross = s * (vi - s);
        let same = choose2(s) + choose2(vi - s);
        let outer = binom(vi, s);
        let signed: Vec<BigInt> = (0..len as i64)
            .map(|mu| {
                let c = binom(mu + cross - 1, mu) * &outer;
                if mu % 2 == 0 { c } else { -c }
            })
            .collect();
        let plain: Vec<BigInt> = (0..len as i64).map(|k| binom(k + same - 1, k)).collect();
        for (i, a) in signed.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in plain[..len - i].iter().enumerate() {
                if !b.is_zero() {
                    numer[i + j] += a * b;
                }
            }
        }
    }
    let den = e_denominator(v);
    numer
        .into_iter()
        .map(|c| Rational::new(c, den.clone()))
        .collect()
}

/// Dense truncated series `Σ c[n][v] t^n x^v`, `0 ≤ n ≤ n_max`, `0 ≤ v ≤ v_max`.
#[derive(Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    n_max: usize,
    v_max: usize,
    coeffs: Vec<Rational>,
}

impl BivariateSeries {
    pub fn zero(n_max: usize, v_max: usize) -> Self {
        Self {
            n_max,
            v_max,
            coeffs: vec![Rational::zero(); (n_max + 1) * (v_max + 1)],
        }
    }

    pub fn one(n_max: usize, v_max: usize) -> Self {
        let mut s = Self::zero(n_max, v_max);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Builds a series from a closure evaluated on every grid point.
    pub fn from_fn(n_max: usize, v_max: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut s = Self::zero(n_max, v_max);
        for n in 0..=n_max {
            for v in 0..=v_max {
                s.coeffs[n * (v_max + 1) + v] = f(n, v);
            }
        }
        s
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn v_max(&self) -> usize {
        self.v_max
    }

    fn idx(&self, n: usize, v: usize) -> usize {
        assert!(n <= self.n_max && v <= self.v_max, "({n}, {v}) outside truncation window");
        n * (self.v_max + 1) + v
    }

    /// Coefficient of `t^n x^v`.
    pub fn coeff(&self, n: usize, v: usize) -> &Rational {
        &self.coeffs[self.idx(n, v)]
    }

    pub fn set(&mut self, n: usize, v: usize, value: Rational) {
        let i = self.idx(n, v);
        self.coeffs[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The `x^v` slice as a polynomial in `t`.
    pub fn x_slice(&self, v: usize) -> Vec<Rational> {
        (0..=self.n_max).map(|n| self.coeff(n, v).clone()).collect()
    }

    /// Drops every coefficient outside the smaller window.
    pub fn truncate(&self, n_max: usize, v_max: usize) -> Self {
        let (n_max, v_max) = (n_max.min(self.n_max), v_max.min(self.v_max));
        Self::from_fn(n_max, v_max, |n, v| self.coeff(n, v).clone())
    }

    fn nonzero_terms(&self) -> Vec<(usize, usize, &Rational)> {
        let mut out = Vec::new();
        for n in 0..=self.n_max {
            for v in 0..=self.v_max {
                let c = self.coeff(n, v);
                if !c.is_zero() {
                    out.push((n, v, c));
                }
            }
        }
        out
    }

    /// Product truncated to the smaller of the two windows.
    pub fn mul(&self, other: &Self) -> Self {
        let n_max = self.n_max.min(other.n_max);
        let v_max = self.v_max.min(other.v_max);
        let mut out = Self::zero(n_max, v_max);
        let rhs = other.nonzero_terms();
        for (n1, v1, a) in self.nonzero_terms() {
            if n1 > n_max || v1 > v_max {
                continue;
            }
            for &(n2, v2, b) in &rhs {
                if n1 + n2 <= n_max && v1 + v2 <= v_max {
                    let i = out.idx(n1 + n2, v1 + v2);
                    out.coeffs[i] += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let n_max = self.n_max.min(other.n_max);
        let v_max = self.v_max.min(other.v_max);
        Self::from_fn(n_max, v_max, |n, v| self.coeff(n, v) + other.coeff(n, v))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n_max = self.n_max.min(other.n_max);
        let v_max = self.v_max.min(other.v_max);
        Self::from_fn(n_max, v_max, |n, v| self.coeff(n, v) - other.coeff(n, v))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::from_fn(self.n_max, self.v_max, |n, v| self.coeff(n, v) * factor)
    }
}

impl fmt::Debug for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariateSeries[{}x{}]", self.n_max, self.v_max)?;
        let mut list = f.debug_map();
        for (n, v, c) in self.nonzero_terms() {
            list.entry(&(n, v), &c.to_string());
        }
        list.finish()
    }
}

/// Truncated univariate integer polynomial product.
fn poly_mul(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(1 - t)^(-power)` to `len` terms, by repeated prefix sums.
fn inverse_one_minus_t_pow(power: usize, len: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); len];
    p[0] = BigInt::one();
    for _ in 0..power {
        for i in 1..len {
            let prev = p[i - 1].clone();
            p[i] += prev;
        }
    }
    p
}

/// `(1 - t) / (1 + t) = 1 - 2t + 2t^2 - 2t^3 + ...`
fn mobius_ratio(len: usize) -> Vec<BigInt> {
    (0..len)
        .map(|i| match i {
            0 => BigInt::one(),
            _ if i % 2 == 1 => BigInt::from(-2),
            _ => BigInt::from(2),
        })
        .collect()
}

/// `E(x, t)` truncated at `t^n_max`, `x^v_max`, by expanding each `x^v` term
/// as a product of series in `t`.
pub fn build_e(n_max: usize, v_max: usize) -> BivariateSeries {
    let len = n_max + 1;
    let ratio = mobius_ratio(len);
    // ratio^m for every m = s(v - s) that occurs
    let max_cross = (v_max / 2) * (v_max - v_max / 2);
    let mut ratio_pows = Vec::with_capacity(max_cross + 1);
    let mut unit = vec![BigInt::zero(); len];
    unit[0] = BigInt::one();
    ratio_pows.push(unit);
    for m in 1..=max_cross {
        let next = poly_mul(&ratio_pows[m - 1], &ratio, len);
        ratio_pows.push(next);
    }

    let mut out = BivariateSeries::zero(n_max, v_max);
    let mut pascal = vec![BigInt::one()];
    for v in 0..=v_max {
        if v > 0 {
            let mut row = vec![BigInt::one(); v + 1];
            for s in 1..v {
                row[s] = &pascal[s - 1] + &pascal[s];
            }
            pascal = row;
        }
        let mut inner = vec![BigInt::zero(); len];
        for (s, weight) in pascal.iter().enumerate() {
            for (acc, c) in inner.iter_mut().zip(&ratio_pows[s * (v - s)]) {
                *acc += weight * c;
            }
        }
        let prefactor = inverse_one_minus_t_pow(v * (v.saturating_sub(1)) / 2, len);
        let column = poly_mul(&prefactor, &inner, len);
        let den = e_denominator(v as u64);
        for (n, c) in column.into_iter().enumerate() {
            out.set(n, v, Rational::new(c, den.clone()));
        }
    }
    out
}

/// Formal logarithm `Σ_{k≥1} (-1)^(k+1) u^k / k` with `u = s - 1`.
///
/// `u` has no constant term, so `u^k` vanishes once `k` exceeds the total
/// truncation degree; the loop stops as soon as a power is identically zero.
pub fn series_log(s: &BivariateSeries) -> Result<BivariateSeries> {
    if !s.coeff(0, 0).is_one() {
        return Err(Error::Domain(format!(
            "formal logarithm needs constant term 1, got {}",
            s.coeff(0, 0)
        )));
    }
    let (n_max, v_max) = (s.n_max(), s.v_max());
    let u = s.sub(&BivariateSeries::one(n_max, v_max));
    let mut acc = BivariateSeries::zero(n_max, v_max);
    let mut power = u.clone();
    let mut k = 1i64;
    while !power.is_zero() {
        let c = Rational::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, k.into());
        acc = acc.add(&power.scale(&c));
        power = power.mul(&u);
        k += 1;
    }
    Ok(acc)
}

/// Formal exponential `Σ_{k≥0} l^k / k!` of a series with zero constant term.
pub fn series_exp(l: &BivariateSeries) -> Result<BivariateSeries> {
    if !l.coeff(0, 0).is_zero() {
        return Err(Error::Domain(
            "formal exponential needs a zero constant term".to_string(),
        ));
    }
    let (n_max, v_max) = (l.n_max(), l.v_max());
    let mut acc = BivariateSeries::one(n_max, v_max);
    let mut power = BivariateSeries::one(n_max, v_max);
    let mut k = 1i64;
    loop {
        power = power.mul(l).scale(&Rational::new(1.into(), k.into()));
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power);
        k += 1;
    }
    Ok(acc)
}

/// Whether a rational is a nonnegative integer.
pub(crate) fn as_count(x: &Rational) -> Option<BigInt> {
    (x.is_integer() && !x.is_negative()).then(|| x.to_integer())
}
