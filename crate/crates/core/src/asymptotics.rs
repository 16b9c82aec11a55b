//! Large-`n` behaviour of the class count and the mean degeneracy.
//!
//! The leading term for the paired class count on a connected graph with `B`
//! bonds and `V` vertices is
//!
//! ```text
//! N_c(2m) + N_c(2m + 1) ~ 2^(B - V + 1) m^(B - 1) / (B - 1)!
//! ```
//!
//! with `B = V(V-1)/2` on `K_V`. Every quantity here is an exact rational up
//! to the final rendering; only the logarithmic estimates use `f64`.

use crate::classes::ClassCountTable;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn bond_count(v: u64) -> u64 {
    v * (v - 1) / 2
}

/// Leading asymptotic value of `N_c(n, V) + N_c(n + 1, V)` for even `n`.
pub fn asymptotic_pair_count(n: u64, v: u64) -> Result<BigRational> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::Domain(format!("paired asymptotics need even n >= 2, got {n}")));
    }
    if v < 2 {
        return Err(Error::Domain(format!("paired asymptotics need V >= 2, got {v}")));
    }
    let b = bond_count(v);
    let m = BigInt::from(n / 2);
    let numer = num_traits::pow(m, (b - 1) as usize) << (b + 1 - v) as usize;
    Ok(BigRational::new(numer, factorial(b - 1)))
}

/// One row of the class-count convergence table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticPoint {
    pub n: u64,
    pub v: u64,
    pub exact_pair: BigInt,
    pub asymptotic_pair: BigRational,
    pub ratio: BigRational,
}

impl AsymptoticPoint {
    /// Needs a table covering `n + 1` and `V`.
    pub fn from_table(table: &ClassCountTable, n: u64, v: u64) -> Result<Self> {
        let asymptotic_pair = asymptotic_pair_count(n, v)?;
        let exact_pair = table.count_classes(n as usize, v as usize)?
            + table.count_classes(n as usize + 1, v as usize)?;
        let ratio = BigRational::from_integer(exact_pair.clone()) / &asymptotic_pair;
        Ok(Self { n, v, exact_pair, asymptotic_pair, ratio })
    }

    pub fn compute(n: u64, v: u64) -> Result<Self> {
        let table = ClassCountTable::build(n as usize + 1, v as usize, Default::default())?;
        Self::from_table(&table, n, v)
    }
}

/// Approximate `D(n, V)` from `N(n, V) ≈ (V-1)^n` and the paired asymptotics:
///
/// ```text
/// D(n, V) ≈ (B - 1)! 2^(V - 1) (V - 1)^n / n^B
/// ```
pub fn approx_mean_degeneracy(n: u64, v: u64) -> Result<BigRational> {
    check_approx_args(n, v)?;
    let b = bond_count(v);
    let numer = factorial(b - 1) * num_traits::pow(BigInt::from(v - 1), n as usize) << (v - 1) as usize;
    Ok(BigRational::new(numer, num_traits::pow(BigInt::from(n), b as usize)))
}

/// The same estimate with the printed prefactor `V (V^2 - V - 1)! 2^(V - 1)`.
///
/// Kept for comparison only: the prefactor does not follow from the paired
/// asymptotics and overshoots the exact values by orders of magnitude
/// (see the tests). The `n`-dependence is identical.
pub fn approx_mean_degeneracy_as_printed(n: u64, v: u64) -> Result<BigRational> {
    check_approx_args(n, v)?;
    let b = bond_count(v);
    let numer = BigInt::from(v)
        * factorial(v * v - v - 1)
        * num_traits::pow(BigInt::from(v - 1), n as usize)
        << (v - 1) as usize;
    Ok(BigRational::new(numer, num_traits::pow(BigInt::from(n), b as usize)))
}

fn check_approx_args(n: u64, v: u64) -> Result<()> {
    if n == 0 || v < 2 {
        return Err(Error::Domain(format!("need n >= 1 and V >= 2, got n={n}, V={v}")));
    }
    Ok(())
}

/// The `n`-dependent part of `log D(n, V)`: `n log(V-1) - B log n`.
pub fn log_mean_degeneracy_leading(n: u64, v: u64, log_base: f64) -> f64 {
    let b = bond_count(v) as f64;
    (n as f64 * ((v - 1) as f64).ln() - b * (n as f64).ln()) / log_base.ln()
}

/// `sqrt(n / log_base(n))`, the vertex count maximizing `D(n, V)` at fixed `n`.
pub fn v_max_estimate(n: u64, log_base: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!("V_max estimate needs n >= 3, got {n}")));
    }
    if log_base.is_nan() || log_base <= 1.0 {
        return Err(Error::Domain(format!("logarithm base must exceed 1, got {log_base}")));
    }
    let n = n as f64;
    Ok((n / n.log(log_base)).sqrt())
}

/// Default base reproducing the quoted maxima near `V = 3.9` and `4.5`.
pub const DEFAULT_LOG_BASE: f64 = 10.0;

/// Whether the rational is within `tol` of one.
pub fn near_one(x: &BigRational, tol: f64) -> bool {
    let diff = x - BigRational::one();
    let abs = if diff < BigRational::zero() { -diff } else { diff };
    crate::decimal::to_f64(&abs) < tol
}
