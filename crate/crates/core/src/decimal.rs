//! Decimal rendering of exact rationals.
//!
//! Counts and degeneracies are exact; these helpers are the only place where
//! they turn into digits. Rounding is half away from zero on the exact value,
//! so the output is a pure function of the rational and the digit count.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Significant digits used for grid files.
pub const GRID_DIGITS: usize = 15;
/// Significant digits used for spectrum lengths and asymptotic ratios.
pub const HIGH_DIGITS: usize = 50;

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

/// Compares `p / q` against `10^e` for positive `p`, `q`.
fn cmp_pow10(p: &BigInt, q: &BigInt, e: i64) -> Ordering {
    if e >= 0 {
        p.cmp(&(q * pow10(e as u32)))
    } else {
        (p * pow10((-e) as u32)).cmp(q)
    }
}

/// `floor(log10(p / q))` for positive `p`, `q`.
fn decimal_exponent(p: &BigInt, q: &BigInt) -> i64 {
    let mut e = p.to_string().len() as i64 - q.to_string().len() as i64;
    while cmp_pow10(p, q, e) == Ordering::Less {
        e -= 1;
    }
    while cmp_pow10(p, q, e + 1) != Ordering::Less {
        e += 1;
    }
    e
}

/// Renders `x` with `digits` significant digits.
///
/// Plain notation is used for exponents in `-6..digits`, scientific
/// (`1.5e20`) otherwise. Trailing fractional zeros are dropped, so exact
/// small values print as integers: `2/1` renders as `2`.
pub fn format_significant(x: &BigRational, digits: usize) -> String {
    assert!(digits >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    let p = x.numer().abs();
    let q = x.denom().abs();

    let mut e = decimal_exponent(&p, &q);
    let shift = digits as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (p * pow10(shift as u32), q)
    } else {
        (p, q * pow10((-shift) as u32))
    };
    let two = BigInt::from(2u32);
    let mut mantissa: BigInt = (&two * num + &den) / (&two * den);
    if mantissa >= pow10(digits as u32) {
        mantissa /= 10u32;
        e += 1;
    }
    let m = mantissa.to_string();
    debug_assert_eq!(m.len(), digits);

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if e >= -6 && e < digits as i64 {
        if e >= 0 {
            let split = (e + 1) as usize;
            out.push_str(&m[..split]);
            let frac = m[split..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        } else {
            out.push_str("0.");
            for _ in 0..(-e - 1) {
                out.push('0');
            }
            out.push_str(m.trim_end_matches('0'));
        }
    } else {
        out.push_str(&m[..1]);
        let frac = m[1..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        out.push('e');
        out.push_str(&e.to_string());
    }
    out
}

/// Renders an exact rational as `numerator/denominator`, always with both parts.
pub fn format_exact_ratio(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn log10_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 900 {
        return n.to_f64().unwrap_or(f64::INFINITY).log10();
    }
    let drop = bits - 64;
    let top = (n >> drop).to_f64().unwrap_or(0.0);
    top.log10() + drop as f64 * std::f64::consts::LOG10_2
}

/// Base-10 logarithm of a positive rational of any size.
pub fn log10(x: &BigRational) -> Option<f64> {
    if x.numer().sign() != Sign::Plus || !x.denom().is_positive() {
        return None;
    }
    let p = x.numer().magnitude();
    let q = x.denom().magnitude();
    if q.is_one() {
        return Some(log10_biguint(p));
    }
    Some(log10_biguint(p) - log10_biguint(q))
}

/// Lossy conversion for presentation and loose comparisons.
pub fn to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    let abs = x.abs();
    sign * 10f64.powf(log10(&abs).expect("positive"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn integers_render_plainly() {
        assert_eq!(format_significant(&r(21, 1), 15), "21");
        assert_eq!(format_significant(&r(2, 1), 15), "2");
        assert_eq!(format_significant(&r(0, 1), 15), "0");
        assert_eq!(format_significant(&r(-7, 1), 15), "-7");
    }

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(format_significant(&r(1, 3), 5), "0.33333");
        assert_eq!(format_significant(&r(2, 3), 5), "0.66667");
        assert_eq!(format_significant(&r(125, 100), 2), "1.3");
        assert_eq!(format_significant(&r(-125, 100), 2), "-1.3");
        assert_eq!(format_significant(&r(9999, 1000), 3), "10");
    }

    #[test]
    fn large_and_small_switch_to_scientific() {
        let big = BigRational::from_integer(pow10(20) * 15);
        assert_eq!(format_significant(&big, 15), "1.5e21");
        assert_eq!(format_significant(&r(1, 1_000_000_000), 3), "1e-9");
        assert_eq!(format_significant(&r(1, 1000), 3), "0.001");
    }

    #[test]
    fn exact_ratio_keeps_unit_denominator() {
        assert_eq!(format_exact_ratio(&r(2, 1)), "2/1");
        assert_eq!(format_exact_ratio(&r(6, 4)), "3/2");
    }

    #[test]
    fn log10_handles_huge_values() {
        let x = BigRational::from_integer(pow10(400) * 3);
        let l = log10(&x).unwrap();
        assert!((l - (400.0 + 3f64.log10())).abs() < 1e-9);
        assert!((log10(&r(1, 100)).unwrap() + 2.0).abs() < 1e-12);
        assert!(log10(&r(-1, 2)).is_none());
    }
}
