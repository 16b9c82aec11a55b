//! Degeneracy-class counts on complete graphs.
//!
//! `ncv(n, v)` is the number of connected even multigraphs with `n` bonds that
//! use all of `v` labeled vertices. Every such multigraph is one degeneracy
//! class of `n`-bond periodic orbits, so the class count on `K_V` is
//! `Σ_v C(V, v) · ncv(n, v)`.
//!
//! Two routes produce `ncv`: the formal logarithm of `E(x, t)` ([`LogNcv`])
//! and the coefficient recursion between `E` and `ln E` ([`RecursiveNcv`]).
//! Both vanish for `v > max(n, 1)`: every vertex of a connected even
//! multigraph with at least one bond has valency ≥ 2, so it has at most `n`
//! vertices. Tables use that to cap the `v` range.

use crate::error::{Error, Result};
use crate::series::{self, as_count, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Which route fills an `ncv` table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    /// `v!` times the `t^n x^v` coefficient of `ln E(x, t)`.
    Log,
    /// The recursion `L_v = v! E_v - Σ_k (v-1)!/(k-1)! L_k E_{v-k}`.
    #[default]
    Recursive,
}

/// Largest `v` for which `ncv(n, v)` can be nonzero at any `n ≤ n_max`.
fn support_limit(n_max: usize) -> usize {
    n_max.max(1)
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `ncv` values from the logarithm of the product-expanded `E(x, t)`.
#[derive(Debug, Clone)]
pub struct LogNcv {
    n_max: usize,
    v_max: usize,
    values: Vec<Vec<BigInt>>,
}

impl LogNcv {
    pub fn new(n_max: usize, v_max: usize) -> Result<Self> {
        let v_eff = v_max.min(support_limit(n_max));
        let log_e = series::series_log(&series::build_e(n_max, v_eff))?;
        let mut values = vec![vec![BigInt::zero(); v_max + 1]; n_max + 1];
        for v in 1..=v_eff {
            let f = Rational::from_integer(factorial(v));
            for (n, row) in values.iter_mut().enumerate() {
                let scaled = log_e.coeff(n, v) * &f;
                row[v] = as_count(&scaled).ok_or_else(|| {
                    Error::Consistency(format!("ncv({n}, {v}) from ln E is {scaled}"))
                })?;
            }
        }
        Ok(Self { n_max, v_max, values })
    }

    pub fn get(&self, n: usize, v: usize) -> &BigInt {
        assert!(n <= self.n_max && v <= self.v_max && v >= 1);
        &self.values[n][v]
    }
}

/// `ncv` values from the recursion, memoized as the full polynomials
/// `L_v(t) = Σ_n ncv(n, v) t^n` for `v ≤ v_max`.
#[derive(Debug, Clone)]
pub struct RecursiveNcv {
    n_max: usize,
    v_max: usize,
    l: Vec<Vec<BigInt>>,
}

impl RecursiveNcv {
    pub fn new(n_max: usize, v_max: usize) -> Result<Self> {
        let len = n_max + 1;
        let v_eff = v_max.min(support_limit(n_max));
        // scaled[j][n] = 2^j j! E_{n,j}, an integer
        let scaled: Vec<Vec<BigInt>> = (0..=v_eff)
            .map(|j| {
                let den = factorial(j) << j;
                series::e_coeff_column(n_max as u64, j as u64)
                    .into_iter()
                    .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect();

        // 2^v L_v = 2^v v! E_v - Σ_k C(v-1, k-1) 2^k L_k (2^(v-k) (v-k)! E_{v-k})
        let mut l: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); len]];
        let mut pascal: Vec<BigInt> = vec![BigInt::one()];
        for v in 1..=v_eff {
            if v > 1 {
                let mut row = vec![BigInt::one(); v];
                for k in 1..v - 1 {
                    row[k] = &pascal[k - 1] + &pascal[k];
                }
                pascal = row;
            }
            let mut acc = scaled[v].clone();
            for k in 1..v {
                let weight: BigInt = &pascal[k - 1] << k;
                let lk = &l[k];
                let ej = &scaled[v - k];
                for (i, a) in lk.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let wa = &weight * a;
                    for (m, b) in ej[..len - i].iter().enumerate() {
                        if !b.is_zero() {
                            acc[i + m] -= &wa * b;
                        }
                    }
                }
            }
            let unit = BigInt::one() << v;
            let mut row = Vec::with_capacity(len);
            for (n, c) in acc.into_iter().enumerate() {
                let (q, r) = c.div_rem(&unit);
                if !r.is_zero() || q < BigInt::zero() {
                    return Err(Error::Consistency(format!(
                        "ncv({n}, {v}) from recursion is {c}/{unit}"
                    )));
                }
                row.push(q);
            }
            l.push(row);
        }
        Ok(Self { n_max, v_max, l })
    }

    pub fn get(&self, n: usize, v: usize) -> BigInt {
        assert!(n <= self.n_max && v <= self.v_max && v >= 1);
        self.l.get(v).map(|row| row[n].clone()).unwrap_or_default()
    }

    /// `L_v(t)` truncated at `t^n_max`; zero beyond the support limit.
    pub fn l_poly(&self, v: usize) -> Vec<BigInt> {
        self.l
            .get(v)
            .cloned()
            .unwrap_or_else(|| vec![BigInt::zero(); self.n_max + 1])
    }
}

fn check_ncv_args(v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::Domain("ncv needs v >= 1".to_string()));
    }
    Ok(())
}

/// `ncv(n, v)` as `v!` times the `t^n x^v` coefficient of `ln E`.
pub fn ncv_from_log(n: usize, v: usize) -> Result<BigInt> {
    check_ncv_args(v)?;
    Ok(LogNcv::new(n, v)?.get(n, v).clone())
}

/// `ncv(n, v)` from the `E` / `ln E` coefficient recursion.
pub fn ncv_recursive(n: usize, v: usize) -> Result<BigInt> {
    check_ncv_args(v)?;
    Ok(RecursiveNcv::new(n, v)?.get(n, v))
}

/// Exact table of `ncv(n, v)` and class counts `nc(n, V)` for
/// `n ≤ n_max`, `V ≤ v_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCountTable {
    n_max: usize,
    v_max: usize,
    ncv: Vec<Vec<BigInt>>,
    nc: Vec<Vec<BigInt>>,
}

impl ClassCountTable {
    pub fn build(n_max: usize, v_max: usize, route: Route) -> Result<Self> {
        let mut ncv = vec![vec![BigInt::zero(); v_max + 1]; n_max + 1];
        if v_max >= 1 {
            match route {
                Route::Log => {
                    let t = LogNcv::new(n_max, v_max)?;
                    for (n, row) in ncv.iter_mut().enumerate() {
                        for (v, cell) in row.iter_mut().enumerate().skip(1) {
                            *cell = t.get(n, v).clone();
                        }
                    }
                }
                Route::Recursive => {
                    let t = RecursiveNcv::new(n_max, v_max)?;
                    for (n, row) in ncv.iter_mut().enumerate() {
                        for (v, cell) in row.iter_mut().enumerate().skip(1) {
                            *cell = t.get(n, v);
                        }
                    }
                }
            }
        }

        let mut pascal: Vec<Vec<BigInt>> = Vec::with_capacity(v_max + 1);
        for big_v in 0..=v_max {
            let mut row = vec![BigInt::one(); big_v + 1];
            for v in 1..big_v {
                row[v] = &pascal[big_v - 1][v - 1] + &pascal[big_v - 1][v];
            }
            pascal.push(row);
        }
        let nc = ncv
            .iter()
            .map(|row| {
                (0..=v_max)
                    .map(|big_v| {
                        (1..=big_v)
                            .map(|v| &pascal[big_v][v] * &row[v])
                            .sum::<BigInt>()
                    })
                    .collect()
            })
            .collect();
        Ok(Self { n_max, v_max, ncv, nc })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn v_max(&self) -> usize {
        self.v_max
    }

    pub fn ncv(&self, n: usize, v: usize) -> &BigInt {
        &self.ncv[n][v]
    }

    /// Raw class count `Σ_v C(V, v) ncv(n, v)`, defined for every grid point.
    pub fn nc(&self, n: usize, big_v: usize) -> &BigInt {
        &self.nc[n][big_v]
    }

    /// Number of degeneracy classes of `n`-bond periodic orbits on `K_V`.
    ///
    /// `n = 0` is rejected (the empty class is not an orbit); `n = 1` gives 0.
    pub fn count_classes(&self, n: usize, big_v: usize) -> Result<BigInt> {
        check_class_args(n, big_v)?;
        if n > self.n_max || big_v > self.v_max {
            return Err(Error::Domain(format!(
                "(n={n}, V={big_v}) outside table {}x{}",
                self.n_max, self.v_max
            )));
        }
        Ok(self.nc[n][big_v].clone())
    }
}

fn check_class_args(n: usize, big_v: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n = 0 has no periodic orbits".to_string()));
    }
    if big_v == 0 {
        return Err(Error::Domain("graph needs V >= 1".to_string()));
    }
    Ok(())
}

/// Number of degeneracy classes of `n`-bond periodic orbits on `K_V`.
pub fn count_classes(n: usize, big_v: usize) -> Result<BigInt> {
    count_classes_via(n, big_v, Route::Recursive)
}

pub fn count_classes_via(n: usize, big_v: usize, route: Route) -> Result<BigInt> {
    check_class_args(n, big_v)?;
    ClassCountTable::build(n, big_v, route)?.count_classes(n, big_v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_component_values() {
        assert_eq!(ncv_from_log(4, 1).unwrap(), big(0));
        assert_eq!(ncv_from_log(4, 2).unwrap(), big(1));
        assert_eq!(ncv_from_log(4, 3).unwrap(), big(3));
        assert_eq!(ncv_from_log(4, 4).unwrap(), big(3));
        assert_eq!(ncv_recursive(4, 2).unwrap(), big(1));
        assert_eq!(ncv_recursive(0, 1).unwrap(), big(1));
        assert_eq!(ncv_recursive(5, 2).unwrap(), big(0));
    }

    #[test]
    fn zero_vertices_rejected() {
        assert!(matches!(ncv_from_log(3, 0), Err(Error::Domain(_))));
        assert!(matches!(ncv_recursive(3, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn class_counts() {
        assert_eq!(count_classes(4, 4).unwrap(), big(21));
        assert_eq!(count_classes(5, 4).unwrap(), big(24));
        for v in 2..=8u64 {
            assert_eq!(count_classes(2, v as usize).unwrap(), big(v * (v - 1) / 2));
        }
        assert_eq!(count_classes(1, 5).unwrap(), big(0));
        assert!(matches!(count_classes(0, 5), Err(Error::Domain(_))));
        assert_eq!(count_classes_via(4, 4, Route::Log).unwrap(), big(21));
    }

    #[test]
    fn support_vanishes_beyond_n_vertices() {
        // computed without the cap on the log route
        let log_e = series::series_log(&series::build_e(6, 9)).unwrap();
        for n in 1..=6 {
            for v in (n + 1)..=9 {
                assert!(log_e.coeff(n, v).is_zero(), "n={n} v={v}");
            }
        }
        for v in 2..=9 {
            assert!(log_e.coeff(0, v).is_zero(), "n=0 v={v}");
        }
    }

    #[test]
    fn routes_agree_on_moderate_grid() {
        let log = ClassCountTable::build(24, 7, Route::Log).unwrap();
        let rec = ClassCountTable::build(24, 7, Route::Recursive).unwrap();
        assert_eq!(log, rec);
    }

    #[test]
    fn two_vertex_parity() {
        let t = RecursiveNcv::new(60, 2).unwrap();
        for n in 1..=60 {
            assert_eq!(t.get(n, 2), big(if n % 2 == 0 { 1 } else { 0 }), "n={n}");
        }
    }

    #[test]
    fn three_vertex_closed_form() {
        // all three multiplicities share the parity of n; odd ones are all
        // positive, even ones may leave one bond empty (a doubled path)
        let t = RecursiveNcv::new(80, 3).unwrap();
        for n in 1..=80u64 {
            let expected = if n % 2 == 0 {
                let m = n / 2;
                (m - 1) * m.saturating_sub(2) / 2 + 3 * (m - 1)
            } else if n >= 3 {
                let m = (n - 3) / 2 + 2;
                m * (m - 1) / 2
            } else {
                0
            };
            assert_eq!(t.get(n as usize, 3), big(expected), "n={n}");
        }
    }

    #[test]
    fn table_invariants() {
        let t = ClassCountTable::build(20, 10, Route::Recursive).unwrap();
        for n in 1..=20 {
            for big_v in 1..10 {
                assert!(t.nc(n, big_v + 1) >= t.nc(n, big_v), "n={n} V={big_v}");
            }
        }
    }
}
