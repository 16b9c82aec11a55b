//! Closed walks, periodic orbits and the mean degeneracy.

use crate::classes::ClassCountTable;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A simple undirected graph given by its symmetric 0/1 connectivity matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    adjacency: Vec<Vec<bool>>,
}

impl GraphSpec {
    /// Validates symmetry and the zero diagonal.
    pub fn new(adjacency: Vec<Vec<bool>>) -> Result<Self> {
        let v = adjacency.len();
        if v == 0 {
            return Err(Error::Domain("graph needs at least one vertex".to_string()));
        }
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != v {
                return Err(Error::Domain(format!("row {i} has length {} != {v}", row.len())));
            }
            if row[i] {
                return Err(Error::Domain(format!("vertex {i} has a loop")));
            }
            for (j, &a) in row.iter().enumerate() {
                if a != adjacency[j][i] {
                    return Err(Error::Domain(format!("adjacency not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self { adjacency })
    }

    /// Builds a graph from an edge list on vertices `0..v`.
    pub fn from_edges(v: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![vec![false; v]; v];
        for &(a, b) in edges {
            if a >= v || b >= v {
                return Err(Error::Domain(format!("edge ({a}, {b}) outside 0..{v}")));
            }
            adjacency[a][b] = true;
            adjacency[b][a] = true;
        }
        Self::new(adjacency)
    }

    /// The complete graph `K_V`: `C_ij = 1 - δ_ij`.
    pub fn complete(v: usize) -> Self {
        let adjacency = (0..v).map(|i| (0..v).map(|j| i != j).collect()).collect();
        Self::new(adjacency).expect("complete graph is valid")
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn connected(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[i].iter().enumerate().filter(|&(_, &a)| a).map(|(j, _)| j)
    }

    /// Bonds as ordered pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let v = self.order();
        (0..v)
            .flat_map(|i| ((i + 1)..v).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacency[i][j])
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        let v = self.order();
        (0..v).all(|i| (0..v).all(|j| self.adjacency[i][j] == (i != j)))
    }
}

type Matrix = Vec<Vec<BigInt>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let v = a.len();
    let mut out = vec![vec![BigInt::zero(); v]; v];
    for i in 0..v {
        for k in 0..v {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..v {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// `Tr C^n`: the number of closed `n`-step trajectories (with a marked
/// starting point and direction).
pub fn closed_walks(g: &GraphSpec, n: u32) -> BigInt {
    let v = g.order();
    let mut result: Matrix = (0..v)
        .map(|i| (0..v).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut base: Matrix = (0..v)
        .map(|i| (0..v).map(|j| BigInt::from(g.connected(i, j) as u8)).collect())
        .collect();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    (0..v).map(|i| result[i][i].clone()).sum()
}

/// `(V-1)^n + (V-1)(-1)^n`, from the spectrum `{V-1, -1, ..., -1}` of `K_V`.
pub fn closed_walks_complete(n: u32, v: u32) -> BigInt {
    if v == 0 {
        return BigInt::zero();
    }
    let d = BigInt::from(v - 1);
    let lead = num_traits::pow(d.clone(), n as usize);
    if n % 2 == 0 { lead + d } else { lead - d }
}

fn totient(mut k: u32) -> u32 {
    let mut result = k;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            while k % p == 0 {
                k /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if k > 1 {
        result -= result / k;
    }
    result
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0)
}

/// Periodic-orbit count with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCount {
    pub value: BigInt,
    /// Set when `n` is composite and the count comes from the rotation-group
    /// average rather than the plain `N / n`.
    pub extension: bool,
}

/// How orbits are counted at composite `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrbitCounting {
    /// Cyclic-equivalence classes, repetitions included.
    #[default]
    Exact,
    /// `N(n, V) / n` at every `n`, as if `n` were prime.
    Naive,
}

/// Number of `n`-bond periodic orbits on `K_V` (closed walks up to rotation).
///
/// For prime `n` this is `N(n, V) / n`. For composite `n` it is
/// `Σ_{d | n} φ(d) N(n / d, V) / n`, counting repeated orbits once each.
pub fn cyclic_orbit_count(n: u32, v: u32) -> Result<OrbitCount> {
    if n < 2 {
        return Err(Error::Domain(format!("orbit count needs n >= 2, got {n}")));
    }
    let nn = BigInt::from(n);
    if is_prime(n) {
        let walks = closed_walks_complete(n, v);
        let (q, r) = walks.div_rem(&nn);
        if !r.is_zero() {
            return Err(Error::Consistency(format!("N({n}, {v}) = {walks} not divisible by {n}")));
        }
        return Ok(OrbitCount { value: q, extension: false });
    }
    let total: BigInt = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| {
            let len = n / d;
            let fixed = if len == 1 { BigInt::zero() } else { closed_walks_complete(len, v) };
            fixed * totient(d)
        })
        .sum();
    let (q, r) = total.div_rem(&nn);
    if !r.is_zero() {
        return Err(Error::Consistency(format!(
            "rotation average {total} for n={n}, V={v} not divisible by {n}"
        )));
    }
    Ok(OrbitCount { value: q, extension: true })
}

/// `N(n, V) / n` as a rational, regardless of primality.
pub fn naive_orbit_count(n: u32, v: u32) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::Domain(format!("orbit count needs n >= 2, got {n}")));
    }
    Ok(BigRational::new(closed_walks_complete(n, v), BigInt::from(n)))
}

/// Everything known about one `(n, V)` cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCounts {
    pub n: u32,
    pub v: u32,
    pub walks: BigInt,
    pub orbits: BigRational,
    pub classes: BigInt,
    pub extension: bool,
    /// `None` when there are no classes.
    pub mean_degeneracy: Option<BigRational>,
}

impl OrbitCounts {
    /// Assembles a cell from a prebuilt class table covering `(n, V)`.
    pub fn from_table(table: &ClassCountTable, n: u32, v: u32, mode: OrbitCounting) -> Result<Self> {
        let classes = table.count_classes(n as usize, v as usize)?;
        let walks = closed_walks_complete(n, v);
        let (orbits, extension) = match mode {
            OrbitCounting::Exact => {
                let c = cyclic_orbit_count(n, v)?;
                (BigRational::from_integer(c.value), c.extension)
            }
            OrbitCounting::Naive => (naive_orbit_count(n, v)?, false),
        };
        let mean_degeneracy =
            (!classes.is_zero()).then(|| &orbits / BigRational::from_integer(classes.clone()));
        Ok(Self { n, v, walks, orbits, classes, extension, mean_degeneracy })
    }

    pub fn compute(n: u32, v: u32, mode: OrbitCounting) -> Result<Self> {
        if n < 2 || v < 2 {
            return Err(Error::Domain(format!("need n >= 2 and V >= 2, got n={n}, V={v}")));
        }
        let table = ClassCountTable::build(n as usize, v as usize, Default::default())?;
        Self::from_table(&table, n, v, mode)
    }
}

/// `D(n, V)`: periodic orbits per degeneracy class on `K_V`, exactly.
pub fn mean_degeneracy(n: u32, v: u32) -> Result<BigRational> {
    mean_degeneracy_with(n, v, OrbitCounting::Exact)
}

pub fn mean_degeneracy_with(n: u32, v: u32, mode: OrbitCounting) -> Result<BigRational> {
    OrbitCounts::compute(n, v, mode)?
        .mean_degeneracy
        .ok_or(Error::UndefinedDegeneracy { n: n as u64, v: v as u64 })
}
