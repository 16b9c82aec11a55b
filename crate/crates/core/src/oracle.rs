//! Brute-force ground truth on small graphs.
//!
//! Periodic orbits are enumerated directly as closed walks, reduced to a
//! canonical rotation, and grouped by their bond-multiplicity code. Connected
//! even multigraphs are enumerated separately by integer compositions over
//! the host bonds. Neither path touches the generating functions.
//!
//! Vertices are `0..V` internally; serialized forms add one.

use crate::error::{Error, Result};
use crate::walks::GraphSpec;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// Size limits for brute-force enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCaps {
    pub n_cap: usize,
    pub v_cap: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        Self { n_cap: 12, v_cap: 6 }
    }
}

impl EnumerationCaps {
    pub fn check(&self, n: usize, v: usize) -> Result<()> {
        if n > self.n_cap {
            return Err(Error::CapExceeded { what: "n", value: n as u64, cap: self.n_cap as u64 });
        }
        if v > self.v_cap {
            return Err(Error::CapExceeded { what: "V", value: v as u64, cap: self.v_cap as u64 });
        }
        Ok(())
    }
}

/// A periodic orbit in canonical form: the lexicographically smallest
/// rotation of its vertex sequence. The closing step back to the first
/// vertex is implicit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitRep(Vec<usize>);

impl OrbitRep {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The same orbit traversed backwards, canonicalized.
    pub fn reversed(&self) -> OrbitRep {
        let mut rev = self.0.clone();
        rev.reverse();
        canonical_cyclic(&rev).expect("nonempty")
    }
}

fn is_min_rotation(seq: &[usize]) -> bool {
    let n = seq.len();
    (1..n).all(|k| {
        let rotated = seq[k..].iter().chain(&seq[..k]);
        seq.iter().cmp(rotated) != std::cmp::Ordering::Greater
    })
}

/// Lexicographically minimal rotation of `seq`.
pub fn canonical_cyclic(seq: &[usize]) -> Result<OrbitRep> {
    if seq.is_empty() {
        return Err(Error::Domain("cannot canonicalize an empty sequence".to_string()));
    }
    let n = seq.len();
    let best = (0..n)
        .min_by(|&a, &b| {
            let ra = seq[a..].iter().chain(&seq[..a]);
            let rb = seq[b..].iter().chain(&seq[..b]);
            ra.cmp(rb)
        })
        .expect("nonempty");
    let mut out = seq[best..].to_vec();
    out.extend_from_slice(&seq[..best]);
    Ok(OrbitRep(out))
}

/// Bond multiplicities `q_(i,j)`, `i < j`, of a degeneracy class.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassCode {
    multiplicities: BTreeMap<(usize, usize), u32>,
}

impl ClassCode {
    /// Builds a code from `(i, j, q)` triples; pairs are normalized to `i < j`
    /// and repeated pairs accumulate. Zero multiplicities are dropped.
    pub fn from_triples(triples: &[(usize, usize, u32)]) -> Result<Self> {
        let mut code = Self::default();
        for &(i, j, q) in triples {
            if i == j {
                return Err(Error::Domain(format!("bond ({i}, {j}) is a loop")));
            }
            if q > 0 {
                *code.multiplicities.entry((i.min(j), i.max(j))).or_insert(0) += q;
            }
        }
        Ok(code)
    }

    /// Total number of traversed bonds `n = Σ q`.
    pub fn order(&self) -> u32 {
        self.multiplicities.values().sum()
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.multiplicities.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    /// `(i, j, q)` with `i < j`, sorted.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.multiplicities.iter().map(|(&(i, j), &q)| (i, j, q))
    }

    /// Vertices touched by a positive multiplicity, sorted.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.multiplicities.keys().flat_map(|&(i, j)| [i, j]).collect()
    }

    pub fn valency(&self, vertex: usize) -> u32 {
        self.triples()
            .filter(|&(i, j, _)| i == vertex || j == vertex)
            .map(|(_, _, q)| q)
            .sum()
    }

    pub fn is_even(&self) -> bool {
        self.vertices().into_iter().all(|x| self.valency(x) % 2 == 0)
    }

    pub fn is_connected(&self) -> bool {
        let verts = self.vertices();
        let Some(&start) = verts.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for (i, j, _) in self.triples() {
                let other = if i == x { j } else if j == x { i } else { continue };
                if seen.insert(other) {
                    stack.push(other);
                }
            }
        }
        seen.len() == verts.len()
    }
}

/// Multiplicities of the unordered bonds an orbit traverses.
pub fn class_code_of(orbit: &OrbitRep) -> ClassCode {
    let v = orbit.vertices();
    let n = v.len();
    let mut code = ClassCode::default();
    for k in 0..n {
        let (a, b) = (v[k], v[(k + 1) % n]);
        *code.multiplicities.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    }
    code
}

fn extend_walks(
    g: &GraphSpec,
    n: usize,
    seq: &mut Vec<usize>,
    out: &mut Vec<OrbitRep>,
) {
    let start = seq[0];
    let last = *seq.last().expect("nonempty");
    if seq.len() == n {
        if g.connected(last, start) && is_min_rotation(seq) {
            out.push(OrbitRep(seq.clone()));
        }
        return;
    }
    // a canonical rotation starts at its smallest vertex
    for next in g.neighbors(last).filter(|&x| x >= start) {
        seq.push(next);
        extend_walks(g, n, seq, out);
        seq.pop();
    }
}

/// All distinct periodic orbits of period `n` on `g`, sorted.
///
/// Each orbit is produced exactly once, from the walk that already is its
/// canonical rotation; the search is sharded by starting vertex.
pub fn enumerate_orbits(g: &GraphSpec, n: usize, caps: &EnumerationCaps) -> Result<Vec<OrbitRep>> {
    if n < 2 {
        return Err(Error::Domain(format!("orbits need n >= 2, got {n}")));
    }
    caps.check(n, g.order())?;
    let mut orbits: Vec<OrbitRep> = (0..g.order())
        .into_par_iter()
        .flat_map_iter(|start| {
            let mut out = Vec::new();
            let mut seq = Vec::with_capacity(n);
            seq.push(start);
            extend_walks(g, n, &mut seq, &mut out);
            out
        })
        .collect();
    orbits.sort();
    Ok(orbits)
}

/// One degeneracy class as seen by the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup {
    pub degeneracy: usize,
    /// Smallest canonical orbit of the class.
    pub example: OrbitRep,
}

/// Partitions orbits by code; values are the class degeneracies.
pub fn group_by_class(orbits: &[OrbitRep]) -> BTreeMap<ClassCode, usize> {
    let mut out = BTreeMap::new();
    for o in orbits {
        *out.entry(class_code_of(o)).or_insert(0) += 1;
    }
    out
}

/// Like [`group_by_class`], keeping the smallest orbit of each class.
pub fn group_with_examples(orbits: &[OrbitRep]) -> BTreeMap<ClassCode, ClassGroup> {
    let mut out: BTreeMap<ClassCode, ClassGroup> = BTreeMap::new();
    for o in orbits {
        out.entry(class_code_of(o))
            .and_modify(|g| {
                g.degeneracy += 1;
                if *o < g.example {
                    g.example = o.clone();
                }
            })
            .or_insert_with(|| ClassGroup { degeneracy: 1, example: o.clone() });
    }
    out
}

fn combinations(pool: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, pool: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..pool {
            if pool - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, pool, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, pool, k, &mut Vec::with_capacity(k), &mut out);
    out
}

struct CompositionSearch<'a> {
    bonds: &'a [(usize, usize)],
    /// vertices whose last incident bond has index `i`
    closing: Vec<Vec<usize>>,
    degree: BTreeMap<usize, u32>,
    assigned: Vec<u32>,
    out: &'a mut BTreeSet<ClassCode>,
}

impl CompositionSearch<'_> {
    fn run(&mut self, idx: usize, remaining: u32) {
        if idx == self.bonds.len() {
            if remaining == 0 {
                let triples: Vec<_> = self
                    .bonds
                    .iter()
                    .zip(&self.assigned)
                    .map(|(&(i, j), &q)| (i, j, q))
                    .collect();
                let code = ClassCode::from_triples(&triples).expect("no loops");
                if code.is_connected() {
                    self.out.insert(code);
                }
            }
            return;
        }
        let (a, b) = self.bonds[idx];
        let last = idx + 1 == self.bonds.len();
        let range = if last { remaining..=remaining } else { 0..=remaining };
        for q in range {
            self.assigned[idx] = q;
            *self.degree.get_mut(&a).expect("vertex") += q;
            *self.degree.get_mut(&b).expect("vertex") += q;
            let ok = self.closing[idx].iter().all(|x| {
                let d = self.degree[x];
                d > 0 && d % 2 == 0
            });
            if ok {
                self.run(idx + 1, remaining - q);
            }
            *self.degree.get_mut(&a).expect("vertex") -= q;
            *self.degree.get_mut(&b).expect("vertex") -= q;
        }
        self.assigned[idx] = 0;
    }
}

/// All connected even multigraphs with `n` bonds embedded in `host` that use
/// exactly `v` of its vertices, as class codes.
///
/// On `K_V` the result has `C(V, v) · ncv(n, v)` elements.
pub fn enumerate_even_connected(
    n: usize,
    v: usize,
    host: &GraphSpec,
    caps: &EnumerationCaps,
) -> Result<BTreeSet<ClassCode>> {
    caps.check(n, v)?;
    let mut out = BTreeSet::new();
    if v == 0 || v > host.order() || n == 0 {
        return Ok(out);
    }
    for subset in combinations(host.order(), v) {
        let bonds: Vec<(usize, usize)> = host
            .bonds()
            .into_iter()
            .filter(|(i, j)| subset.contains(i) && subset.contains(j))
            .collect();
        let mut closing = vec![Vec::new(); bonds.len()];
        let mut isolated = false;
        for &x in &subset {
            match bonds.iter().rposition(|&(i, j)| i == x || j == x) {
                Some(p) => closing[p].push(x),
                None => isolated = true,
            }
        }
        if isolated {
            continue;
        }
        let mut search = CompositionSearch {
            bonds: &bonds,
            closing,
            degree: subset.iter().map(|&x| (x, 0)).collect(),
            assigned: vec![0; bonds.len()],
            out: &mut out,
        };
        search.run(0, n as u32);
    }
    Ok(out)
}
