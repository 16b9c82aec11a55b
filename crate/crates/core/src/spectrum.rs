//! The degenerate length spectrum.
//!
//! With rationally independent bond lengths `L_b`, an orbit of class `q` has
//! length `Σ_b q_b L_b` and two orbits share a length exactly when they share
//! a class. Distinct spectrum lines are therefore decided on codes; the
//! numeric lengths are only for presentation and ordering.

use crate::decimal::{format_significant, HIGH_DIGITS};
use crate::error::{Error, Result};
use crate::oracle::{self, ClassCode, EnumerationCaps};
use crate::walks::GraphSpec;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Fractional decimal digits kept in every generated bond length.
pub const LENGTH_DIGITS: u32 = 60;
/// Random bits in the fractional part of a uniformly drawn length.
const RANDOM_BITS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthScheme {
    /// `L = sqrt(p_k)` for the `k`-th prime, bonds in lexicographic order.
    SqrtPrimes,
    /// `L` uniform in `(1, 2)` from a seeded generator.
    UniformRandom { seed: u64 },
}

/// Positive bond lengths, one per unordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BondLengthAssignment {
    lengths: BTreeMap<(usize, usize), BigRational>,
    /// Spectrum lines are told apart by integer codes, never by length values.
    pub symbolic: bool,
}

impl BondLengthAssignment {
    pub fn new(lengths: BTreeMap<(usize, usize), BigRational>) -> Result<Self> {
        let mut normalized = BTreeMap::new();
        for ((i, j), l) in lengths {
            if i == j {
                return Err(Error::Domain(format!("bond ({i}, {j}) is a loop")));
            }
            if l <= BigRational::zero() {
                return Err(Error::Domain(format!("bond ({i}, {j}) has length {l} <= 0")));
            }
            normalized.insert((i.min(j), i.max(j)), l);
        }
        Ok(Self { lengths: normalized, symbolic: true })
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&BigRational> {
        self.lengths.get(&(i.min(j), i.max(j)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.lengths.iter()
    }
}

fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut k = 2u64;
    while out.len() < count {
        if out.iter().take_while(|&&p| p * p <= k).all(|&p| k % p != 0) {
            out.push(k);
        }
        k += 1;
    }
    out
}

/// `floor(sqrt(p) · 10^LENGTH_DIGITS) / 10^LENGTH_DIGITS`.
fn sqrt_approx(p: u64) -> BigRational {
    let scale = num_traits::pow(BigInt::from(10u32), LENGTH_DIGITS as usize);
    let root = (BigInt::from(p) * &scale * &scale).sqrt();
    BigRational::new(root, scale)
}

fn uniform_in_one_two(rng: &mut ChaCha8Rng) -> BigRational {
    let words = RANDOM_BITS.div_ceil(64);
    let mut bits = BigUint::zero();
    for _ in 0..words {
        bits = (bits << 64) | BigUint::from(rng.next_u64());
    }
    bits >>= words * 64 - RANDOM_BITS;
    // open interval: the all-zero draw would give exactly 1
    if bits.is_zero() {
        bits = BigUint::one();
    }
    BigRational::one() + BigRational::new(BigInt::from(bits), BigInt::one() << RANDOM_BITS)
}

/// Lengths for every bond of `K_V`.
pub fn default_lengths(v: usize, scheme: LengthScheme) -> Result<BondLengthAssignment> {
    if v < 2 {
        return Err(Error::Domain(format!("need V >= 2 for bond lengths, got {v}")));
    }
    let bonds = GraphSpec::complete(v).bonds();
    let lengths = match scheme {
        LengthScheme::SqrtPrimes => bonds
            .into_iter()
            .zip(primes(v * (v - 1) / 2))
            .map(|(b, p)| (b, sqrt_approx(p)))
            .collect(),
        LengthScheme::UniformRandom { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            bonds
                .into_iter()
                .map(|b| (b, uniform_in_one_two(&mut rng)))
                .collect()
        }
    };
    BondLengthAssignment::new(lengths)
}

/// `Σ_b q_b L_b`.
pub fn length_of(code: &ClassCode, a: &BondLengthAssignment) -> Result<BigRational> {
    code.triples().try_fold(BigRational::zero(), |acc, (i, j, q)| {
        let l = a.get(i, j).ok_or(Error::MissingBondLength(i, j))?;
        Ok(acc + l * BigRational::from_integer(q.into()))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub period: usize,
    pub code: ClassCode,
    pub length: BigRational,
    pub degeneracy: usize,
}

/// Every class of period `2..=n_max` on `g`, sorted by length, ties by code.
pub fn build_spectrum(
    g: &GraphSpec,
    n_max: usize,
    a: &BondLengthAssignment,
    caps: &EnumerationCaps,
) -> Result<Vec<SpectrumEntry>> {
    caps.check(n_max, g.order())?;
    let mut entries = Vec::new();
    for period in 2..=n_max {
        let orbits = oracle::enumerate_orbits(g, period, caps)?;
        for (code, degeneracy) in oracle::group_by_class(&orbits) {
            let length = length_of(&code, a)?;
            entries.push(SpectrumEntry { period, code, length, degeneracy });
        }
    }
    entries.sort_by(|x, y| x.length.cmp(&y.length).then_with(|| x.code.cmp(&y.code)));
    Ok(entries)
}

/// Code as sorted `[i, j, q]` triples with 1-based vertex labels.
pub fn code_triples_one_based(code: &ClassCode) -> Vec<[u64; 3]> {
    code.triples()
        .map(|(i, j, q)| [i as u64 + 1, j as u64 + 1, q as u64])
        .collect()
}

#[derive(Serialize)]
struct EntryRecord {
    period: usize,
    code: Vec<[u64; 3]>,
    length: String,
    degeneracy: usize,
}

/// One JSON object per line: `period`, `code`, `length`, `degeneracy`.
pub fn to_json_lines(entries: &[SpectrumEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        let record = EntryRecord {
            period: e.period,
            code: code_triples_one_based(&e.code),
            length: format_significant(&e.length, HIGH_DIGITS),
            degeneracy: e.degeneracy,
        };
        out.push_str(&serde_json::to_string(&record).expect("serializable"));
        out.push('\n');
    }
    out
}

/// `period,length,degeneracy` with a header row.
pub fn to_csv(entries: &[SpectrumEntry]) -> String {
    let mut out = String::from("period,length,degeneracy\n");
    for e in entries {
        let _ = writeln!(
            out,
            "{},{},{}",
            e.period,
            format_significant(&e.length, HIGH_DIGITS),
            e.degeneracy
        );
    }
    out
}
