//! Partitions, exponent vectors and the counting functions built on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatoricsError {
    #[error("partitions are only defined for d >= 1")]
    ZeroDegree,
    #[error("invalid partition `{0}`: expected comma-separated positive integers")]
    BadPartition(String),
    #[error("vector {vector:?} has weight {weight}, expected {expected}")]
    WrongWeight {
        vector: Vec<u32>,
        weight: u32,
        expected: u32,
    },
}

/// A partition of `d`, stored with parts in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, CombinatoricsError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(CombinatoricsError::BadPartition(format!("{parts:?}")));
        }
        parts.sort_unstable();
        Ok(Self { parts })
    }

    /// Parts `k1 <= ... <= ks`.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Frequency `μ(q)` of each part `q`.
    pub fn frequencies(&self) -> BTreeMap<u32, u32> {
        let mut f = BTreeMap::new();
        for &p in &self.parts {
            *f.entry(p).or_insert(0) += 1;
        }
        f
    }

    pub fn frequency(&self, q: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == q).count() as u32
    }
}

impl fmt::Display for Partition {
    /// Parts in descending order, e.g. `{3,1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().rev().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = CombinatoricsError;

    /// Accepts `1,2`, `{2,1}` or `2 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CombinatoricsError::BadPartition(s.to_string());
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts).map_err(|_| bad())
    }
}

/// A vector in `ℕⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinate sum `|v|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Multiset of nonzero entries as a partition (`None` for the zero vector).
    pub fn support_partition(&self) -> Option<Partition> {
        let parts: Vec<u32> = self.0.iter().copied().filter(|&x| x > 0).collect();
        Partition::new(parts).ok()
    }

    pub fn checked_weight(&self, expected: u32) -> Result<(), CombinatoricsError> {
        let weight = self.weight();
        if weight == expected {
            Ok(())
        } else {
            Err(CombinatoricsError::WrongWeight {
                vector: self.0.clone(),
                weight,
                expected,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Coordinate difference as signed integers.
    pub fn difference(&self, other: &Self) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `d`, ordered by largest part descending, then
/// lexicographically on the descending part list: for `d = 4` this is
/// `{4},{3,1},{2,2},{2,1,1},{1,1,1,1}`.
pub fn partitions_of(d: u32) -> Result<Vec<Partition>, CombinatoricsError> {
    if d == 0 {
        return Err(CombinatoricsError::ZeroDegree);
    }
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::new(prefix.clone()).expect("nonempty positive parts"));
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            prefix.push(k);
            go(rest - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    Ok(out)
}

/// `ℕⁿ(μ)`: all vectors whose nonzero entries form the multiset `μ`, in
/// ascending lexicographic order. Empty when `μ` has more than `n` parts.
pub fn vectors_with_support(mu: &Partition, n: usize) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    if mu.len() > n {
        return out;
    }
    let mut remaining = mu.frequencies();
    fn go(
        slot: usize,
        n: usize,
        left: usize,
        remaining: &mut BTreeMap<u32, u32>,
        current: &mut Vec<u32>,
        out: &mut Vec<ExponentVector>,
    ) {
        if slot == n {
            if left == 0 {
                out.push(ExponentVector(current.clone()));
            }
            return;
        }
        // Not enough slots left for the parts still to place.
        if n - slot < left {
            return;
        }
        current.push(0);
        go(slot + 1, n, left, remaining, current, out);
        current.pop();
        let keys: Vec<u32> = remaining.keys().copied().collect();
        for q in keys {
            if remaining[&q] == 0 {
                continue;
            }
            *remaining.get_mut(&q).expect("key present") -= 1;
            current.push(q);
            go(slot + 1, n, left - 1, remaining, current, out);
            current.pop();
            *remaining.get_mut(&q).expect("key present") += 1;
        }
    }
    go(0, n, mu.len(), &mut remaining, &mut Vec::new(), &mut out);
    out
}

/// `ℕⁿ(q)`: all vectors of coordinate sum `q`, in descending lexicographic
/// order (`(q,0,..,0)` first).
pub fn vectors_of_weight(q: u32, n: usize) -> Vec<ExponentVector> {
    fn go(rest: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if slots == 1 {
            current.push(rest);
            out.push(ExponentVector(current.clone()));
            current.pop();
            return;
        }
        for k in (0..=rest).rev() {
            current.push(k);
            go(rest - k, slots - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if q == 0 {
            out.push(ExponentVector(Vec::new()));
        }
        return out;
    }
    go(q, n, &mut Vec::new(), &mut out);
    out
}

/// Degree of the product map for `μ`: `∏_q μ(q)!`.
pub fn product_map_degree(mu: &Partition) -> u64 {
    mu.frequencies()
        .values()
        .map(|&f| (1..=f as u64).product::<u64>())
        .product()
}

/// `binom(a, b)` as an arbitrary-precision integer.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::from(0u32);
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// Dimension of the space of degree-`d` forms in `n` variables,
/// `binom(n + d - 1, d)`.
pub fn dim_w(n: u64, d: u64) -> u64 {
    binomial(n + d - 1, d)
        .to_u64()
        .expect("dimension fits in u64")
}
