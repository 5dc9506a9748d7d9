//! Partitions, partition-valued functions, and the combinatorics the
//! character formulas run on.
//!
//! Every enumerator returns its results in lexicographically descending
//! order so that tables and golden files are stable.

mod pvf;
mod split;

pub use pvf::{big_z_order, enumerate_pvf, ColoredCycleList, ColoredPart, Pvf, PvfKind};
pub use split::{colorings, colorings_of_shape, decompositions, reorder_sign, reorder_sign_cycles, BlockConstraint};

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts; zeros are dropped.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|λ| - l(λ)`.
    pub fn parity_degree(&self) -> u32 {
        self.weight() - self.0.len() as u32
    }

    pub fn is_odd_parity(&self) -> bool {
        self.parity_degree() % 2 == 1
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// All parts odd.
    pub fn has_odd_parts(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 1)
    }

    pub fn matches(&self, kind: PartitionKind) -> bool {
        match kind {
            PartitionKind::All => true,
            PartitionKind::Strict => self.is_strict(),
            PartitionKind::Odd => self.has_odd_parts(),
            PartitionKind::OddStrict => self.is_strict() && self.has_odd_parts(),
        }
    }

    /// Pairs `(part, multiplicity)` in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Product of the parts.
    pub fn part_product(&self) -> BigUint {
        self.0.iter().fold(BigUint::one(), |acc, &p| acc * p)
    }

    /// Order of the centralizer of a permutation of this cycle type:
    /// `∏ i^{m_i} m_i!`.
    pub fn z_order(&self) -> BigUint {
        let mut z = BigUint::one();
        for (part, mult) in self.multiplicities() {
            for k in 1..=mult {
                z *= part;
                z *= k;
            }
        }
        z
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionKind {
    All,
    Strict,
    Odd,
    OddStrict,
}

/// All partitions of `n` of the given kind, lexicographically descending.
pub fn enumerate_partitions(n: u32, kind: PartitionKind) -> Vec<Partition> {
    let strict = matches!(kind, PartitionKind::Strict | PartitionKind::OddStrict);
    let odd = matches!(kind, PartitionKind::Odd | PartitionKind::OddStrict);
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, strict, odd, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, strict: bool, odd: bool, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    let mut part = max_part.min(remaining);
    while part >= 1 {
        if !odd || part % 2 == 1 {
            current.push(part);
            let next_max = if strict { part - 1 } else { part };
            fill(remaining - part, next_max, strict, odd, current, out);
            current.pop();
        }
        part -= 1;
    }
}
