use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{enumerate_partitions, Partition, PartitionKind};
use crate::error::{Error, Result};

/// A partition-valued function: one partition per color. Colors index the
/// conjugacy classes of Γ or its irreducible characters, depending on context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pvf {
    blocks: Vec<Partition>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PvfKind {
    All,
    /// Every part odd.
    Op,
    /// Every block strict.
    Sp,
    Sp0,
    Sp1,
    /// Odd and strict.
    Osp,
}

impl Pvf {
    pub fn new(blocks: Vec<Partition>) -> Self {
        Pvf { blocks }
    }

    pub fn empty(colors: usize) -> Self {
        Pvf { blocks: vec![Partition::empty(); colors] }
    }

    /// A single partition placed on one color.
    pub fn single(colors: usize, color: usize, shape: Partition) -> Self {
        let mut p = Pvf::empty(colors);
        p.blocks[color] = shape;
        p
    }

    pub fn colors(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Partition] {
        &self.blocks
    }

    pub fn block(&self, color: usize) -> &Partition {
        &self.blocks[color]
    }

    pub fn weight(&self) -> u32 {
        self.blocks.iter().map(Partition::weight).sum()
    }

    pub fn length(&self) -> usize {
        self.blocks.iter().map(Partition::len).sum()
    }

    pub fn parity_degree(&self) -> u32 {
        self.weight() - self.length() as u32
    }

    pub fn is_odd_parity(&self) -> bool {
        self.parity_degree() % 2 == 1
    }

    pub fn is_strict(&self) -> bool {
        self.blocks.iter().all(Partition::is_strict)
    }

    pub fn has_odd_parts(&self) -> bool {
        self.blocks.iter().all(Partition::has_odd_parts)
    }

    pub fn is_in(&self, kind: PvfKind) -> bool {
        match kind {
            PvfKind::All => true,
            PvfKind::Op => self.has_odd_parts(),
            PvfKind::Sp => self.is_strict(),
            PvfKind::Sp0 => self.is_strict() && !self.is_odd_parity(),
            PvfKind::Sp1 => self.is_strict() && self.is_odd_parity(),
            PvfKind::Osp => self.is_strict() && self.has_odd_parts(),
        }
    }

    /// The uncolored partition formed by all parts.
    pub fn shape(&self) -> Partition {
        Partition::from_unsorted(self.blocks.iter().flat_map(|b| b.parts().iter().copied()).collect())
    }

    pub fn colored_parts(&self) -> ColoredCycleList {
        let parts = self
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(color, b)| b.parts().iter().map(move |&length| ColoredPart { length, color }))
            .collect();
        ColoredCycleList::from_parts(parts)
    }

    /// Multiset union of colored parts.
    pub fn union(&self, other: &Pvf) -> Pvf {
        assert_eq!(self.colors(), other.colors());
        Pvf::new(self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.union(b)).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(Partition::is_empty)
    }
}

impl fmt::Display for Pvf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredPart {
    pub length: u32,
    pub color: usize,
}

impl ColoredPart {
    fn canonical_key(&self) -> (std::cmp::Reverse<u32>, usize) {
        (std::cmp::Reverse(self.length), self.color)
    }

    pub fn parity_degree(&self) -> u32 {
        self.length - 1
    }
}

/// Colored cycles in canonical order: length descending, then color ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredCycleList(Vec<ColoredPart>);

impl ColoredCycleList {
    pub fn from_parts(mut parts: Vec<ColoredPart>) -> Self {
        parts.sort_by_key(ColoredPart::canonical_key);
        ColoredCycleList(parts)
    }

    pub fn parts(&self) -> &[ColoredPart] {
        &self.0
    }

    pub fn parity_degree(&self) -> u32 {
        self.0.iter().map(ColoredPart::parity_degree).sum()
    }

    pub fn to_pvf(&self, colors: usize) -> Result<Pvf> {
        let mut blocks = vec![Vec::new(); colors];
        for part in &self.0 {
            if part.color >= colors {
                return Err(Error::ColorOutOfRange { color: part.color, colors });
            }
            blocks[part.color].push(part.length);
        }
        Ok(Pvf::new(blocks.into_iter().map(Partition::from_unsorted).collect()))
    }
}

/// Partition-valued functions of weight `n` over `colors` colors, in
/// descending lexicographic order of (block weights, block partitions).
pub fn enumerate_pvf(n: u32, colors: usize, kind: PvfKind) -> Vec<Pvf> {
    assert!(colors >= 1, "at least one color is required");
    let block_kind = match kind {
        PvfKind::All => PartitionKind::All,
        PvfKind::Op => PartitionKind::Odd,
        PvfKind::Sp | PvfKind::Sp0 | PvfKind::Sp1 => PartitionKind::Strict,
        PvfKind::Osp => PartitionKind::OddStrict,
    };
    let per_weight: Vec<Vec<Partition>> = (0..=n).map(|w| enumerate_partitions(w, block_kind)).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(colors);
    product(n, colors, &per_weight, &mut current, &mut out);
    out.retain(|p| p.is_in(kind));
    out
}

fn product(
    remaining: u32,
    colors: usize,
    per_weight: &[Vec<Partition>],
    current: &mut Vec<Partition>,
    out: &mut Vec<Pvf>,
) {
    if current.len() + 1 == colors {
        for p in &per_weight[remaining as usize] {
            current.push(p.clone());
            out.push(Pvf::new(current.clone()));
            current.pop();
        }
        return;
    }
    for w in (0..=remaining).rev() {
        for p in &per_weight[w as usize] {
            current.push(p.clone());
            product(remaining - w, colors, per_weight, current, out);
            current.pop();
        }
    }
}

/// Centralizer order in Γ_n of an element of type ρ:
/// `∏_c z_{ρ(c)} ζ_c^{l(ρ(c))}`.
pub fn big_z_order(rho: &Pvf, zeta: &[u64]) -> Result<BigUint> {
    if rho.colors() > zeta.len() {
        let bad = (zeta.len()..rho.colors()).find(|&c| !rho.block(c).is_empty());
        if let Some(color) = bad {
            return Err(Error::ColorOutOfRange { color, colors: zeta.len() });
        }
    }
    let mut z = BigUint::one();
    for (c, block) in rho.blocks().iter().enumerate() {
        if block.is_empty() {
            continue;
        }
        z *= block.z_order();
        z *= BigUint::from(zeta[c]).pow(block.len() as u32);
    }
    Ok(z)
}
