use std::collections::BTreeSet;

use super::{ColoredCycleList, ColoredPart, Partition, Pvf};
use crate::error::{Error, Result};

/// All recolorings of a strict shape: each part independently receives one of
/// `num_colors` colors. There are `num_colors^{l(shape)}` of them.
pub fn colorings_of_shape(shape: &Partition, num_colors: usize) -> Result<Vec<Pvf>> {
    if !shape.is_strict() {
        return Err(Error::NotStrict(shape.to_string()));
    }
    let parts = shape.parts();
    let mut out = Vec::new();
    let mut assignment = vec![0usize; parts.len()];
    loop {
        let mut blocks = vec![Vec::new(); num_colors];
        for (&part, &color) in parts.iter().zip(&assignment) {
            blocks[color].push(part);
        }
        out.push(Pvf::new(blocks.into_iter().map(Partition::from_unsorted).collect()));
        // odometer, last part fastest
        let mut i = parts.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < num_colors {
                break;
            }
            assignment[i] = 0;
        }
    }
}

/// The set `[ν]` for a strict partition-valued function ν over the
/// characters: one recolored partition-valued function per block.
pub fn colorings(nu: &Pvf, num_colors: usize) -> Result<Vec<Vec<Pvf>>> {
    let per_block =
        nu.blocks().iter().map(|shape| colorings_of_shape(shape, num_colors)).collect::<Result<Vec<_>>>()?;
    let mut out: Vec<Vec<Pvf>> = vec![Vec::new()];
    for options in per_block {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for opt in &options {
                let mut v = prefix.clone();
                v.push(opt.clone());
                next.push(v);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Constraint on one block of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockConstraint {
    /// The block must be a recoloring of this strict shape.
    Colorings(Partition),
    /// Odd and strict, of the given weight.
    OddStrict(u32),
    /// Every part odd, of the given weight.
    Odd(u32),
    /// Strict, of the given weight.
    Strict(u32),
    /// Any block of the given weight.
    Any(u32),
    Empty,
}

impl BlockConstraint {
    pub fn weight(&self) -> u32 {
        match self {
            BlockConstraint::Colorings(shape) => shape.weight(),
            BlockConstraint::OddStrict(w)
            | BlockConstraint::Odd(w)
            | BlockConstraint::Strict(w)
            | BlockConstraint::Any(w) => *w,
            BlockConstraint::Empty => 0,
        }
    }
}

/// All ways to split the colored parts of ρ into ordered blocks satisfying
/// the constraints. Each result is a distinct tuple of partition-valued
/// functions whose union is ρ.
pub fn decompositions(rho: &Pvf, constraints: &[BlockConstraint]) -> Vec<Vec<Pvf>> {
    let total: u32 = constraints.iter().map(BlockConstraint::weight).sum();
    if total != rho.weight() {
        return Vec::new();
    }
    let colors = rho.colors();
    let distinct: Vec<ColoredPart> =
        rho.colored_parts().parts().iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut counts: Vec<u32> =
        distinct.iter().map(|d| rho.colored_parts().parts().iter().filter(|p| *p == d).count() as u32).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(constraints.len());
    let ctx = Ctx { colors, distinct: &distinct, constraints };
    ctx.recurse(0, &mut counts, &mut current, &mut out);
    out
}

impl PartialOrd for ColoredPart {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ColoredPart {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.length.cmp(&self.length).then(self.color.cmp(&other.color))
    }
}

struct Ctx<'a> {
    colors: usize,
    distinct: &'a [ColoredPart],
    constraints: &'a [BlockConstraint],
}

impl Ctx<'_> {
    fn recurse(&self, block: usize, counts: &mut Vec<u32>, current: &mut Vec<Pvf>, out: &mut Vec<Vec<Pvf>>) {
        if block == self.constraints.len() {
            if counts.iter().all(|&c| c == 0) {
                out.push(current.clone());
            }
            return;
        }
        for take in self.candidates(&self.constraints[block], counts) {
            for (c, t) in counts.iter_mut().zip(&take) {
                *c -= t;
            }
            current.push(self.to_pvf(&take));
            self.recurse(block + 1, counts, current, out);
            current.pop();
            for (c, t) in counts.iter_mut().zip(&take) {
                *c += t;
            }
        }
    }

    fn to_pvf(&self, take: &[u32]) -> Pvf {
        let mut blocks = vec![Vec::new(); self.colors];
        for (part, &t) in self.distinct.iter().zip(take) {
            for _ in 0..t {
                blocks[part.color].push(part.length);
            }
        }
        Pvf::new(blocks.into_iter().map(Partition::from_unsorted).collect())
    }

    /// Sub-multisets (as count vectors over `distinct`) allowed for one block.
    fn candidates(&self, constraint: &BlockConstraint, available: &[u32]) -> Vec<Vec<u32>> {
        match constraint {
            BlockConstraint::Empty => vec![vec![0; available.len()]],
            BlockConstraint::Colorings(shape) => {
                let Ok(options) = colorings_of_shape(shape, self.colors) else {
                    return Vec::new();
                };
                options
                    .into_iter()
                    .filter_map(|opt| {
                        let mut take = vec![0u32; available.len()];
                        for part in opt.colored_parts().parts() {
                            let idx = self.distinct.iter().position(|d| d == part)?;
                            take[idx] += 1;
                        }
                        take.iter().zip(available).all(|(t, a)| t <= a).then_some(take)
                    })
                    .collect()
            }
            BlockConstraint::OddStrict(w)
            | BlockConstraint::Odd(w)
            | BlockConstraint::Strict(w)
            | BlockConstraint::Any(w) => {
                let strict = matches!(constraint, BlockConstraint::OddStrict(_) | BlockConstraint::Strict(_));
                let odd = matches!(constraint, BlockConstraint::OddStrict(_) | BlockConstraint::Odd(_));
                let limits: Vec<u32> = self
                    .distinct
                    .iter()
                    .zip(available)
                    .map(|(part, &a)| {
                        if odd && part.length % 2 == 0 {
                            0
                        } else if strict {
                            a.min(1)
                        } else {
                            a
                        }
                    })
                    .collect();
                let mut out = Vec::new();
                let mut take = vec![0u32; available.len()];
                sub_multisets(self.distinct, &limits, 0, *w, &mut take, &mut out);
                out
            }
        }
    }
}

fn sub_multisets(
    distinct: &[ColoredPart],
    limits: &[u32],
    idx: usize,
    remaining: u32,
    take: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if remaining == 0 {
        out.push(take.clone());
        return;
    }
    if idx == distinct.len() {
        return;
    }
    let len = distinct[idx].length;
    let max = limits[idx].min(remaining / len);
    for t in (0..=max).rev() {
        take[idx] = t;
        sub_multisets(distinct, limits, idx + 1, remaining - t * len, take, out);
    }
    take[idx] = 0;
}

/// Exponent of z picked up when two products of disjoint cycle lifts are
/// swapped: `d(a)·d(b) mod 2`.
pub fn reorder_sign(a: &ColoredCycleList, b: &ColoredCycleList) -> u8 {
    ((a.parity_degree() % 2) * (b.parity_degree() % 2)) as u8
}

/// As [`reorder_sign`] for explicit cycles on points; rejects overlapping supports.
pub fn reorder_sign_cycles(a: &[Vec<usize>], b: &[Vec<usize>]) -> Result<u8> {
    let support: BTreeSet<usize> = a.iter().flatten().copied().collect();
    if let Some(&point) = b.iter().flatten().find(|p| support.contains(p)) {
        return Err(Error::OverlappingSupports(point));
    }
    let d = |cs: &[Vec<usize>]| cs.iter().map(|c| c.len().saturating_sub(1)).sum::<usize>() % 2;
    Ok((d(a) * d(b)) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn pvf(blocks: &[&[u32]]) -> Pvf {
        Pvf::new(blocks.iter().map(|b| p(b)).collect())
    }

    #[test]
    fn coloring_counts() {
        assert_eq!(colorings_of_shape(&p(&[2, 1]), 2).unwrap().len(), 4);
        assert_eq!(colorings_of_shape(&p(&[1]), 3).unwrap().len(), 3);
        assert_eq!(colorings(&Pvf::new(vec![]), 3).unwrap(), vec![Vec::<Pvf>::new()]);
        assert_eq!(colorings(&pvf(&[&[]]), 3).unwrap().len(), 1);
        assert!(matches!(colorings_of_shape(&p(&[1, 1]), 2), Err(Error::NotStrict(_))));
    }

    #[test]
    fn colorings_are_distinct() {
        let all = colorings(&pvf(&[&[3, 1], &[2]]), 3).unwrap();
        assert_eq!(all.len(), 27);
        let set: BTreeSet<_> = all.iter().collect();
        assert_eq!(set.len(), 27);
    }

    #[test]
    fn forced_decomposition() {
        let rho = pvf(&[&[2], &[1]]);
        let got = decompositions(&rho, &[BlockConstraint::Colorings(p(&[2])), BlockConstraint::OddStrict(1)]);
        assert_eq!(got, vec![vec![pvf(&[&[2], &[]]), pvf(&[&[], &[1]])]]);
    }

    #[test]
    fn impossible_decomposition() {
        let rho = pvf(&[&[3], &[1]]);
        let got = decompositions(&rho, &[BlockConstraint::Colorings(p(&[2])), BlockConstraint::OddStrict(2)]);
        assert!(got.is_empty());
    }

    #[test]
    fn three_equal_shapes_on_distinct_colors() {
        let rho = pvf(&[&[2], &[2], &[2]]);
        let c = BlockConstraint::Colorings(p(&[2]));
        let got = decompositions(&rho, &[c.clone(), c.clone(), c]);
        assert_eq!(got.len(), 6);
    }

    #[test]
    fn repeated_parts_give_distinct_tuples_only() {
        let rho = pvf(&[&[1, 1, 1]]);
        let got = decompositions(&rho, &[BlockConstraint::Odd(2), BlockConstraint::Odd(1)]);
        assert_eq!(got, vec![vec![pvf(&[&[1, 1]]), pvf(&[&[1]])]]);
        let got = decompositions(&pvf(&[&[1, 1], &[1]]), &[BlockConstraint::Odd(2), BlockConstraint::Odd(1)]);
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn empty_blocks() {
        let rho = pvf(&[&[2, 1]]);
        let got = decompositions(&rho, &[BlockConstraint::Empty, BlockConstraint::Strict(3)]);
        assert_eq!(got, vec![vec![pvf(&[&[]]), rho.clone()]]);
        assert!(decompositions(&rho, &[BlockConstraint::OddStrict(3)]).is_empty());
    }

    #[test]
    fn reorder_signs() {
        assert_eq!(reorder_sign_cycles(&[vec![1, 2]], &[vec![3, 4]]).unwrap(), 1);
        assert_eq!(reorder_sign_cycles(&[vec![1, 2, 3]], &[vec![4, 5]]).unwrap(), 0);
        assert_eq!(reorder_sign_cycles(&[vec![1, 2]], &[vec![3, 4, 5], vec![6, 7]]).unwrap(), 1);
        assert!(matches!(reorder_sign_cycles(&[vec![1, 2]], &[vec![2, 3]]), Err(Error::OverlappingSupports(2))));
        let a = pvf(&[&[2]]).colored_parts();
        let b = pvf(&[&[3]]).colored_parts();
        assert_eq!(reorder_sign(&a, &a), 1);
        assert_eq!(reorder_sign(&a, &b), 0);
    }
}
