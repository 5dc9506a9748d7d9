//! Spin characters of Γ̃_n = Γ^n ⋊ S̃_n.
//!
//! Rows are indexed by strict partition-valued functions λ on the characters
//! of Γ (an associate pair when d(λ) is odd); columns by the classes ρ on the
//! conjugacy classes of Γ that split in the double cover, i.e. ρ odd or ρ
//! strict with d(ρ) odd. Each value is computed by inducing Schur's starred
//! product of the block characters γ^{⊗|λ_γ|} ⊗ Δ_{λ_γ} from the Young-type
//! subgroup ∏_γ Γ̃_{|λ_γ|}.

mod checks;
mod table;

pub use checks::{run_checks, support_exists, CheckOutcome, CheckReport, ColorProductFlag};
pub use table::{full_table, ClassSubset, SpinTable};

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloNumber, RadicalValue};
use crate::error::{Error, Result};
use crate::gamma::GroupData;
use crate::partitions::{
    big_z_order, decompositions, enumerate_partitions, enumerate_pvf, reorder_sign, BlockConstraint, ColoredCycleList,
    ColoredPart, Partition, PartitionKind, Pvf, PvfKind,
};
use crate::qfunctions::{q_poly, PowerSumPoly};
use crate::spin_sym::delta_value_with;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ClassKind {
    /// Every part odd.
    Op,
    /// Strict with d(ρ) odd.
    Sp1,
}

/// A split class D⁺_ρ. The other half D⁻_ρ = z·D⁺_ρ is implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitClassLabel {
    pub rho: Pvf,
    pub kind: ClassKind,
    /// Z_ρ, the centralizer order in Γ_n.
    pub z: BigUint,
    /// Z̃_ρ = 2 Z_ρ.
    pub z_tilde: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpinRowLabel {
    pub lambda: Pvf,
    /// Meaningful only when d(λ) is odd.
    pub associate: bool,
}

impl SpinRowLabel {
    /// J_λ: characters whose block is nonempty with odd d.
    pub fn j_set(&self) -> Vec<usize> {
        j_set(&self.lambda)
    }
}

impl fmt::Display for SpinRowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.lambda, if self.associate { "'" } else { "" })
    }
}

pub fn j_set(lambda: &Pvf) -> Vec<usize> {
    lambda.blocks().iter().enumerate().filter(|(_, b)| !b.is_empty() && b.is_odd_parity()).map(|(g, _)| g).collect()
}

/// OP columns first, by decreasing length (identity first, ties in
/// enumeration order), then SP¹ columns in enumeration order.
pub fn split_classes(n: u32, gd: &GroupData) -> Result<Vec<SplitClassLabel>> {
    if n == 0 {
        return Err(Error::InvalidPartition("n must be at least 1".into()));
    }
    let zeta = gd.zeta();
    let mut op = enumerate_pvf(n, gd.num_classes(), PvfKind::Op);
    op.sort_by_key(|r| std::cmp::Reverse(r.length()));
    let sp1 = enumerate_pvf(n, gd.num_classes(), PvfKind::Sp1);
    let tagged = op.into_iter().map(|r| (r, ClassKind::Op)).chain(sp1.into_iter().map(|r| (r, ClassKind::Sp1)));
    tagged
        .map(|(rho, kind)| {
            let z = big_z_order(&rho, &zeta)?;
            Ok(SplitClassLabel { z_tilde: &z * 2u32, z, rho, kind })
        })
        .collect()
}

/// Rows in enumeration order, unprimed before primed.
pub fn spin_rows(n: u32, gd: &GroupData) -> Vec<SpinRowLabel> {
    let mut rows = Vec::new();
    for lambda in enumerate_pvf(n, gd.characters().len(), PvfKind::Sp) {
        let odd = lambda.is_odd_parity();
        rows.push(SpinRowLabel { lambda: lambda.clone(), associate: false });
        if odd {
            rows.push(SpinRowLabel { lambda, associate: true });
        }
    }
    rows
}

/// z-exponent parity relating the canonical lift of the merged class to the
/// product of per-block canonical lifts, laid out block by block.
///
/// Moving the cycles from block layout into canonical order is a product of
/// swaps of adjacent cycles. Swapping cycles of lengths k, k' costs
/// `d·d'` from reordering the two lifts, plus `k·k'·d(ρ)` from conjugating the
/// whole element by the (signed) position permutation.
pub fn canonical_sign(decomposition: &[Pvf]) -> i8 {
    let layout: Vec<ColoredPart> = decomposition.iter().flat_map(|b| b.colored_parts().parts().to_vec()).collect();
    let total_d: u32 = layout.iter().map(|p| p.length - 1).sum();
    let key = |p: &ColoredPart| (std::cmp::Reverse(p.length), p.color);
    let mut exponent = 0u32;
    for a in 0..layout.len() {
        for b in a + 1..layout.len() {
            if key(&layout[a]) > key(&layout[b]) {
                let (x, y) = (&layout[a], &layout[b]);
                let single = |p: &ColoredPart| ColoredCycleList::from_parts(vec![*p]);
                exponent += reorder_sign(&single(x), &single(y)) as u32;
                exponent += x.length * y.length * total_d;
            }
        }
    }
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Per-(λ, ρ) evaluation context with cached Q-functions.
pub struct Evaluator<'a> {
    gd: &'a GroupData,
    zeta: Vec<u64>,
    q: HashMap<Partition, PowerSumPoly>,
}

/// One term of the induced-character sum.
#[derive(Clone, Debug)]
pub struct DecompositionTerm {
    pub blocks: Vec<Pvf>,
    /// Z_ρ / ∏ Z_{ρ_γ}.
    pub weight: BigUint,
    pub sign: i8,
    pub starred: RadicalValue,
    /// ∏_γ ∏_c γ(c)^{l(ρ_γ(c))}.
    pub color_product: CycloNumber,
}

impl<'a> Evaluator<'a> {
    pub fn new(gd: &'a GroupData, n: u32) -> Result<Self> {
        let mut q = HashMap::new();
        for w in 0..=n {
            for nu in enumerate_partitions(w, PartitionKind::Strict) {
                let poly = q_poly(&nu)?;
                q.insert(nu, poly);
            }
        }
        Ok(Evaluator { gd, zeta: gd.zeta(), q })
    }

    pub fn group(&self) -> &GroupData {
        self.gd
    }

    fn delta(&self, nu: &Partition, class: &Partition) -> Result<RadicalValue> {
        let q = self.q.get(nu).ok_or_else(|| Error::Internal(format!("no Q-function cached for {nu}")))?;
        delta_value_with(nu, q, class, false)
    }

    /// ∏_c γ(c)^{l(ρ_γ(c))}.
    pub fn color_product(&self, gamma: usize, rho_g: &Pvf) -> CycloNumber {
        let mut acc = CycloNumber::one(self.gd.conductor());
        for (c, block) in rho_g.blocks().iter().enumerate() {
            if !block.is_empty() {
                acc = &acc * &self.gd.value(gamma, c).pow(block.len() as u32);
            }
        }
        acc
    }

    /// (γ^{⊗|λ_γ|} ⊗ Δ_{λ_γ})(D⁺_{ρ_γ}) = ∏_c γ(c)^{l(ρ_γ(c))} · Δ_{λ_γ}(shape of ρ_γ).
    pub fn block_value(&self, lambda_g: &Partition, gamma: usize, rho_g: &Pvf) -> Result<RadicalValue> {
        if lambda_g.weight() != rho_g.weight() {
            return Err(Error::WeightMismatch { expected: lambda_g.weight(), found: rho_g.weight() });
        }
        let delta = self.delta(lambda_g, &rho_g.shape())?;
        Ok(delta.scale(&self.color_product(gamma, rho_g)))
    }

    /// Schur's starred product of the block characters at the subgroup element
    /// with blocks `decomposition`:
    /// `2^{⌊m/2⌋} i^{⌊m/2⌋·∏_{γ∈J} d̄(ρ_γ)} ∏_γ block_value` when either every
    /// block is even, or m is odd with exactly the J blocks odd; 0 otherwise.
    pub fn starred_value(&self, lambda: &Pvf, decomposition: &[Pvf]) -> Result<RadicalValue> {
        if decomposition.len() != lambda.colors() {
            return Err(Error::Internal(format!(
                "decomposition has {} blocks for {} characters",
                decomposition.len(),
                lambda.colors()
            )));
        }
        let j = j_set(lambda);
        let m = j.len() as u32;
        let odd: Vec<bool> = decomposition.iter().map(Pvf::is_odd_parity).collect();
        let all_even = odd.iter().all(|o| !o);
        let j_pattern = m % 2 == 1 && (0..odd.len()).all(|g| odd[g] == j.contains(&g));
        if !all_even && !j_pattern {
            return Ok(RadicalValue::zero());
        }
        let mut v = RadicalValue::integer(1i64 << (m / 2));
        if !all_even {
            v = &v * &RadicalValue::i_pow((m / 2) as u64);
        }
        for (g, (lam, rho_g)) in lambda.blocks().iter().zip(decomposition).enumerate() {
            v = &v * &self.block_value(lam, g, rho_g)?;
        }
        Ok(v)
    }

    /// Block constraints selecting the subgroup classes that fuse into ρ.
    fn constraints(&self, lambda: &Pvf, kind: ClassKind) -> Vec<BlockConstraint> {
        let j = j_set(lambda);
        lambda
            .blocks()
            .iter()
            .enumerate()
            .map(|(g, b)| match kind {
                _ if b.is_empty() => BlockConstraint::Empty,
                ClassKind::Op => BlockConstraint::Odd(b.weight()),
                ClassKind::Sp1 if j.contains(&g) => BlockConstraint::Colorings(b.clone()),
                ClassKind::Sp1 => BlockConstraint::OddStrict(b.weight()),
            })
            .collect()
    }

    /// Every decomposition term contributing to χ_λ(D⁺_ρ).
    pub fn terms(&self, lambda: &Pvf, class: &SplitClassLabel) -> Result<Vec<DecompositionTerm>> {
        if class.kind == ClassKind::Sp1 && !lambda.is_odd_parity() {
            return Ok(Vec::new());
        }
        let specs = self.constraints(lambda, class.kind);
        let mut out = Vec::new();
        for blocks in decompositions(&class.rho, &specs) {
            let mut denom = BigUint::from(1u32);
            for b in &blocks {
                denom *= big_z_order(b, &self.zeta)?;
            }
            let (weight, rem) = class.z.div_rem(&denom);
            if !rem.is_zero() {
                return Err(Error::Internal(format!("Z_ρ not divisible by block centralizers for {}", class.rho)));
            }
            let sign = match class.kind {
                ClassKind::Op => 1,
                ClassKind::Sp1 => canonical_sign(&blocks),
            };
            let starred = self.starred_value(lambda, &blocks)?;
            let mut color_product = CycloNumber::one(self.gd.conductor());
            for (g, b) in blocks.iter().enumerate() {
                color_product = &color_product * &self.color_product(g, b);
            }
            out.push(DecompositionTerm { blocks, weight, sign, starred, color_product });
        }
        Ok(out)
    }

    /// χ_λ(D⁺_ρ) as the decomposition sum Σ (Z_ρ/∏Z_{ρ_γ})·sign·starred.
    pub fn induced_value(&self, row: &SpinRowLabel, class: &SplitClassLabel) -> Result<RadicalValue> {
        if row.lambda.weight() != class.rho.weight() {
            return Err(Error::WeightMismatch { expected: row.lambda.weight(), found: class.rho.weight() });
        }
        let mut v = RadicalValue::zero();
        for t in self.terms(&row.lambda, class)? {
            let scaled = t.starred.scale_int(&BigInt::from(t.weight));
            v = if t.sign > 0 { &v + &scaled } else { &v - &scaled };
        }
        if row.associate && class.rho.is_odd_parity() {
            v = -&v;
        }
        Ok(v)
    }

    /// The closed form for an SP¹ class at one decomposition, as printed:
    /// `i^{Σ_{γ∈J}(d(λ_γ)+1)/2} · √(∏_{γ∈J} z_{λ_γ} / 2) · ∏ color products · ∏_{γ∉J} Δ_{λ_γ}(ρ_γ)`.
    pub fn closed_form(&self, lambda: &Pvf, blocks: &[Pvf]) -> Result<RadicalValue> {
        let j = j_set(lambda);
        let e: u64 = j.iter().map(|&g| (lambda.block(g).parity_degree() as u64).div_ceil(2)).sum();
        let mut z_prod = BigUint::from(1u32);
        for &g in &j {
            z_prod *= lambda.block(g).z_order();
        }
        let z_prod = z_prod.to_u64().ok_or_else(|| Error::Internal("centralizer product overflow".into()))?;
        let mut v = &RadicalValue::i_pow(e) * &RadicalValue::sqrt_half_product(z_prod);
        for (g, (lam, b)) in lambda.blocks().iter().zip(blocks).enumerate() {
            v = v.scale(&self.color_product(g, b));
            if !j.contains(&g) && !lam.is_empty() {
                v = &v * &self.delta(lam, &b.shape())?;
            }
        }
        Ok(v)
    }

    /// The starred product collapsed: the printed closed form times i^{⌊m/2⌋}.
    pub fn closed_form_corrected(&self, lambda: &Pvf, blocks: &[Pvf]) -> Result<RadicalValue> {
        let m = j_set(lambda).len() as u64;
        Ok(&self.closed_form(lambda, blocks)? * &RadicalValue::i_pow(m / 2))
    }

    /// 1 / Z_ρ as an exact rational.
    pub fn inverse_z(class: &SplitClassLabel) -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(class.z.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::builtin;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn pvf(blocks: &[&[u32]]) -> Pvf {
        Pvf::new(blocks.iter().map(|b| p(b)).collect())
    }

    fn class_of(n: u32, gd: &GroupData, rho: &Pvf) -> SplitClassLabel {
        split_classes(n, gd).unwrap().into_iter().find(|c| &c.rho == rho).unwrap()
    }

    #[test]
    fn split_class_examples() {
        let z2 = builtin("z2").unwrap();
        let cls = split_classes(2, &z2).unwrap();
        assert_eq!(cls.iter().filter(|c| c.kind == ClassKind::Op).count(), 3);
        assert_eq!(cls.iter().filter(|c| c.kind == ClassKind::Sp1).count(), 2);
        assert_eq!(cls[0].rho, pvf(&[&[1, 1], &[]]));
        assert_eq!(cls[0].z_tilde, BigUint::from(16u32));
        let t = builtin("trivial").unwrap();
        let rhos: Vec<Pvf> = split_classes(3, &t).unwrap().into_iter().map(|c| c.rho).collect();
        assert_eq!(rhos, vec![pvf(&[&[1, 1, 1]]), pvf(&[&[3]]), pvf(&[&[2, 1]])]);
        let one: Vec<Pvf> = split_classes(1, &z2).unwrap().into_iter().map(|c| c.rho).collect();
        assert_eq!(one, vec![pvf(&[&[1], &[]]), pvf(&[&[], &[1]])]);
        assert!(split_classes(0, &z2).is_err());
    }

    #[test]
    fn block_values() {
        let z2 = builtin("z2").unwrap();
        let ev = Evaluator::new(&z2, 3).unwrap();
        assert_eq!(ev.block_value(&p(&[2]), 1, &pvf(&[&[], &[2]])).unwrap(), -&RadicalValue::i());
        assert_eq!(ev.block_value(&p(&[1]), 0, &pvf(&[&[1], &[]])).unwrap(), RadicalValue::one());
        let t = builtin("trivial").unwrap();
        let ev = Evaluator::new(&t, 3).unwrap();
        assert_eq!(ev.block_value(&p(&[3]), 0, &pvf(&[&[1, 1, 1]])).unwrap(), RadicalValue::integer(2));
        assert!(ev.block_value(&p(&[3]), 0, &pvf(&[&[1]])).is_err());
    }

    #[test]
    fn starred_values() {
        let z2 = builtin("z2").unwrap();
        let ev = Evaluator::new(&z2, 2).unwrap();
        let lam = pvf(&[&[2], &[]]);
        let i = RadicalValue::i();
        assert_eq!(ev.starred_value(&lam, &[pvf(&[&[2], &[]]), pvf(&[&[], &[]])]).unwrap(), i);
        assert_eq!(ev.starred_value(&lam, &[pvf(&[&[], &[2]]), pvf(&[&[], &[]])]).unwrap(), i);
        let lam2 = pvf(&[&[], &[2]]);
        assert_eq!(ev.starred_value(&lam2, &[pvf(&[&[], &[]]), pvf(&[&[], &[2]])]).unwrap(), -&i);
    }

    #[test]
    fn induced_value_examples() {
        let z2 = builtin("z2").unwrap();
        let ev = Evaluator::new(&z2, 2).unwrap();
        let row = SpinRowLabel { lambda: pvf(&[&[2], &[]]), associate: false };
        let c = class_of(2, &z2, &pvf(&[&[], &[2]]));
        assert_eq!(ev.induced_value(&row, &c).unwrap(), RadicalValue::i());
        let even = SpinRowLabel { lambda: pvf(&[&[1], &[1]]), associate: false };
        let c0 = class_of(2, &z2, &pvf(&[&[2], &[]]));
        assert!(ev.induced_value(&even, &c0).unwrap().is_zero());
        let t = builtin("trivial").unwrap();
        let ev = Evaluator::new(&t, 3).unwrap();
        let c = class_of(3, &t, &pvf(&[&[2, 1]]));
        let row = SpinRowLabel { lambda: pvf(&[&[2, 1]]), associate: false };
        assert_eq!(ev.induced_value(&row, &c).unwrap(), RadicalValue::i());
        let row = SpinRowLabel { associate: true, ..row };
        assert_eq!(ev.induced_value(&row, &c).unwrap(), -&RadicalValue::i());
    }

    #[test]
    fn canonical_sign_basics() {
        assert_eq!(canonical_sign(&[pvf(&[&[2, 1]])]), 1);
        assert_eq!(canonical_sign(&[pvf(&[&[3, 1]]), pvf(&[&[5]])]), 1);
        // k + k' odd: the two terms cancel
        assert_eq!(canonical_sign(&[pvf(&[&[1]]), pvf(&[&[2]])]), 1);
        // a fixed point laid out before a 3-cycle, with d(ρ) = 3
        assert_eq!(canonical_sign(&[pvf(&[&[1]]), pvf(&[&[3, 2]])]), -1);
        // two transpositions in swapped order, d(ρ) = 2 even: only the reorder term
        assert_eq!(canonical_sign(&[pvf(&[&[], &[2]]), pvf(&[&[2], &[]])]), -1);
    }

    #[test]
    fn printed_closed_form_drops_a_power_of_i_for_three_odd_blocks() {
        // Klein four-group, three characters each carrying λ_γ = (2): m = 3.
        let k4 = builtin("klein4").unwrap();
        let ev = Evaluator::new(&k4, 6).unwrap();
        let lambda = pvf(&[&[2], &[2], &[2], &[]]);
        let blocks =
            [pvf(&[&[2], &[], &[], &[]]), pvf(&[&[], &[2], &[], &[]]), pvf(&[&[], &[], &[2], &[]]), Pvf::empty(4)];
        let starred = ev.starred_value(&lambda, &blocks).unwrap();
        assert_eq!(starred, ev.closed_form_corrected(&lambda, &blocks).unwrap());
        assert_ne!(starred, ev.closed_form(&lambda, &blocks).unwrap());
    }
}
