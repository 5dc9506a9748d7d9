use std::collections::{HashMap, VecDeque};

use super::clifford::{compose, SpinLifts};
use crate::error::{Error, Result};
use crate::gamma::GroupData;
use crate::partitions::{Partition, Pvf};

/// Γ as an explicit permutation group, with class indices matching the
/// builtin `GroupData`.
#[derive(Clone, Debug)]
pub struct GammaModel {
    pub mul: Vec<Vec<u16>>,
    pub inv: Vec<u16>,
    pub identity: u16,
    pub class_of: Vec<usize>,
    /// One representative per class, in `GroupData` class order.
    pub reps: Vec<u16>,
}

fn model_reps(name: &str) -> Option<Vec<Vec<u8>>> {
    let v: Vec<&[u8]> = match name {
        "trivial" => vec![&[0]],
        "z2" => vec![&[0, 1], &[1, 0]],
        "z3" => vec![&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]],
        "z4" => vec![&[0, 1, 2, 3], &[1, 2, 3, 0], &[2, 3, 0, 1], &[3, 0, 1, 2]],
        "klein4" => vec![&[0, 1, 2, 3], &[1, 0, 3, 2], &[2, 3, 0, 1], &[3, 2, 1, 0]],
        "s3" => vec![&[0, 1, 2], &[1, 0, 2], &[1, 2, 0]],
        // symmetries of a square: 1, r², r, s (diagonal), rs (edge)
        "d4" => vec![&[0, 1, 2, 3], &[2, 3, 0, 1], &[1, 2, 3, 0], &[0, 3, 2, 1], &[1, 0, 3, 2]],
        _ => return None,
    };
    Some(v.into_iter().map(<[u8]>::to_vec).collect())
}

fn invert(p: &[u8]) -> Vec<u8> {
    let mut q = vec![0u8; p.len()];
    for (i, &j) in p.iter().enumerate() {
        q[j as usize] = i as u8;
    }
    q
}

impl GammaModel {
    pub fn builtin(gd: &GroupData) -> Result<Self> {
        let reps = model_reps(gd.name()).ok_or_else(|| Error::NoConcreteModel(gd.name().to_string()))?;
        if reps.len() != gd.num_classes() {
            return Err(Error::Internal(format!("model for {} has wrong class count", gd.name())));
        }
        let mut elems: Vec<Vec<u8>> = vec![reps[0].clone()];
        let mut index: HashMap<Vec<u8>, u16> = HashMap::from([(reps[0].clone(), 0)]);
        let mut queue = VecDeque::from([reps[0].clone()]);
        while let Some(x) = queue.pop_front() {
            for r in &reps {
                let y = compose(&x, r);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len() as u16);
                    elems.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        if elems.len() as u64 != gd.order() {
            return Err(Error::Internal(format!("model for {} has order {}", gd.name(), elems.len())));
        }
        let mul: Vec<Vec<u16>> = elems.iter().map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect()).collect();
        let inv: Vec<u16> = elems.iter().map(|a| index[&invert(a)]).collect();
        let mut class_of = vec![usize::MAX; elems.len()];
        for (c, r) in reps.iter().enumerate() {
            let mut size = 0u64;
            for x in &elems {
                let conj = index[&compose(&compose(x, r), &invert(x))] as usize;
                if class_of[conj] == usize::MAX {
                    class_of[conj] = c;
                    size += 1;
                }
            }
            if size * gd.classes()[c].centralizer != gd.order() {
                return Err(Error::Internal(format!("class {} of {} has size {size}", c, gd.name())));
            }
        }
        Ok(GammaModel { mul, inv, identity: 0, class_of, reps: reps.iter().map(|r| index[r]).collect() })
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }
}

/// (g, w, s) ↦ (g_0..g_{n-1}) · z^s · τ_w, where τ_w is the canonical lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    pub g: u32,
    pub w: u32,
    pub s: u8,
}

/// Γ̃_n = Γ^n ⋊ S̃_n realized through the Clifford lifts.
pub struct CoverGroup {
    pub n: usize,
    pub gamma: GammaModel,
    perms: Vec<Vec<u8>>,
    perm_index: HashMap<Vec<u8>, u32>,
    lifts: SpinLifts,
    powers: Vec<u32>,
}

fn all_perms(n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for k in 0..n as u8 {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out.sort();
    out
}

impl CoverGroup {
    pub fn new(gamma: GammaModel, n: usize) -> Self {
        let perms = all_perms(n);
        let perm_index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let k = gamma.order() as u32;
        let powers = (0..n).map(|i| k.pow(i as u32)).collect();
        CoverGroup { n, gamma, perms, perm_index, lifts: SpinLifts::new(n), powers }
    }

    pub fn order(&self) -> usize {
        2 * self.gamma.order().pow(self.n as u32) * self.perms.len()
    }

    pub fn encode(&self, e: Elem) -> usize {
        ((e.g as usize * self.perms.len() + e.w as usize) << 1) | e.s as usize
    }

    pub fn decode(&self, idx: usize) -> Elem {
        let s = (idx & 1) as u8;
        let rest = idx >> 1;
        Elem { g: (rest / self.perms.len()) as u32, w: (rest % self.perms.len()) as u32, s }
    }

    pub fn digits(&self, g: u32) -> Vec<u16> {
        let k = self.gamma.order() as u32;
        (0..self.n).map(|i| ((g / self.powers[i]) % k) as u16).collect()
    }

    fn pack(&self, digits: &[u16]) -> u32 {
        digits.iter().zip(&self.powers).map(|(&d, &p)| d as u32 * p).sum()
    }

    pub fn perm(&self, e: Elem) -> &[u8] {
        &self.perms[e.w as usize]
    }

    pub fn identity(&self) -> Elem {
        Elem { g: 0, w: self.perm_index[&(0..self.n as u8).collect::<Vec<_>>()], s: 0 }
    }

    pub fn central(&self) -> Elem {
        Elem { s: 1, ..self.identity() }
    }

    /// t_i, the lift of the transposition (i, i+1).
    pub fn t(&self, i: usize) -> Elem {
        let mut w: Vec<u8> = (0..self.n as u8).collect();
        w.swap(i, i + 1);
        Elem { g: 0, w: self.perm_index[&w], s: 0 }
    }

    /// Γ element `x` at position `pos`.
    pub fn gamma_at(&self, x: u16, pos: usize) -> Elem {
        let mut d = vec![self.gamma.identity; self.n];
        d[pos] = x;
        Elem { g: self.pack(&d), ..self.identity() }
    }

    /// (g, σ)(h, τ) = (g · w(h), στ) with w(h)_i = h_{w⁻¹(i)}.
    pub fn mul(&mut self, a: Elem, b: Elem) -> Elem {
        let wa = self.perms[a.w as usize].clone();
        let wb = self.perms[b.w as usize].clone();
        let (ga, gb) = (self.digits(a.g), self.digits(b.g));
        let mut g = vec![0u16; self.n];
        for j in 0..self.n {
            g[wa[j] as usize] = gb[j];
        }
        for i in 0..self.n {
            g[i] = self.gamma.mul[ga[i] as usize][g[i] as usize];
        }
        let eps = self.lifts.lift_sign(&wa, &wb);
        let w = compose(&wa, &wb);
        Elem { g: self.pack(&g), w: self.perm_index[&w], s: a.s ^ b.s ^ u8::from(eps < 0) }
    }

    pub fn inverse(&mut self, a: Elem) -> Elem {
        let w = self.perms[a.w as usize].clone();
        let winv = invert(&w);
        let ga = self.digits(a.g);
        // h_i = g_{w(i)}⁻¹
        let h: Vec<u16> = (0..self.n).map(|i| self.gamma.inv[ga[w[i] as usize] as usize]).collect();
        // τ_w τ_{w⁻¹} = ε·1
        let eps = self.lifts.lift_sign(&w, &winv);
        let inv = Elem { g: self.pack(&h), w: self.perm_index[&winv], s: a.s ^ u8::from(eps < 0) };
        debug_assert_eq!(self.mul(a, inv), self.identity());
        inv
    }

    pub fn conjugate(&mut self, by: Elem, x: Elem) -> Elem {
        let inv = self.inverse(by);
        let left = self.mul(by, x);
        self.mul(left, inv)
    }

    /// Conjugacy-class type ρ of the image in Γ_n: for each cycle of w, the
    /// Γ-class of the cycle product g_i g_{w⁻¹(i)} ⋯ read at its least point.
    pub fn class_type(&self, e: Elem) -> Pvf {
        let w = &self.perms[e.w as usize];
        let winv = invert(w);
        let g = self.digits(e.g);
        let colors = self.gamma.reps.len();
        let mut blocks = vec![Vec::new(); colors];
        let mut seen = vec![false; self.n];
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut prod = self.gamma.identity;
            let mut len = 0;
            let mut j = start;
            loop {
                seen[j] = true;
                prod = self.gamma.mul[prod as usize][g[j] as usize];
                len += 1;
                j = winv[j] as usize;
                if j == start {
                    break;
                }
            }
            blocks[self.gamma.class_of[prod as usize]].push(len);
        }
        Pvf::new(blocks.into_iter().map(Partition::from_unsorted).collect())
    }

    /// The canonical representative D⁺_ρ: colored parts in canonical order on
    /// consecutive positions, cycle lifts t_a ⋯ t_{a+k-2}, and the class
    /// representative placed at the last position of each cycle.
    pub fn canonical_rep(&mut self, rho: &Pvf) -> Elem {
        let mut acc = self.identity();
        let mut digits = vec![self.gamma.identity; self.n];
        let mut a = 0;
        for part in rho.colored_parts().parts() {
            let k = part.length as usize;
            for i in a..a + k - 1 {
                let t = self.t(i);
                acc = self.mul(acc, t);
            }
            digits[a + k - 1] = self.gamma.reps[part.color];
            a += k;
        }
        let g = Elem { g: self.pack(&digits), ..self.identity() };
        self.mul(g, acc)
    }

    /// A generating set: every t_i and every element of Γ at position 0.
    pub fn generators(&self) -> Vec<Elem> {
        let mut gens: Vec<Elem> = (0..self.n.saturating_sub(1)).map(|i| self.t(i)).collect();
        gens.extend((0..self.gamma.order() as u16).map(|x| self.gamma_at(x, 0)));
        gens
    }
}

/// A conjugacy class of Γ̃_n.
#[derive(Clone, Debug)]
pub struct CoverClass {
    pub rep: Elem,
    pub members: Vec<usize>,
    pub rho: Pvf,
    /// z·C ≠ C.
    pub split: bool,
}

/// Every class, identity first, with a lookup from encoded element to class.
pub fn conjugacy_classes(group: &mut CoverGroup) -> (Vec<CoverClass>, Vec<u32>) {
    let total = group.order();
    let gens = group.generators();
    let mut class_of = vec![u32::MAX; total];
    let mut classes: Vec<CoverClass> = Vec::new();
    let id = group.encode(group.identity());
    let order: Vec<usize> = std::iter::once(id).chain((0..total).filter(|&i| i != id)).collect();
    for start in order {
        if class_of[start] != u32::MAX {
            continue;
        }
        let c = classes.len() as u32;
        let mut members = vec![start];
        class_of[start] = c;
        let mut head = 0;
        while head < members.len() {
            let x = group.decode(members[head]);
            head += 1;
            for &s in &gens {
                let conj = group.conjugate(s, x);
                let y = group.encode(conj);
                if class_of[y] == u32::MAX {
                    class_of[y] = c;
                    members.push(y);
                }
            }
        }
        let rep = group.decode(start);
        let rho = group.class_type(rep);
        classes.push(CoverClass { rep, members, rho, split: false });
    }
    let z = group.central();
    for cl in classes.iter_mut() {
        let zx = group.mul(z, cl.rep);
        cl.split = class_of[group.encode(zx)] != class_of[group.encode(cl.rep)];
    }
    (classes, class_of)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::builtin;
    use crate::partitions::{enumerate_pvf, PvfKind};
    use crate::wreath::split_classes;

    fn cover(name: &str, n: usize) -> CoverGroup {
        let gd = builtin(name).unwrap();
        CoverGroup::new(GammaModel::builtin(&gd).unwrap(), n)
    }

    #[test]
    fn models_match_group_data() {
        for name in crate::gamma::BUILTIN_NAMES {
            let gd = builtin(name).unwrap();
            let m = GammaModel::builtin(&gd).unwrap();
            assert_eq!(m.order() as u64, gd.order());
        }
    }

    #[test]
    fn relations_hold() {
        let mut g = cover("z2", 4);
        let z = g.central();
        for i in 0..3 {
            let t = g.t(i);
            assert_eq!(g.mul(t, t), z);
            for j in i + 2..3 {
                let u = g.t(j);
                let tu = g.mul(t, u);
                let ut = g.mul(u, t);
                assert_eq!(tu, g.mul(z, ut));
            }
        }
    }

    #[test]
    fn associativity_sampled() {
        let mut g = cover("s3", 3);
        let total = g.order();
        for k in 0..200usize {
            let a = g.decode((k * 7919) % total);
            let b = g.decode((k * 104729 + 13) % total);
            let c = g.decode((k * 1299709 + 5) % total);
            let ab = g.mul(a, b);
            let bc = g.mul(b, c);
            assert_eq!(g.mul(ab, c), g.mul(a, bc));
        }
    }

    #[test]
    fn split_classes_agree_with_enumeration() {
        for (name, n) in [("trivial", 4), ("z2", 2), ("z3", 2), ("s3", 2), ("klein4", 2)] {
            let gd = builtin(name).unwrap();
            let mut g = cover(name, n);
            let (classes, _) = conjugacy_classes(&mut g);
            let mut split: Vec<Pvf> = classes.iter().filter(|c| c.split).map(|c| c.rho.clone()).collect();
            split.sort();
            split.dedup();
            let mut want: Vec<Pvf> = split_classes(n as u32, &gd).unwrap().into_iter().map(|c| c.rho).collect();
            want.sort();
            assert_eq!(split, want, "{name} n={n}");
            let all = enumerate_pvf(n as u32, gd.num_classes(), PvfKind::All).len();
            assert_eq!(classes.len(), all + want.len());
        }
    }

    #[test]
    fn canonical_rep_has_its_type() {
        let gd = builtin("z3").unwrap();
        let mut g = cover("z3", 3);
        for c in split_classes(3, &gd).unwrap() {
            let e = g.canonical_rep(&c.rho);
            assert_eq!(g.class_type(e), c.rho);
        }
    }
}
