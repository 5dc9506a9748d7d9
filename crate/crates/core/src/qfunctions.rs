//! Schur Q-functions expanded in odd power sums.
//!
//! `Q_(r)` comes from the generating series exp(2 Σ_{k odd} p_k t^k / k),
//! two-row functions from the usual quadratic relation, and longer shapes
//! from the Pfaffian of the two-row matrix. [`q_direct_eval`] evaluates the
//! symmetrized defining sum and serves as an independent check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Sparse polynomial in p1, p3, p5, ... keyed by odd partitions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PowerSumPoly {
    terms: BTreeMap<Partition, BigRational>,
}

impl PowerSumPoly {
    pub fn zero() -> Self {
        PowerSumPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(Partition::empty(), BigRational::one())
    }

    pub fn monomial(alpha: Partition, c: BigRational) -> Self {
        assert!(alpha.has_odd_parts(), "power-sum keys must be odd partitions");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(alpha, c);
        }
        PowerSumPoly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &Partition) -> BigRational {
        self.terms.get(alpha).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, alpha: Partition, c: BigRational) {
        let entry = self.terms.entry(alpha).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        PowerSumPoly { terms: self.terms.iter().map(|(a, c)| (a.clone(), c * q)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.union(b), c * d);
            }
        }
        out
    }

    /// Evaluates at a point, with p_k = Σ x_i^k.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut power_sums: BTreeMap<u32, BigRational> = BTreeMap::new();
        let mut total = BigRational::zero();
        for (alpha, c) in &self.terms {
            let mut term = c.clone();
            for &k in alpha.parts() {
                let pk = power_sums.entry(k).or_insert_with(|| point.iter().map(|x| pow(x, k)).sum());
                term *= &*pk;
            }
            total += term;
        }
        total
    }
}

fn pow(x: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// One-row functions q_0..=q_max from r·q_r = Σ_{k odd ≤ r} 2 p_k q_{r-k}.
pub fn q_one_rows(max: u32) -> Vec<PowerSumPoly> {
    let mut q = vec![PowerSumPoly::one()];
    for r in 1..=max {
        let mut acc = PowerSumPoly::zero();
        for k in (1..=r).step_by(2) {
            let pk = PowerSumPoly::monomial(Partition::from_unsorted(vec![k]), int(2));
            acc = acc.add(&pk.mul(&q[(r - k) as usize]));
        }
        q.push(acc.scale(&BigRational::new(1.into(), r.into())));
    }
    q
}

pub fn q_one_row(r: u32) -> PowerSumPoly {
    q_one_rows(r).pop().expect("nonempty")
}

/// Q_(r,s) = q_r q_s + 2 Σ_{i=1}^{s} (-1)^i q_{r+i} q_{s-i}, with q from `q`.
fn q_two_row_from(r: u32, s: u32, q: &[PowerSumPoly]) -> PowerSumPoly {
    let mut acc = q[r as usize].mul(&q[s as usize]);
    for i in 1..=s {
        let sign = if i % 2 == 0 { 2 } else { -2 };
        let t = q[(r + i) as usize].mul(&q[(s - i) as usize]).scale(&int(sign));
        acc = acc.add(&t);
    }
    acc
}

pub fn q_two_row(r: u32, s: u32) -> PowerSumPoly {
    q_two_row_from(r, s, &q_one_rows(r + s))
}

/// Q_ν for strict ν, via the Pfaffian of (Q_(ν_i, ν_j)), padding odd lengths with a zero part.
pub fn q_poly(nu: &Partition) -> Result<PowerSumPoly> {
    if !nu.is_strict() {
        return Err(Error::NotStrict(nu.to_string()));
    }
    let q = q_one_rows(nu.weight());
    let mut parts = nu.parts().to_vec();
    match parts.len() {
        0 => return Ok(PowerSumPoly::one()),
        1 => return Ok(q[parts[0] as usize].clone()),
        2 => return Ok(q_two_row_from(parts[0], parts[1], &q)),
        _ => {}
    }
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    let k = parts.len();
    let mut m = vec![vec![PowerSumPoly::zero(); k]; k];
    for i in 0..k {
        for j in i + 1..k {
            m[i][j] = q_two_row_from(parts[i], parts[j], &q);
        }
    }
    let idx: Vec<usize> = (0..k).collect();
    Ok(pfaffian(&m, &idx))
}

fn pfaffian(m: &[Vec<PowerSumPoly>], idx: &[usize]) -> PowerSumPoly {
    if idx.is_empty() {
        return PowerSumPoly::one();
    }
    let first = idx[0];
    let mut acc = PowerSumPoly::zero();
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != j).collect();
        let term = m[first][j].mul(&pfaffian(m, &rest));
        acc = if pos % 2 == 1 { acc.add(&term) } else { acc.add(&term.scale(&int(-1))) };
    }
    acc
}

/// The defining symmetrized sum
/// `2^l Σ_w x^ν ∏_{i ≤ l, i < j ≤ m} (x_{w(i)} + x_{w(j)}) / (x_{w(i)} - x_{w(j)})`
/// over cosets of S_{m-l}, evaluated exactly at a point.
pub fn q_direct_eval(nu: &Partition, point: &[BigRational]) -> Result<BigRational> {
    let l = nu.len();
    let m = point.len();
    if m < l {
        return Err(Error::TooFewVariables { needed: l, got: m });
    }
    for i in 0..m {
        for j in i + 1..m {
            if point[i] == point[j] {
                return Err(Error::RepeatedCoordinates(point[i].to_string()));
            }
        }
    }
    let mut total = BigRational::zero();
    let mut chosen = Vec::with_capacity(l);
    let mut used = vec![false; m];
    direct_sum(nu.parts(), point, &mut chosen, &mut used, &mut total);
    Ok(total * pow(&int(2), l as u32))
}

fn direct_sum(nu: &[u32], x: &[BigRational], chosen: &mut Vec<usize>, used: &mut Vec<bool>, total: &mut BigRational) {
    if chosen.len() == nu.len() {
        let mut term = BigRational::one();
        for (i, &wi) in chosen.iter().enumerate() {
            term *= pow(&x[wi], nu[i]);
            // partners: later chosen positions, then every unchosen variable
            let later = chosen[i + 1..].iter().copied();
            let rest = (0..x.len()).filter(|y| !used[*y]);
            for wj in later.chain(rest) {
                term *= (&x[wi] + &x[wj]) / (&x[wi] - &x[wj]);
            }
        }
        *total += term;
        return;
    }
    for v in 0..x.len() {
        if !used[v] {
            used[v] = true;
            chosen.push(v);
            direct_sum(nu, x, chosen, used, total);
            chosen.pop();
            used[v] = false;
        }
    }
}

/// Δ_ν(α) for an odd class α, read off from the coefficient of p_α in Q_ν:
/// `Δ_ν(α) = z_α · [p_α]Q_ν / 2^{⌊(l(ν) + l(α) + d̄(ν)) / 2⌋}`.
pub fn delta_on_odd(nu: &Partition, alpha: &Partition) -> Result<BigInt> {
    delta_from_poly(nu, &q_poly(nu)?, alpha)
}

/// As [`delta_on_odd`] with a precomputed `Q_ν`.
pub fn delta_from_poly(nu: &Partition, q_nu: &PowerSumPoly, alpha: &Partition) -> Result<BigInt> {
    if nu.weight() != alpha.weight() {
        return Err(Error::WeightMismatch { expected: nu.weight(), found: alpha.weight() });
    }
    if !alpha.has_odd_parts() {
        return Err(Error::InvalidPartition(format!("{alpha} is not an odd partition")));
    }
    let dbar = nu.parity_degree() % 2;
    let e = (nu.len() as u32 + alpha.len() as u32 + dbar) / 2;
    let z = BigRational::from_integer(BigInt::from(alpha.z_order()));
    let v = z * q_nu.coeff(alpha) / pow(&int(2), e);
    if !v.is_integer() {
        return Err(Error::NonInteger { context: format!("Δ_{nu}({alpha})"), value: v.to_string() });
    }
    Ok(v.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, PartitionKind};
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(terms: &[(&[u32], i64, i64)]) -> PowerSumPoly {
        terms.iter().fold(PowerSumPoly::zero(), |acc, (a, n, d)| acc.add(&PowerSumPoly::monomial(p(a), q(*n, *d))))
    }

    #[test]
    fn one_row_functions() {
        assert_eq!(q_one_row(0), PowerSumPoly::one());
        assert_eq!(q_one_row(1), poly(&[(&[1], 2, 1)]));
        assert_eq!(q_one_row(3), poly(&[(&[1, 1, 1], 4, 3), (&[3], 2, 3)]));
    }

    #[test]
    fn one_row_matches_direct_evaluation() {
        let pt: Vec<_> = [1, 2, 5].iter().map(|&v| q(v, 1)).collect();
        for r in 1..=5 {
            let v = q_direct_eval(&p(&[r]), &pt).unwrap();
            assert_eq!(q_one_row(r).eval(&pt), v, "r={r}");
        }
    }

    #[test]
    fn two_row_example() {
        let got = q_poly(&p(&[2, 1])).unwrap();
        assert_eq!(got, poly(&[(&[1, 1, 1], 4, 3), (&[3], -4, 3)]));
        let pt: Vec<_> = [1, 2, 3].iter().map(|&v| q(v, 1)).collect();
        assert_eq!(got.eval(&pt), q(240, 1));
        assert_eq!(q_direct_eval(&p(&[2, 1]), &pt).unwrap(), q(240, 1));
        let pt4: Vec<_> = [1, 2, 3, -7].iter().map(|&v| q(v, 1)).collect();
        assert_eq!(got.eval(&pt4), q_direct_eval(&p(&[2, 1]), &pt4).unwrap());
    }

    #[test]
    fn direct_eval_small_cases() {
        assert_eq!(q_direct_eval(&p(&[1]), &[q(1, 1), q(2, 1)]).unwrap(), q(6, 1));
        assert_eq!(q_direct_eval(&Partition::empty(), &[q(3, 1), q(1, 2)]).unwrap(), q(1, 1));
        assert!(matches!(q_direct_eval(&p(&[1]), &[q(1, 1), q(1, 1)]), Err(Error::RepeatedCoordinates(_))));
        assert!(matches!(q_direct_eval(&p(&[2, 1]), &[q(1, 1)]), Err(Error::TooFewVariables { .. })));
    }

    #[test]
    fn empty_and_errors() {
        assert_eq!(q_poly(&Partition::empty()).unwrap(), PowerSumPoly::one());
        assert_eq!(q_poly(&p(&[3])).unwrap(), q_one_row(3));
        assert!(matches!(q_poly(&p(&[1, 1])), Err(Error::NotStrict(_))));
        assert!(matches!(delta_on_odd(&p(&[2, 1]), &p(&[1])), Err(Error::WeightMismatch { .. })));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_on_odd(&p(&[3]), &p(&[1, 1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(delta_on_odd(&p(&[2, 1]), &p(&[3])).unwrap(), BigInt::from(-1));
        assert_eq!(delta_on_odd(&p(&[1]), &p(&[1])).unwrap(), BigInt::from(1));
        assert_eq!(delta_on_odd(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), BigInt::from(1));
    }

    /// Expansion along the padded zero column for odd lengths:
    /// Q_ν = Σ_j (-1)^{j} q_{ν_j} Q_{ν \ ν_j}, j counted from 0.
    fn odd_length_expansion(nu: &Partition) -> PowerSumPoly {
        let parts = nu.parts();
        let mut acc = PowerSumPoly::zero();
        for j in 0..parts.len() {
            let rest: Vec<u32> = parts.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, &v)| v).collect();
            let term = q_one_row(parts[j]).mul(&q_poly(&Partition::new(rest).unwrap()).unwrap());
            acc = acc.add(&if j % 2 == 0 { term } else { term.scale(&int(-1)) });
        }
        acc
    }

    #[test]
    fn pfaffian_agrees_with_row_expansions() {
        for n in 1..=9 {
            for nu in enumerate_partitions(n, PartitionKind::Strict) {
                let pf = q_poly(&nu).unwrap();
                if nu.len() >= 3 && nu.len() % 2 == 1 {
                    assert_eq!(pf, odd_length_expansion(&nu), "ν={nu}");
                }
                if nu.len() == 4 {
                    // expand along the first row of the 4×4 Pfaffian by hand
                    let v = nu.parts();
                    let e = q_two_row(v[0], v[1])
                        .mul(&q_two_row(v[2], v[3]))
                        .add(&q_two_row(v[0], v[2]).mul(&q_two_row(v[1], v[3])).scale(&int(-1)))
                        .add(&q_two_row(v[0], v[3]).mul(&q_two_row(v[1], v[2])));
                    assert_eq!(pf, e, "ν={nu}");
                }
                for alpha in pf.terms().keys() {
                    assert_eq!(alpha.weight(), n);
                    assert!(alpha.has_odd_parts());
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn q_poly_matches_direct_sum(
            idx in 0usize..20,
            raw in prop::collection::btree_set(-9i64..=9, 4..=5),
            den in 1i64..=4,
        ) {
            let all: Vec<Partition> = (1..=7).flat_map(|n| enumerate_partitions(n, PartitionKind::Strict)).collect();
            let nu = &all[idx % all.len()];
            let pt: Vec<BigRational> = raw.into_iter().map(|v| q(v, den)).collect();
            prop_assert_eq!(q_poly(nu).unwrap().eval(&pt), q_direct_eval(nu, &pt).unwrap());
        }
    }
}
