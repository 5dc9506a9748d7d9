//! Spin characters Δ_ν of the double cover S̃_n.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::cyclotomic::RadicalValue;
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition, PartitionKind};
use crate::qfunctions::{delta_from_poly, q_poly, PowerSumPoly};

/// `i^{(n - l(ν) + 1)/2} · √(ν_1⋯ν_l / 2)`, the value of Δ_ν on the class ν
/// itself when d(ν) is odd.
pub fn diagonal_value(nu: &Partition) -> RadicalValue {
    debug_assert!(nu.is_odd_parity());
    let e = (nu.weight() as u64 - nu.len() as u64).div_ceil(2);
    let prod = nu.part_product().to_u64().expect("part product fits in u64");
    &RadicalValue::i_pow(e) * &RadicalValue::sqrt_half_product(prod)
}

/// Δ_ν (or its associate) on the class of cycle type `class`.
pub fn delta_value(nu: &Partition, class: &Partition, associate: bool) -> Result<RadicalValue> {
    let q = q_poly(nu)?;
    delta_value_with(nu, &q, class, associate)
}

/// As [`delta_value`] with `Q_ν` supplied.
pub fn delta_value_with(
    nu: &Partition,
    q_nu: &PowerSumPoly,
    class: &Partition,
    associate: bool,
) -> Result<RadicalValue> {
    if !nu.is_strict() {
        return Err(Error::NotStrict(nu.to_string()));
    }
    if nu.weight() != class.weight() {
        return Err(Error::WeightMismatch { expected: nu.weight(), found: class.weight() });
    }
    if class.has_odd_parts() {
        // d(class) is even here, so the associate agrees
        return Ok(RadicalValue::rational(BigRational::from_integer(delta_from_poly(nu, q_nu, class)?)));
    }
    if nu.is_odd_parity() && class == nu {
        let v = diagonal_value(nu);
        return Ok(if associate { -&v } else { v });
    }
    Ok(RadicalValue::zero())
}

#[derive(Clone, Debug)]
pub struct SpinSymTable {
    pub n: u32,
    /// (ν, associate) in enumeration order, unprimed before primed.
    pub rows: Vec<(Partition, bool)>,
    /// Odd classes by decreasing length, then strict classes with d odd.
    pub columns: Vec<Partition>,
    pub values: Vec<Vec<RadicalValue>>,
}

/// Split classes of S_n: odd partitions ordered by decreasing length (so the
/// identity comes first), then strict partitions with odd d.
pub fn split_class_shapes(n: u32) -> Vec<Partition> {
    let mut op = enumerate_partitions(n, PartitionKind::Odd);
    op.sort_by_key(|p| std::cmp::Reverse(p.len()));
    let sp1 = enumerate_partitions(n, PartitionKind::Strict).into_iter().filter(Partition::is_odd_parity);
    op.into_iter().chain(sp1).collect()
}

pub fn spin_sym_table(n: u32) -> Result<SpinSymTable> {
    if n == 0 {
        return Err(Error::InvalidPartition("n must be at least 1".into()));
    }
    let columns = split_class_shapes(n);
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for nu in enumerate_partitions(n, PartitionKind::Strict) {
        let q = q_poly(&nu)?;
        let flags: &[bool] = if nu.is_odd_parity() { &[false, true] } else { &[false] };
        for &assoc in flags {
            let row = columns.iter().map(|c| delta_value_with(&nu, &q, c, assoc)).collect::<Result<Vec<_>>>()?;
            rows.push((nu.clone(), assoc));
            values.push(row);
        }
    }
    Ok(SpinSymTable { n, rows, columns, values })
}

impl SpinSymTable {
    /// ⟨χ_a, χ_b⟩ = Σ_μ χ_a(μ)·conj(χ_b(μ)) / z_μ over the stored classes.
    pub fn inner_product(&self, a: usize, b: usize) -> RadicalValue {
        self.columns
            .iter()
            .enumerate()
            .map(|(j, mu)| {
                let w = BigRational::new(BigInt::from(1), BigInt::from(mu.z_order()));
                (&self.values[a][j] * &self.values[b][j].conj()).scale_rational(&w)
            })
            .sum()
    }

    pub fn degree(&self, row: usize) -> Option<BigInt> {
        self.values[row][0].as_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn schur_values() {
        let nu = p(&[2, 1]);
        assert_eq!(delta_value(&nu, &p(&[2, 1]), false).unwrap(), RadicalValue::i());
        assert_eq!(delta_value(&nu, &p(&[2, 1]), true).unwrap(), -&RadicalValue::i());
        assert_eq!(delta_value(&nu, &p(&[1, 1, 1]), false).unwrap(), RadicalValue::integer(1));
        assert!(delta_value(&p(&[3, 1]), &p(&[2, 2]), false).unwrap().is_zero());
        assert!(delta_value(&p(&[3]), &p(&[2, 1]), false).unwrap().is_zero());
        assert!(matches!(delta_value(&p(&[1, 1]), &p(&[2]), false), Err(Error::NotStrict(_))));
        assert!(matches!(delta_value(&p(&[2]), &p(&[1]), false), Err(Error::WeightMismatch { .. })));
    }

    #[test]
    fn table_n3() {
        let t = spin_sym_table(3).unwrap();
        assert_eq!(t.columns, vec![p(&[1, 1, 1]), p(&[3]), p(&[2, 1])]);
        assert_eq!(t.rows, vec![(p(&[3]), false), (p(&[2, 1]), false), (p(&[2, 1]), true)]);
        let expect = |r: usize, v: [RadicalValue; 3]| {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(&t.values[r][j], x, "row {r} col {j}");
            }
        };
        let i = RadicalValue::i();
        expect(0, [RadicalValue::integer(2), RadicalValue::integer(1), RadicalValue::zero()]);
        expect(1, [RadicalValue::integer(1), RadicalValue::integer(-1), i.clone()]);
        expect(2, [RadicalValue::integer(1), RadicalValue::integer(-1), -&i]);
    }

    #[test]
    fn table_n1() {
        let t = spin_sym_table(1).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.values, vec![vec![RadicalValue::integer(1)]]);
    }

    #[test]
    fn orthonormal_with_norm_split() {
        for n in 1..=7 {
            let t = spin_sym_table(n).unwrap();
            for a in 0..t.rows.len() {
                for b in 0..t.rows.len() {
                    let want = if a == b { RadicalValue::one() } else { RadicalValue::zero() };
                    assert_eq!(t.inner_product(a, b), want, "n={n} rows {a},{b}");
                }
                let (nu, _) = &t.rows[a];
                if nu.is_odd_parity() {
                    let d = diagonal_value(nu);
                    let norm = (&d * &d.conj()).as_rational().unwrap();
                    let z = BigRational::from_integer(BigInt::from(nu.z_order()));
                    assert_eq!(norm / z, BigRational::new(1.into(), 2.into()));
                }
            }
        }
    }

    #[test]
    fn degree_squares_sum_to_factorial() {
        for n in 1..=6u32 {
            let t = spin_sym_table(n).unwrap();
            let total: BigInt = (0..t.rows.len()).map(|r| t.degree(r).unwrap().pow(2)).sum();
            let fact: BigInt = (1..=n).map(BigInt::from).product();
            assert_eq!(total, fact, "n={n}");
        }
    }
}
