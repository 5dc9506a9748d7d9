//! Brute-force check of the spin character table: build Γ̃_n from a
//! Clifford-algebra model of S̃_n and an explicit permutation model of Γ,
//! find its conjugacy classes, compute every irreducible character
//! numerically and match the spin ones against the formula table.

mod clifford;
mod compare;
mod group;
mod numeric;

pub use clifford::{compose, CliffordElement, QSqrt2, SpinLifts};
pub use compare::{compare, OracleReport};
pub use group::{conjugacy_classes, CoverClass, CoverGroup, Elem, GammaModel};
pub use numeric::{numeric_character_table, structure_constants, NumericTable};

use crate::error::{Error, Result};
use crate::gamma::GroupData;
use crate::wreath::full_table;

pub const DEFAULT_CAP: u128 = 5000;
pub const CAP_ENV: &str = "SPINWREATH_ORACLE_CAP";

/// The size cap, from `SPINWREATH_ORACLE_CAP` when set.
pub fn oracle_cap() -> u128 {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

/// |Γ̃_n| = 2 |Γ|^n n!.
pub fn cover_order(gd: &GroupData, n: u32) -> u128 {
    let fact: u128 = (1..=n as u128).product();
    2 * (gd.order() as u128).saturating_pow(n).saturating_mul(fact)
}

/// ε(w1, w2) with t_{w1} t_{w2} = z^ε t_{w1 w2} for the canonical lifts,
/// as ±1. Permutations are in one-line notation on 0..n.
pub fn lift_sign(w1: &[u8], w2: &[u8]) -> Result<i8> {
    let n = w1.len();
    let valid = |w: &[u8]| {
        let mut s = w.to_vec();
        s.sort();
        s.iter().enumerate().all(|(i, &x)| x as usize == i)
    };
    if w2.len() != n || !valid(w1) || !valid(w2) || n > 12 {
        return Err(Error::InvalidPartition("lift_sign needs two permutations of equal size".into()));
    }
    Ok(SpinLifts::new(n).lift_sign(w1, w2))
}

pub fn run_oracle(gd: &GroupData, n: u32, seed: u64, tol: f64) -> Result<OracleReport> {
    run_oracle_with_cap(gd, n, seed, tol, oracle_cap())
}

pub fn run_oracle_with_cap(gd: &GroupData, n: u32, seed: u64, tol: f64, cap: u128) -> Result<OracleReport> {
    if n == 0 {
        return Err(Error::InvalidPartition("n must be at least 1".into()));
    }
    let order = cover_order(gd, n);
    if order > cap {
        return Err(Error::OracleTooLarge { order, cap });
    }
    let model = GammaModel::builtin(gd)?;
    let table = full_table(n, gd)?;
    let mut group = CoverGroup::new(model, n as usize);
    let (classes, class_of) = conjugacy_classes(&mut group);
    let numeric = numeric_character_table(&mut group, &classes, &class_of, seed)?;
    Ok(compare(&table, &mut group, &classes, &class_of, &numeric, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::builtin;

    #[test]
    fn small_cases_agree() {
        for (name, n) in [("trivial", 2), ("trivial", 3), ("trivial", 4), ("z2", 1), ("z2", 2), ("z3", 2)] {
            let gd = builtin(name).unwrap();
            let r = run_oracle_with_cap(&gd, n, 1, 1e-8, DEFAULT_CAP).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let gd = builtin("s3").unwrap();
        assert_eq!(cover_order(&gd, 3), 2592);
        assert!(matches!(run_oracle_with_cap(&gd, 4, 0, 1e-8, DEFAULT_CAP), Err(Error::OracleTooLarge { .. })));
    }

    #[test]
    fn lift_sign_checks_input() {
        assert_eq!(lift_sign(&[1, 0], &[1, 0]).unwrap(), -1);
        assert!(lift_sign(&[0, 0], &[1, 0]).is_err());
    }
}
