use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::group::{CoverClass, CoverGroup};
use super::numeric::NumericTable;
use crate::partitions::Pvf;
use crate::wreath::SpinTable;

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub group: String,
    pub n: u32,
    pub order: usize,
    pub classes: usize,
    /// Split classes found by brute force but absent from the formula table.
    pub extra_split: Vec<String>,
    /// Formula columns whose preimage does not split.
    pub missing_split: Vec<String>,
    pub numeric_spin_rows: usize,
    pub formula_rows: usize,
    /// Formula rows with no numeric spin character within tolerance.
    pub unmatched: Vec<String>,
    /// Largest |formula - numeric| over the matched rows, both halves.
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.extra_split.is_empty()
            && self.missing_split.is_empty()
            && self.unmatched.is_empty()
            && self.numeric_spin_rows == self.formula_rows
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {} n={} |G~|={} classes={}", self.group, self.n, self.order, self.classes)?;
        writeln!(f, "spin rows: numeric {}, formula {}", self.numeric_spin_rows, self.formula_rows)?;
        if !self.extra_split.is_empty() {
            writeln!(f, "split classes missing from the table: {}", self.extra_split.join(", "))?;
        }
        if !self.missing_split.is_empty() {
            writeln!(f, "table columns that do not split: {}", self.missing_split.join(", "))?;
        }
        for u in &self.unmatched {
            writeln!(f, "unmatched row {u}")?;
        }
        writeln!(f, "max deviation {:.3e} (tolerance {:.1e})", self.max_deviation, self.tolerance)?;
        write!(f, "{}", if self.passed() { "oracle: PASS" } else { "oracle: FAIL" })
    }
}

/// Matches every formula row to a distinct numeric spin character, comparing
/// χ(D⁺_ρ) with the stored value and χ(z·D⁺_ρ) with its negative.
pub fn compare(
    table: &SpinTable,
    group: &mut CoverGroup,
    classes: &[CoverClass],
    class_of: &[u32],
    numeric: &NumericTable,
    tol: f64,
) -> OracleReport {
    let mut found: Vec<Pvf> = classes.iter().filter(|c| c.split).map(|c| c.rho.clone()).collect();
    found.sort();
    found.dedup();
    let listed: Vec<&Pvf> = table.columns.iter().map(|c| &c.rho).collect();
    let extra_split = found.iter().filter(|r| !listed.contains(r)).map(ToString::to_string).collect();

    let z = group.central();
    let z_class = class_of[group.encode(z)] as usize;
    let spin: Vec<usize> = (0..numeric.values.len())
        .filter(|&b| (numeric.values[b][z_class] + numeric.values[b][0]).norm() < tol.max(1e-6) * numeric.degree(b))
        .collect();

    let mut missing_split = Vec::new();
    let mut halves = Vec::new();
    for col in &table.columns {
        let plus = group.canonical_rep(&col.rho);
        let minus = group.mul(z, plus);
        let (kp, km) = (class_of[group.encode(plus)] as usize, class_of[group.encode(minus)] as usize);
        if kp == km || classes[kp].rho != col.rho {
            missing_split.push(col.rho.to_string());
        }
        halves.push((kp, km));
    }

    let mut used = vec![false; numeric.values.len()];
    let mut unmatched = Vec::new();
    let mut max_deviation = 0.0f64;
    for (a, row) in table.rows.iter().enumerate() {
        let formula: Vec<Complex64> = table.values[a].iter().map(|v| v.to_complex()).collect();
        let deviation = |b: usize| -> f64 {
            halves
                .iter()
                .zip(&formula)
                .map(|(&(kp, km), f)| {
                    let chi = &numeric.values[b];
                    (chi[kp] - f).norm().max((chi[km] + f).norm())
                })
                .fold(0.0, f64::max)
        };
        match spin.iter().copied().filter(|&b| !used[b]).map(|b| (b, deviation(b))).min_by(|x, y| x.1.total_cmp(&y.1)) {
            Some((b, d)) if d < tol => {
                used[b] = true;
                max_deviation = max_deviation.max(d);
            }
            Some((_, d)) => unmatched.push(format!("{row} (nearest numeric character off by {d:.3e})")),
            None => unmatched.push(format!("{row} (no numeric spin characters left)")),
        }
    }

    OracleReport {
        group: table.group.clone(),
        n: table.n,
        order: group.order(),
        classes: classes.len(),
        extra_split,
        missing_split,
        numeric_spin_rows: spin.len(),
        formula_rows: table.rows.len(),
        unmatched,
        max_deviation,
        tolerance: tol,
    }
}
