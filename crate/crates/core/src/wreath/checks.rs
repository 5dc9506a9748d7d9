use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::table::ClassSubset;
use super::{j_set, ClassKind, Evaluator, SpinTable};
use crate::cyclotomic::{CycloNumber, RadicalValue};
use crate::error::Result;
use crate::gamma::GroupData;
use crate::partitions::{enumerate_pvf, Partition, Pvf, PvfKind};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Reported but not counted toward the verdict.
    pub informational: bool,
    pub detail: String,
}

/// A (λ, ρ) whose decompositions carry different color products.
#[derive(Clone, Debug, Serialize)]
pub struct ColorProductFlag {
    pub row: String,
    pub column: String,
    pub products: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub group: String,
    pub n: u32,
    pub items: Vec<CheckOutcome>,
    pub color_product_flags: Vec<ColorProductFlag>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed || i.informational)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.items.iter().find(|i| !i.passed && !i.informational)
    }

    fn push(&mut self, name: &'static str, failure: Option<String>, ok: String) {
        let passed = failure.is_none();
        self.items.push(CheckOutcome { name, passed, informational: false, detail: failure.unwrap_or(ok) });
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            let tag = match (i.passed, i.informational) {
                (true, _) => "pass",
                (false, true) => "note",
                (false, false) => "FAIL",
            };
            writeln!(f, "{tag} {}: {}", i.name, i.detail)?;
        }
        for flag in &self.color_product_flags {
            writeln!(f, "note color products differ at {} / {}: {}", flag.row, flag.column, flag.products.join(", "))?;
        }
        Ok(())
    }
}

fn half() -> RadicalValue {
    RadicalValue::rational(BigRational::new(1.into(), 2.into()))
}

/// Whether some assignment of the colored parts of ρ to blocks meets the
/// support conditions of an SP¹ evaluation. Exhaustive over labeled
/// assignments, independent of the decomposition enumerator.
pub fn support_exists(lambda: &Pvf, rho: &Pvf) -> bool {
    let parts: Vec<(u32, usize)> =
        rho.blocks().iter().enumerate().flat_map(|(c, b)| b.parts().iter().map(move |&len| (len, c))).collect();
    let k = lambda.colors();
    let j = j_set(lambda);
    let mut assignment = vec![0usize; parts.len()];
    loop {
        let ok = (0..k).all(|g| {
            let mine: Vec<(u32, usize)> =
                parts.iter().zip(&assignment).filter(|(_, &a)| a == g).map(|(p, _)| *p).collect();
            let target = lambda.block(g);
            if target.is_empty() {
                return mine.is_empty();
            }
            let shape = Partition::from_unsorted(mine.iter().map(|p| p.0).collect());
            if j.contains(&g) {
                return &shape == target;
            }
            let mut per_color = vec![Vec::new(); rho.colors()];
            for (len, c) in &mine {
                per_color[*c].push(*len);
            }
            let strict = per_color.into_iter().all(|v| Partition::from_unsorted(v).is_strict());
            strict && shape.has_odd_parts() && shape.weight() == target.weight()
        });
        if ok {
            return true;
        }
        let mut i = assignment.len();
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < k {
                break;
            }
            assignment[i] = 0;
        }
    }
}

/// Runs every table invariant. The verdict ignores informational items.
pub fn run_checks(table: &SpinTable, gd: &GroupData) -> Result<CheckReport> {
    let mut report =
        CheckReport { group: table.group.clone(), n: table.n, items: Vec::new(), color_product_flags: Vec::new() };
    let nrows = table.rows.len();

    let mut bad = None;
    'outer: for a in 0..nrows {
        for b in a..nrows {
            let ip = table.inner_product(a, b, ClassSubset::All);
            let want = if a == b { RadicalValue::one() } else { RadicalValue::zero() };
            if ip != want {
                bad = Some(format!("⟨{}, {}⟩ = {ip}", table.rows[a], table.rows[b]));
                break 'outer;
            }
        }
    }
    report.push("orthonormality", bad, format!("{nrows} rows orthonormal"));

    let mut bad = None;
    let mut count = 0;
    for (a, row) in table.rows.iter().enumerate() {
        if row.lambda.is_odd_parity() {
            count += 1;
            let op = table.inner_product(a, a, ClassSubset::Op);
            let sp = table.inner_product(a, a, ClassSubset::Sp1);
            if op != half() || sp != half() {
                bad = Some(format!("{row}: OP part {op}, SP1 part {sp}"));
                break;
            }
        }
    }
    report.push("norm split", bad, format!("{count} odd rows split 1/2 + 1/2"));

    let chars = gd.characters().len();
    let sp0 = enumerate_pvf(table.n, chars, PvfKind::Sp0).len();
    let sp1 = enumerate_pvf(table.n, chars, PvfKind::Sp1).len();
    let op_cols = table.columns.iter().filter(|c| c.kind == ClassKind::Op).count();
    let sp1_cols = table.columns.len() - op_cols;
    let from_chars = sp0 + 2 * sp1;
    let from_classes = op_cols + sp1_cols;
    report.push(
        "counting identity",
        (nrows != from_chars || from_chars != from_classes)
            .then(|| format!("rows {nrows}, |SP0|+2|SP1| = {from_chars}, |OP|+|SP1| = {from_classes}")),
        format!("rows {nrows} = |SP0|+2|SP1| = |OP|+|SP1| (classes up to sign)"),
    );
    let doubled = op_cols + 2 * sp1_cols;
    report.items.push(CheckOutcome {
        name: "counting identity with doubled SP1 classes",
        passed: from_chars == doubled,
        informational: true,
        detail: format!("|SP0(chars)|+2|SP1(chars)| = {from_chars}, |OP(classes)|+2|SP1(classes)| = {doubled}"),
    });

    let mut total = BigInt::from(0);
    let mut bad = None;
    for r in 0..nrows {
        match table.degree(r) {
            Ok(d) => total += &d * &d,
            Err(e) => {
                bad = Some(e.to_string());
                break;
            }
        }
    }
    let fact: BigInt = (1..=table.n).map(BigInt::from).product();
    let target = BigInt::from(gd.order()).pow(table.n) * fact;
    if bad.is_none() && total != target {
        bad = Some(format!("Σ deg² = {total}, expected {target}"));
    }
    report.push("degree sum", bad, format!("Σ deg² = {target}"));

    let mut bad = None;
    let mut checked = 0;
    for (a, row) in table.rows.iter().enumerate() {
        for (c, col) in table.columns.iter().enumerate() {
            if col.kind != ClassKind::Sp1 {
                continue;
            }
            let must_vanish = !row.lambda.is_odd_parity() || !support_exists(&row.lambda, &col.rho);
            if must_vanish {
                checked += 1;
                if !table.values[a][c].is_zero() {
                    bad = Some(format!("{row} at {} is {}", col.rho, table.values[a][c]));
                }
            }
        }
    }
    report.push("zero pattern", bad, format!("{checked} forced zeros hold"));

    let mut bad = None;
    for (a, row) in table.rows.iter().enumerate() {
        if !row.associate {
            continue;
        }
        let Some(u) = table.rows.iter().position(|r| r.lambda == row.lambda && !r.associate) else {
            bad = Some(format!("{row} has no unprimed partner"));
            break;
        };
        for (c, col) in table.columns.iter().enumerate() {
            let want = match col.kind {
                ClassKind::Op => table.values[u][c].clone(),
                ClassKind::Sp1 => -&table.values[u][c],
            };
            if table.values[a][c] != want {
                bad = Some(format!("{row} at {}", col.rho));
            }
        }
    }
    report.push("associate rule", bad, "primed rows agree on OP and flip on SP1".into());

    let ev = Evaluator::new(gd, table.n)?;
    let mut bad = None;
    let (mut compared, mut skipped) = (0, 0);
    for (a, row) in table.rows.iter().enumerate() {
        for (c, col) in table.columns.iter().enumerate() {
            if col.kind != ClassKind::Sp1 {
                continue;
            }
            let terms = ev.terms(&row.lambda, col)?;
            let mut distinct: Vec<CycloNumber> = Vec::new();
            for t in &terms {
                if !distinct.contains(&t.color_product) {
                    distinct.push(t.color_product.clone());
                }
            }
            if distinct.len() > 1 && !row.associate {
                report.color_product_flags.push(ColorProductFlag {
                    row: row.to_string(),
                    column: col.rho.to_string(),
                    products: distinct.iter().map(ToString::to_string).collect(),
                });
            }
            if table.values[a][c].is_zero() {
                continue;
            }
            if terms.len() != 1 {
                skipped += 1;
                continue;
            }
            compared += 1;
            let t = &terms[0];
            let closed = ev.closed_form(&row.lambda, &t.blocks)?.scale_int(&BigInt::from(t.weight.clone()));
            let v = &table.values[a][c];
            if *v != closed && *v != -&closed {
                bad = Some(format!("{row} at {}: table {}, closed form {closed}", col.rho, table.values[a][c]));
            }
        }
    }
    report.push(
        "closed form",
        bad,
        format!(
            "{compared} single-decomposition values equal ±K·closed form; {skipped} multi-decomposition values skipped"
        ),
    );
    Ok(report)
}
