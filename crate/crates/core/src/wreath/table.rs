use num_bigint::BigInt;
use rayon::prelude::*;

use super::{spin_rows, split_classes, ClassKind, Evaluator, SpinRowLabel, SplitClassLabel};
use crate::cyclotomic::RadicalValue;
use crate::error::{Error, Result};
use crate::gamma::GroupData;

/// Spin character table over the D⁺ halves of the split classes.
/// The value at D⁻_ρ is the negative of the stored one.
#[derive(Clone, Debug)]
pub struct SpinTable {
    pub n: u32,
    pub group: String,
    /// lcm(4, N_Γ).
    pub conductor: u32,
    pub group_order: u64,
    pub rows: Vec<SpinRowLabel>,
    pub columns: Vec<SplitClassLabel>,
    pub values: Vec<Vec<RadicalValue>>,
}

pub fn full_table(n: u32, gd: &GroupData) -> Result<SpinTable> {
    let columns = split_classes(n, gd)?;
    let rows = spin_rows(n, gd);
    let ev = Evaluator::new(gd, n)?;
    let mut values = rows
        .par_iter()
        .map(|row| columns.iter().map(|c| ev.induced_value(row, c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    for a in 0..rows.len() {
        if rows[a].associate || !rows[a].lambda.is_odd_parity() {
            continue;
        }
        if needs_relabel(&ev, &rows[a], &columns, &values[a])? {
            values.swap(a, a + 1);
        }
    }
    Ok(SpinTable {
        n,
        group: gd.name().to_string(),
        conductor: gd.field_conductor(),
        group_order: gd.order(),
        rows,
        columns,
        values,
    })
}

/// The unprimed row of an associate pair is the one whose value at the least
/// nonzero SP¹ column is +Σ K·(closed form), the sum taken without canonical
/// signs. True when the natural evaluation gives the negative there.
fn needs_relabel(
    ev: &Evaluator,
    row: &SpinRowLabel,
    columns: &[SplitClassLabel],
    values: &[RadicalValue],
) -> Result<bool> {
    let least = columns
        .iter()
        .enumerate()
        .filter(|(c, col)| col.kind == ClassKind::Sp1 && !values[*c].is_zero())
        .min_by(|x, y| x.1.rho.cmp(&y.1.rho));
    let Some((c, col)) = least else {
        return Ok(false);
    };
    let mut closed = RadicalValue::zero();
    for t in ev.terms(&row.lambda, col)? {
        closed = &closed + &ev.closed_form_corrected(&row.lambda, &t.blocks)?.scale_int(&BigInt::from(t.weight));
    }
    Ok(values[c] != closed && values[c] == -&closed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassSubset {
    Op,
    Sp1,
    All,
}

impl SpinTable {
    /// Σ_{ρ ∈ subset} χ_a(D⁺_ρ)·conj(χ_b(D⁺_ρ)) / Z_ρ. The two halves D^± each
    /// carry |Γ̃_n| / Z̃_ρ elements, which cancels the doubling of Z̃_ρ = 2Z_ρ.
    pub fn inner_product(&self, a: usize, b: usize, subset: ClassSubset) -> RadicalValue {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| match subset {
                ClassSubset::All => true,
                ClassSubset::Op => c.kind == ClassKind::Op,
                ClassSubset::Sp1 => c.kind == ClassKind::Sp1,
            })
            .map(|(j, c)| (&self.values[a][j] * &self.values[b][j].conj()).scale_rational(&Evaluator::inverse_z(c)))
            .sum()
    }

    /// Index of the identity column (1^n) on the identity class of Γ.
    pub fn identity_column(&self) -> Option<usize> {
        self.columns
            .iter()
            .position(|c| c.rho.blocks().first().is_some_and(|b| b.len() as u32 == self.n && b.weight() == self.n))
    }

    /// χ(1) as a positive integer.
    pub fn degree(&self, row: usize) -> Result<BigInt> {
        let col = self.identity_column().ok_or_else(|| Error::Internal("no identity column".into()))?;
        let v = &self.values[row][col];
        match v.as_integer() {
            Some(d) if d > BigInt::from(0) => Ok(d),
            _ => Err(Error::NonInteger { context: format!("degree of {}", self.rows[row]), value: v.to_string() }),
        }
    }

    /// Value at D⁻_ρ.
    pub fn value_minus(&self, row: usize, col: usize) -> RadicalValue {
        -&self.values[row][col]
    }
}
