//! The finite group Γ, given by its classes, centralizer orders and an exact
//! character table.

mod builtin;

pub use builtin::{builtin, BUILTIN_NAMES};

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycloNumber;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub label: String,
    pub centralizer: u64,
}

/// Validated group data. Class 0 is the identity and character 0 is trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    name: String,
    order: u64,
    conductor: u32,
    classes: Vec<ClassInfo>,
    /// `characters[i][c]` = γ_i(c).
    characters: Vec<Vec<CycloNumber>>,
}

/// On-disk form: cells are lists of `[exponent, numerator, denominator]`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    name: String,
    order: u64,
    conductor: u32,
    classes: Vec<ClassInfo>,
    characters: Vec<Vec<Vec<(i64, i64, i64)>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub items: Vec<CheckItem>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| !i.passed)
    }

    fn push(&mut self, name: &'static str, failure: Option<String>) {
        let passed = failure.is_none();
        self.items.push(CheckItem { name, passed, detail: failure.unwrap_or_else(|| "ok".into()) });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let tag = if item.passed { "pass" } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", item.name, item.detail)?;
        }
        Ok(())
    }
}

impl GroupData {
    /// Assembles group data without validating it. See [`GroupData::new`].
    pub fn new_unchecked(
        name: impl Into<String>,
        order: u64,
        conductor: u32,
        classes: Vec<ClassInfo>,
        characters: Vec<Vec<CycloNumber>>,
    ) -> Self {
        GroupData { name: name.into(), order, conductor, classes, characters }
    }

    /// Assembles and validates; fails with the first violated invariant.
    pub fn new(
        name: impl Into<String>,
        order: u64,
        conductor: u32,
        classes: Vec<ClassInfo>,
        characters: Vec<Vec<CycloNumber>>,
    ) -> Result<Self> {
        let g = Self::new_unchecked(name, order, conductor, classes, characters);
        let report = g.validate();
        match report.first_failure() {
            None => Ok(g),
            Some(item) => Err(Error::Validation(format!("{}: {}", item.name, item.detail))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// N_Γ as declared.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// lcm(4, N_Γ): the field holding every spin character value.
    pub fn field_conductor(&self) -> u32 {
        self.conductor.lcm(&4)
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn zeta(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.centralizer).collect()
    }

    pub fn characters(&self) -> &[Vec<CycloNumber>] {
        &self.characters
    }

    pub fn value(&self, character: usize, class: usize) -> &CycloNumber {
        &self.characters[character][class]
    }

    pub fn degree(&self, character: usize) -> u64 {
        self.characters[character][0]
            .as_rational()
            .and_then(|q| q.to_integer().to_u64())
            .expect("validated degrees are positive integers")
    }

    /// Checks every structural invariant and reports each one.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let k = self.classes.len();

        let shape = if k == 0 {
            Some("no classes".to_string())
        } else if self.characters.len() != k {
            Some(format!("{} characters for {k} classes", self.characters.len()))
        } else {
            self.characters
                .iter()
                .position(|row| row.len() != k)
                .map(|i| format!("character {i} has {} values for {k} classes", self.characters[i].len()))
        };
        let shape_ok = shape.is_none();
        report.push("table shape", shape);
        if !shape_ok {
            return report;
        }

        report.push(
            "conductor",
            self.characters.iter().enumerate().find_map(|(i, row)| {
                row.iter().enumerate().find_map(|(c, v)| {
                    (!self.conductor.is_multiple_of(v.conductor()) && !v.is_zero())
                        .then(|| format!("γ{i}(c{c}) needs conductor {}", v.conductor()))
                })
            }),
        );

        let divides = self.classes.iter().all(|c| c.centralizer > 0 && self.order.is_multiple_of(c.centralizer));
        let class_eq = if !divides {
            Some("a centralizer order does not divide |Γ|".to_string())
        } else {
            let total: u64 = self.classes.iter().map(|c| self.order / c.centralizer).sum();
            (total != self.order).then(|| format!("class sizes sum to {total}, not |Γ| = {}", self.order))
        };
        report.push("class equation", class_eq);

        report.push(
            "identity class",
            (self.classes[0].centralizer != self.order)
                .then(|| format!("ζ of class 0 is {}, not |Γ| = {}", self.classes[0].centralizer, self.order)),
        );

        report.push(
            "trivial character",
            self.characters[0]
                .iter()
                .position(|v| !v.is_one())
                .map(|c| format!("γ0(c{c}) = {}", self.characters[0][c])),
        );

        report.push(
            "degrees",
            self.characters.iter().enumerate().find_map(|(i, row)| {
                let ok = row[0].as_rational().is_some_and(|q| q.is_integer() && q > BigRational::zero());
                (!ok).then(|| format!("γ{i}(1) = {} is not a positive integer", row[0]))
            }),
        );

        if !divides {
            return report;
        }
        let inv_zeta: Vec<BigRational> =
            self.classes.iter().map(|c| BigRational::new(1.into(), BigInt::from(c.centralizer))).collect();
        let mut rows = None;
        'rows: for i in 0..k {
            for j in i..k {
                let mut s = CycloNumber::zero(1);
                for ((a, b), w) in self.characters[i].iter().zip(&self.characters[j]).zip(&inv_zeta) {
                    s += &(a * &b.conj()).scale(w);
                }
                let want = if i == j { 1 } else { 0 };
                if s != CycloNumber::integer(1, want) {
                    rows = Some(format!("rows {i},{j} not orthogonal: inner product {s}"));
                    break 'rows;
                }
            }
        }
        report.push("row orthogonality", rows);

        let mut cols = None;
        'cols: for c in 0..k {
            for d in c..k {
                let mut s = CycloNumber::zero(1);
                for row in &self.characters {
                    s += &(&row[c] * &row[d].conj());
                }
                let want = if c == d { self.classes[c].centralizer as i64 } else { 0 };
                if s != CycloNumber::integer(1, want) {
                    cols = Some(format!("columns {c},{d}: sum {s}, expected {want}"));
                    break 'cols;
                }
            }
        }
        report.push("column orthogonality", cols);
        report
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GroupFile = serde_json::from_str(text).map_err(|e| Error::MalformedGroup(e.to_string()))?;
        if file.conductor == 0 {
            return Err(Error::MalformedGroup("conductor must be positive".into()));
        }
        let characters = file
            .characters
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| {
                        let terms: Vec<_> =
                            cell.iter().map(|&(e, n, d)| (e, BigInt::from(n), BigInt::from(d))).collect();
                        CycloNumber::from_terms(file.conductor, &terms)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GroupData::new(file.name, file.order, file.conductor, file.classes, characters)
    }

    pub fn load_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Loads a builtin by name, or else reads a group file at that path.
    pub fn load(source: &str) -> Result<Self> {
        match builtin(source) {
            Ok(g) => Ok(g),
            Err(Error::UnknownGroup(_)) if Path::new(source).exists() => Self::load_file(Path::new(source)),
            Err(e) => Err(e),
        }
    }

    /// Canonical, byte-stable JSON.
    pub fn to_json(&self) -> Result<String> {
        let cell = |v: &CycloNumber| -> Result<Vec<(i64, i64, i64)>> {
            v.lift(self.conductor)
                .to_terms()
                .into_iter()
                .map(|(e, n, d)| match (n.to_i64(), d.to_i64()) {
                    (Some(n), Some(d)) => Ok((e, n, d)),
                    _ => Err(Error::Serialization(format!("coefficient {n}/{d} exceeds 64 bits"))),
                })
                .collect()
        };
        let characters = self
            .characters
            .iter()
            .map(|row| row.iter().map(cell).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let file = GroupFile {
            name: self.name.clone(),
            order: self.order,
            conductor: self.conductor,
            classes: self.classes.clone(),
            characters,
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }
}
