//! Table output: a JSON document with a fixed schema, CSV and LaTeX.
//! Exact cells use the value grammar accepted by `RadicalValue::from_str`.

use num_bigint::BigUint;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::RadicalValue;
use crate::error::{Error, Result};
use crate::gamma::{ClassInfo, GroupData};
use crate::partitions::Pvf;
use crate::wreath::{ClassKind, SpinRowLabel, SpinTable, SplitClassLabel};

pub const SCHEMA: &str = "spinwreath.table/1";
pub const DEFAULT_PRECISION: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellMode {
    Exact,
    /// Significant digits.
    Numeric(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSummary {
    pub name: String,
    pub order: u64,
    pub conductor: u32,
    pub classes: Vec<ClassInfo>,
    pub characters: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowEntry {
    pub label: String,
    /// One strict partition per irreducible character of Γ.
    pub lambda: Pvf,
    pub associate: bool,
    pub degree: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnEntry {
    pub label: String,
    /// One partition per conjugacy class of Γ.
    pub rho: Pvf,
    pub kind: ClassKind,
    pub z: String,
    pub z_tilde: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub schema: String,
    pub group: GroupSummary,
    pub n: u32,
    /// Values lie in Q(ζ_N)(√r : r squarefree) with this N.
    pub field_conductor: u32,
    /// "exact" or "numeric".
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
    pub rows: Vec<RowEntry>,
    pub columns: Vec<ColumnEntry>,
    /// values[row][column] at D⁺; the value at D⁻ is the negative.
    pub values: Vec<Vec<String>>,
}

/// `x` with `digits` significant digits, without exponent when practical.
pub fn fmt_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        return format!("{m}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn fmt_complex(z: Complex64, digits: usize) -> String {
    let eps = 1e-12 * z.norm().max(1.0);
    let re = if z.re.abs() < eps { 0.0 } else { z.re };
    let im = if z.im.abs() < eps { 0.0 } else { z.im };
    let imag = |v: f64| {
        let s = fmt_significant(v.abs(), digits);
        if s == "1" {
            "i".to_string()
        } else {
            format!("{s}i")
        }
    };
    match (re == 0.0, im == 0.0) {
        (_, true) => fmt_significant(re, digits),
        (true, false) => format!("{}{}", if im < 0.0 { "-" } else { "" }, imag(im)),
        (false, false) => {
            format!("{}{}{}", fmt_significant(re, digits), if im < 0.0 { "-" } else { "+" }, imag(im))
        }
    }
}

fn cell(v: &RadicalValue, mode: CellMode) -> String {
    match mode {
        CellMode::Exact => v.to_string(),
        CellMode::Numeric(p) => fmt_complex(v.to_complex(), p),
    }
}

pub fn row_label(r: &SpinRowLabel) -> String {
    r.to_string()
}

pub fn column_label(c: &SplitClassLabel) -> String {
    c.rho.to_string()
}

impl TableDocument {
    pub fn build(table: &SpinTable, gd: &GroupData, mode: CellMode) -> Result<Self> {
        let rows = table
            .rows
            .iter()
            .enumerate()
            .map(|(a, r)| {
                Ok(RowEntry {
                    label: row_label(r),
                    lambda: r.lambda.clone(),
                    associate: r.associate,
                    degree: table.degree(a)?.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let columns = table
            .columns
            .iter()
            .map(|c| ColumnEntry {
                label: column_label(c),
                rho: c.rho.clone(),
                kind: c.kind,
                z: c.z.to_string(),
                z_tilde: c.z_tilde.to_string(),
            })
            .collect();
        let values = table.values.iter().map(|r| r.iter().map(|v| cell(v, mode)).collect()).collect();
        Ok(TableDocument {
            schema: SCHEMA.into(),
            group: GroupSummary {
                name: gd.name().to_string(),
                order: gd.order(),
                conductor: gd.conductor(),
                classes: gd.classes().to_vec(),
                characters: gd.characters().len(),
            },
            n: table.n,
            field_conductor: table.conductor,
            mode: match mode {
                CellMode::Exact => "exact".into(),
                CellMode::Numeric(_) => "numeric".into(),
            },
            precision: match mode {
                CellMode::Exact => None,
                CellMode::Numeric(p) => Some(p),
            },
            rows,
            columns,
            values,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TableDocument = serde_json::from_str(text)?;
        if doc.schema != SCHEMA {
            return Err(Error::Serialization(format!("unknown schema `{}`", doc.schema)));
        }
        let shape_ok = doc.values.len() == doc.rows.len() && doc.values.iter().all(|r| r.len() == doc.columns.len());
        if !shape_ok {
            return Err(Error::Serialization("value grid does not match rows × columns".into()));
        }
        Ok(doc)
    }

    /// Rebuilds the exact table. Only meaningful for exact documents.
    pub fn to_table(&self) -> Result<SpinTable> {
        if self.mode != "exact" {
            return Err(Error::Serialization("numeric documents do not carry exact values".into()));
        }
        let parse_big = |s: &str| -> Result<BigUint> {
            s.parse().map_err(|_| Error::Serialization(format!("bad centralizer order `{s}`")))
        };
        let columns = self
            .columns
            .iter()
            .map(|c| {
                Ok(SplitClassLabel {
                    rho: c.rho.clone(),
                    kind: c.kind,
                    z: parse_big(&c.z)?,
                    z_tilde: parse_big(&c.z_tilde)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rows =
            self.rows.iter().map(|r| SpinRowLabel { lambda: r.lambda.clone(), associate: r.associate }).collect();
        let values = self
            .values
            .iter()
            .map(|r| r.iter().map(|v| v.parse::<RadicalValue>()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(SpinTable {
            n: self.n,
            group: self.group.name.clone(),
            conductor: self.field_conductor,
            group_order: self.group.order,
            rows,
            columns,
            values,
        })
    }
}

/// Four header lines (ρ, kind, Z, Z̃) followed by one line per row.
pub fn to_csv(table: &SpinTable, mode: CellMode) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = |name: &str, f: &dyn Fn(&SplitClassLabel) -> String| {
        std::iter::once(name.to_string()).chain(table.columns.iter().map(f)).collect::<Vec<_>>()
    };
    let ser = |e: csv::Error| Error::Serialization(e.to_string());
    w.write_record(header("rho", &column_label)).map_err(ser)?;
    w.write_record(header("kind", &|c| format!("{:?}", c.kind).to_uppercase())).map_err(ser)?;
    w.write_record(header("Z", &|c| c.z.to_string())).map_err(ser)?;
    w.write_record(header("Z~", &|c| c.z_tilde.to_string())).map_err(ser)?;
    for (r, row) in table.rows.iter().enumerate() {
        let rec: Vec<String> =
            std::iter::once(row_label(row)).chain(table.values[r].iter().map(|v| cell(v, mode))).collect();
        w.write_record(rec).map_err(ser)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
}

fn latex_pvf(p: &Pvf) -> String {
    let blocks: Vec<String> =
        p.blocks().iter().map(|b| if b.is_empty() { "\\emptyset".to_string() } else { b.to_string() }).collect();
    blocks.join(" \\mid ")
}

#[derive(Debug, PartialEq)]
enum Tok {
    Int(String),
    Sym(char),
    Sqrt(String),
    Zeta(String, Option<String>),
    I,
}

fn tokenize(s: &str) -> Vec<Tok> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        s[start..*i].to_string()
    };
    while i < b.len() {
        match b[i] {
            b' ' => i += 1,
            c if c.is_ascii_digit() => out.push(Tok::Int(digits(&mut i))),
            _ if s[i..].starts_with("sqrt(") => {
                i += 5;
                let r = digits(&mut i);
                i += 1;
                out.push(Tok::Sqrt(r));
            }
            _ if s[i..].starts_with("zeta") => {
                i += 4;
                let n = digits(&mut i);
                let k = if b.get(i) == Some(&b'^') {
                    i += 1;
                    Some(digits(&mut i))
                } else {
                    None
                };
                out.push(Tok::Zeta(n, k));
            }
            b'i' => {
                out.push(Tok::I);
                i += 1;
            }
            c => {
                out.push(Tok::Sym(c as char));
                i += 1;
            }
        }
    }
    out
}

/// LaTeX math for an exact cell: fractions as \frac, roots as \sqrt.
pub fn latex_value(v: &RadicalValue) -> String {
    let toks = tokenize(&v.to_string());
    let mut out = String::new();
    let mut k = 0;
    while k < toks.len() {
        let frac = |a: usize| match (toks.get(a), toks.get(a + 1), toks.get(a + 2)) {
            (Some(Tok::Int(p)), Some(Tok::Sym('/')), Some(Tok::Int(q))) => Some(format!("\\frac{{{p}}}{{{q}}}")),
            _ => None,
        };
        if toks[k] == Tok::Sym('(') && toks.get(k + 4) == Some(&Tok::Sym(')')) {
            if let Some(f) = frac(k + 1) {
                out.push_str(&f);
                k += 5;
                continue;
            }
        }
        if let Some(f) = frac(k) {
            out.push_str(&f);
            k += 3;
            continue;
        }
        match &toks[k] {
            Tok::Int(p) => out.push_str(p),
            Tok::Sqrt(r) => out.push_str(&format!("\\sqrt{{{r}}}")),
            Tok::Zeta(n, None) => out.push_str(&format!("\\zeta_{{{n}}}")),
            Tok::Zeta(n, Some(e)) => out.push_str(&format!("\\zeta_{{{n}}}^{{{e}}}")),
            Tok::I => out.push('i'),
            Tok::Sym('*') => {}
            Tok::Sym('(') => out.push_str("\\left("),
            Tok::Sym(')') => out.push_str("\\right)"),
            Tok::Sym(c) => {
                if out.is_empty() {
                    out.push(*c);
                } else {
                    out.push_str(&format!(" {c} "));
                }
            }
        }
        k += 1;
    }
    out
}

pub fn to_latex(table: &SpinTable, mode: CellMode) -> String {
    let mut s = String::new();
    s.push_str("\\begin{table}[ht]\n\\centering\n");
    s.push_str(&format!(
        "\\caption{{Spin characters of $\\widetilde{{\\Gamma}}_{{{}}}$, $\\Gamma = $ \\texttt{{{}}}}}\n",
        table.n, table.group
    ));
    s.push_str(&format!("\\begin{{tabular}}{{l|{}}}\n", "c".repeat(table.columns.len())));
    let heads: Vec<String> = table.columns.iter().map(|c| format!("${}$", latex_pvf(&c.rho))).collect();
    s.push_str(&format!("$\\lambda \\backslash \\rho$ & {} \\\\\n", heads.join(" & ")));
    let kinds: Vec<String> = table.columns.iter().map(|c| format!("{:?}", c.kind).to_uppercase()).collect();
    s.push_str(&format!(" & {} \\\\\n\\hline\n", kinds.join(" & ")));
    for (r, row) in table.rows.iter().enumerate() {
        let label = format!("${}{}$", latex_pvf(&row.lambda), if row.associate { "'" } else { "" });
        let cells: Vec<String> = table.values[r]
            .iter()
            .map(|v| match mode {
                CellMode::Exact => format!("${}$", latex_value(v)),
                CellMode::Numeric(p) => format!("${}$", fmt_complex(v.to_complex(), p)),
            })
            .collect();
        s.push_str(&format!("{label} & {} \\\\\n", cells.join(" & ")));
    }
    s.push_str("\\end{tabular}\n\\end{table}\n");
    s
}

pub fn render(table: &SpinTable, gd: &GroupData, format: Format, mode: CellMode) -> Result<String> {
    match format {
        Format::Json => TableDocument::build(table, gd, mode)?.to_json(),
        Format::Csv => to_csv(table, mode),
        Format::Latex => Ok(to_latex(table, mode)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::builtin;
    use crate::wreath::full_table;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_significant(std::f64::consts::FRAC_1_SQRT_2, 10), "0.7071067812");
        assert_eq!(fmt_significant(-2.0, 10), "-2");
        assert_eq!(fmt_significant(123.45, 3), "123");
        assert_eq!(fmt_significant(1234.5, 3), "1.23e3");
        assert_eq!(fmt_significant(1.5e-9, 4), "1.5e-9");
        assert_eq!(fmt_complex(Complex64::new(0.0, -1.0), 10), "-i");
        assert_eq!(fmt_complex(Complex64::new(-0.5, 0.8660254037844386), 6), "-0.5+0.866025i");
    }

    #[test]
    fn latex_cells() {
        let half = RadicalValue::sqrt(2).scale_rational(&num_rational::BigRational::new(1.into(), 2.into()));
        assert_eq!(latex_value(&half), "\\frac{1}{2}\\sqrt{2}");
        assert_eq!(latex_value(&-&RadicalValue::i()), "-i");
        assert_eq!(latex_value(&RadicalValue::sqrt(15).scale_int(&2.into())), "2\\sqrt{15}");
    }

    #[test]
    fn json_round_trip() {
        let gd = builtin("z3").unwrap();
        let t = full_table(2, &gd).unwrap();
        let doc = TableDocument::build(&t, &gd, CellMode::Exact).unwrap();
        let text = doc.to_json().unwrap();
        let back = TableDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        let t2 = back.to_table().unwrap();
        assert_eq!(t2.values, t.values);
        assert_eq!(t2.columns, t.columns);
        assert_eq!(t2.rows, t.rows);
    }

    #[test]
    fn csv_shape() {
        let gd = builtin("z2").unwrap();
        let t = full_table(2, &gd).unwrap();
        let text = to_csv(&t, CellMode::Exact).unwrap();
        let mut rd = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
        let recs: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
        assert_eq!(recs.len(), 4 + 5);
        assert!(recs.iter().all(|r| r.len() == 6));
        assert_eq!(&recs[0][1], "(1,1)|()");
    }
}
