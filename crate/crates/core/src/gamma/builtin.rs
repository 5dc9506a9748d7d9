use super::{ClassInfo, GroupData};
use crate::cyclotomic::CycloNumber;
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [&str; 7] = ["trivial", "z2", "z3", "z4", "klein4", "s3", "d4"];

fn classes(items: &[(&str, u64)]) -> Vec<ClassInfo> {
    items.iter().map(|&(label, centralizer)| ClassInfo { label: label.into(), centralizer }).collect()
}

fn rational_rows(conductor: u32, rows: &[&[i64]]) -> Vec<Vec<CycloNumber>> {
    rows.iter().map(|r| r.iter().map(|&v| CycloNumber::integer(conductor, v)).collect()).collect()
}

/// χ_k(a^j) = ζ_m^{jk}.
fn cyclic(m: u32) -> GroupData {
    let labels: Vec<String> = (0..m)
        .map(|j| match j {
            0 => "1".into(),
            1 => "a".into(),
            _ => format!("a^{j}"),
        })
        .collect();
    let cls = labels.into_iter().map(|label| ClassInfo { label, centralizer: m as u64 }).collect();
    let chars = (0..m as i64).map(|k| (0..m as i64).map(|j| CycloNumber::zeta_power(m, j * k)).collect()).collect();
    GroupData::new_unchecked(format!("z{m}"), m as u64, m, cls, chars)
}

/// Builtin groups. Class 0 is always the identity.
pub fn builtin(name: &str) -> Result<GroupData> {
    let g = match name {
        "trivial" => GroupData::new_unchecked("trivial", 1, 1, classes(&[("1", 1)]), rational_rows(1, &[&[1]])),
        "z2" => {
            GroupData::new_unchecked("z2", 2, 1, classes(&[("1", 2), ("a", 2)]), rational_rows(1, &[&[1, 1], &[1, -1]]))
        }
        "z3" => cyclic(3),
        "z4" => cyclic(4),
        "klein4" => GroupData::new_unchecked(
            "klein4",
            4,
            1,
            classes(&[("1", 4), ("a", 4), ("b", 4), ("ab", 4)]),
            rational_rows(1, &[&[1, 1, 1, 1], &[1, -1, 1, -1], &[1, 1, -1, -1], &[1, -1, -1, 1]]),
        ),
        "s3" => GroupData::new_unchecked(
            "s3",
            6,
            1,
            classes(&[("1", 6), ("(12)", 2), ("(123)", 3)]),
            rational_rows(1, &[&[1, 1, 1], &[1, -1, 1], &[2, 0, -1]]),
        ),
        "d4" => GroupData::new_unchecked(
            "d4",
            8,
            1,
            classes(&[("1", 8), ("r^2", 8), ("r", 4), ("s", 4), ("rs", 4)]),
            rational_rows(
                1,
                &[&[1, 1, 1, 1, 1], &[1, 1, 1, -1, -1], &[1, 1, -1, 1, -1], &[1, 1, -1, -1, 1], &[2, -2, 0, 0, 0]],
            ),
        ),
        other => return Err(Error::UnknownGroup(other.to_string())),
    };
    Ok(g)
}
