use spinwreath::cyclotomic::RadicalValue;
use spinwreath::gamma::builtin;
use spinwreath::oracle::{
    compare, conjugacy_classes, numeric_character_table, run_oracle_with_cap, CoverGroup, GammaModel, DEFAULT_CAP,
};
use spinwreath::wreath::{full_table, ClassKind, SpinTable};

const TOL: f64 = 1e-8;

#[test]
fn oracle_agrees_beyond_the_required_range() {
    let cases = [
        ("trivial", 5),
        ("trivial", 6),
        ("z2", 3),
        ("z2", 4),
        ("z3", 2),
        ("z3", 3),
        ("z4", 2),
        ("klein4", 2),
        ("s3", 2),
        ("s3", 3),
        ("d4", 2),
    ];
    for (name, n) in cases {
        let gd = builtin(name).unwrap();
        let r = run_oracle_with_cap(&gd, n, 3, TOL, DEFAULT_CAP).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn seeds_do_not_matter() {
    let gd = builtin("z3").unwrap();
    for seed in [0, 1, 99, u64::MAX] {
        assert!(run_oracle_with_cap(&gd, 2, seed, TOL, DEFAULT_CAP).unwrap().passed());
    }
}

fn compare_with(name: &str, n: u32, edit: impl Fn(&mut SpinTable)) -> bool {
    let gd = builtin(name).unwrap();
    let mut t = full_table(n, &gd).unwrap();
    edit(&mut t);
    let mut g = CoverGroup::new(GammaModel::builtin(&gd).unwrap(), n as usize);
    let (classes, class_of) = conjugacy_classes(&mut g);
    let numeric = numeric_character_table(&mut g, &classes, &class_of, 5).unwrap();
    compare(&t, &mut g, &classes, &class_of, &numeric, TOL).passed()
}

#[test]
fn a_corrupted_cell_is_detected() {
    assert!(compare_with("z2", 3, |_| {}));
    assert!(!compare_with("z2", 3, |t| t.values[0][0] = &t.values[0][0] + &RadicalValue::one()));
}

#[test]
fn a_flipped_split_class_is_detected() {
    // negating one SP¹ column is what a wrong sign convention for D⁺ produces;
    // for Γ trivial it only swaps associates, so those cases cannot tell
    for (name, n) in [("z2", 2), ("z2", 3), ("z3", 2), ("s3", 2)] {
        let flipped = compare_with(name, n, |t| {
            let c = t.columns.iter().rposition(|c| c.kind == ClassKind::Sp1).unwrap();
            for row in t.values.iter_mut() {
                row[c] = -&row[c];
            }
        });
        assert!(!flipped, "{name} n={n}");
    }
}

#[test]
fn a_missing_column_is_detected() {
    assert!(!compare_with("z2", 2, |t| {
        t.columns.pop();
        for row in t.values.iter_mut() {
            row.pop();
        }
    }));
}
