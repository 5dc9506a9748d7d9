use std::process::{Command, Output};

use spinwreath::render::TableDocument;
use spinwreath::wreath::full_table;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spinwreath"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("SPINWREATH_ORACLE_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_json_round_trips() {
    let o = run(&["table", "--group", "s3", "--n", "2"]);
    assert!(o.status.success());
    let doc = TableDocument::from_json(&stdout(&o)).unwrap();
    let t = doc.to_table().unwrap();
    let gd = spinwreath::gamma::builtin("s3").unwrap();
    let direct = full_table(2, &gd).unwrap();
    assert_eq!(t.values, direct.values);
    assert_eq!(t.rows, direct.rows);
    assert_eq!(doc.rows.iter().map(|r| r.degree.as_str()).collect::<Vec<_>>()[..3], ["1", "1", "2"]);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "--group", "z3", "--n", "2", "--format", "json"][..],
        &["table", "--group", "d4", "--n", "2", "--format", "csv"],
        &["table", "--group", "klein4", "--n", "2", "--format", "latex", "--numeric"],
        &["oracle", "--group", "z2", "--n", "2", "--seed", "7"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn trivial_group_gives_the_schur_table() {
    let o = run(&["table", "--group", "trivial", "--n", "3", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "rho,\"(1,1,1)\",(3),\"(2,1)\"");
    assert_eq!(lines[4], "(3),2,1,0");
    assert_eq!(lines[5], "\"(2,1)\",1,-1,i");
    assert_eq!(lines[6], "\"(2,1)'\",1,-1,-i");
}

#[test]
fn z2_csv_grid_is_five_by_five() {
    let o = run(&["table", "--group", "z2", "--n", "2", "--format", "csv"]);
    assert!(o.status.success());
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(o.stdout.as_slice());
    let records: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), 4 + 5);
    assert!(records.iter().all(|r| r.len() == 1 + 5));
    assert_eq!(&records[4][0], "(2)|()");
    assert_eq!(&records[1][4], "SP1");
}

#[test]
fn numeric_mode_respects_precision() {
    let o = run(&["table", "--group", "trivial", "--n", "4", "--format", "csv", "--numeric", "--precision", "4"]);
    assert!(stdout(&o).contains("1.414"));
    let o = run(&["table", "--group", "trivial", "--n", "4", "--format", "csv", "--numeric"]);
    assert!(stdout(&o).contains("1.414213562"));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.tex");
    let o = run(&["table", "--group", "z2", "--n", "2", "--format", "latex", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let tex = std::fs::read_to_string(path).unwrap();
    assert!(tex.contains("\\begin{tabular}"));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(run(&["table", "--group", "z2", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--group", "z7", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--group", "z2", "--n", "2", "--format", "xml"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let gd = spinwreath::gamma::builtin("s3").unwrap();
    let corrupted = gd.to_json().unwrap().replacen("\"order\": 6", "\"order\": 7", 1);
    assert_ne!(corrupted, gd.to_json().unwrap());
    std::fs::write(&path, corrupted).unwrap();
    assert_eq!(run(&["check", "--group", path.to_str().unwrap(), "--n", "2"]).status.code(), Some(2));
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["table", "--group", path.to_str().unwrap(), "--n", "2"]).status.code(), Some(2));
}

#[test]
fn group_file_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d4.json");
    std::fs::write(&path, spinwreath::gamma::builtin("d4").unwrap().to_json().unwrap()).unwrap();
    let from_file = run(&["table", "--group", path.to_str().unwrap(), "--n", "2"]);
    let builtin = run(&["table", "--group", "d4", "--n", "2"]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, builtin.stdout);
}

#[test]
fn check_passes_on_examples() {
    for (g, n) in [("s3", "2"), ("z2", "3")] {
        let o = run(&["check", "--group", g, "--n", n]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(report["group"], g);
    }
}

#[test]
fn oracle_exit_codes() {
    assert_eq!(run(&["oracle", "--group", "z2", "--n", "2", "--seed", "7", "--tol", "1e-8"]).status.code(), Some(0));
    assert_eq!(run(&["oracle", "--group", "trivial", "--n", "4", "--seed", "1"]).status.code(), Some(0));
    assert_eq!(run(&["oracle", "--group", "s3", "--n", "4"]).status.code(), Some(4));
    let capped =
        bin().args(["oracle", "--group", "z2", "--n", "2"]).env("SPINWREATH_ORACLE_CAP", "10").output().unwrap();
    assert_eq!(capped.status.code(), Some(4));
    let raised =
        bin().args(["oracle", "--group", "z2", "--n", "1"]).env("SPINWREATH_ORACLE_CAP", "100000").output().unwrap();
    assert_eq!(raised.status.code(), Some(0));
}
