use std::process::{Command, Output};

use lk_cohomology::cli::{DimCell, DimsTable};
use proptest::prelude::*;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lk-cohomology")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dims_json_and_csv_round_trip() {
    let json = cli(&["dims", "--n-max", "14", "--format", "json"]);
    assert_eq!(json.status.code(), Some(0));
    let table = DimsTable::from_json(&stdout(&json)).unwrap();
    assert!(table.cells.contains(&DimCell { n: 12, q: 2, dim: 3 }));
    assert_eq!(table.to_json() + "\n", stdout(&json));

    let csv = cli(&["dims", "--n-max", "14", "--format", "csv"]);
    let parsed = DimsTable::from_csv(&stdout(&csv), 1).unwrap();
    assert_eq!(parsed, table);
    assert_eq!(parsed.to_csv(), stdout(&csv));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--n-max", "9", "--seed", "11", "--format", "json"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn worker_count_does_not_change_tables() {
    for cmd in ["dims", "basis", "poincare"] {
        let one = cli(&[cmd, "--k", "0", "--n-max", "16", "--format", "json", "--jobs", "1"]);
        let four = cli(&[cmd, "--k", "0", "--n-max", "16", "--format", "json", "--jobs", "4"]);
        assert_eq!(one.stdout, four.stdout, "{cmd}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["dims", "--k", "-3"]).status.code(), Some(2));
    assert_eq!(cli(&["dims", "--bogus"]).status.code(), Some(2));
    assert_eq!(cli(&["verify", "--n-max", "0"]).status.code(), Some(0));
    let faulty = cli(&["verify", "--n-max", "8", "--inject-fault"]);
    assert_eq!(faulty.status.code(), Some(1));
    assert!(stdout(&faulty).contains("FAIL"));
}

#[test]
fn dims_at_degree_zero_is_empty_for_l1() {
    let out = cli(&["dims", "--n-max", "0", "--format", "json"]);
    let table = DimsTable::from_json(&stdout(&out)).unwrap();
    assert!(table.cells.is_empty());
}

#[test]
fn conjecture_scan() {
    let out = cli(&["conjecture", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().last(), Some("conjecture-consistent"));
    // header, two cells, verdict
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn extension_cocycles() {
    let out = cli(&["extensions", "--n-max", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["extensions"][1]["n"], 4);
    assert_eq!(v["extensions"][1]["cocycles"].as_array().unwrap().len(), 2);
    assert_eq!(v["extensions"][1]["cocycles"][1]["terms"], serde_json::json!([[-1, 5], [1, 3]]));
}

#[test]
fn poincare_matches_formula() {
    let out = cli(&["poincare", "--n-max", "20", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().skip(1).all(|l| l.ends_with(",true")));
}

fn arb_table() -> impl Strategy<Value = DimsTable> {
    (-1i32..6, prop::collection::vec((0i32..60, 1usize..12, 0usize..500), 0..40)).prop_map(|(k, cells)| DimsTable {
        k,
        cells: cells.into_iter().map(|(n, q, dim)| DimCell { n, q, dim }).collect(),
    })
}

proptest! {
    #[test]
    fn tables_round_trip(table in arb_table()) {
        prop_assert_eq!(DimsTable::from_json(&table.to_json()).unwrap(), table.clone());
        prop_assert_eq!(DimsTable::from_csv(&table.to_csv(), table.k).unwrap(), table);
    }
}
