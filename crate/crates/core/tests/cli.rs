//! Command-line behavior: exit statuses, output formats, determinism.

mod common;

use std::fs;

use cayley_sudoku::cli;
use cayley_sudoku::{CayleySudokuTable, Side, Subgroup};
use common::*;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        std::iter::once("cayley-sudoku").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn exchange(group: &str, subgroup: &str, construction: &str) -> String {
    let (code, out, err) = run(&[
        "build",
        "--group",
        group,
        "--subgroup",
        subgroup,
        "--construction",
        construction,
        "--output",
        "exchange",
    ]);
    assert_eq!(code, 0, "{err}");
    out
}

#[test]
fn build_text_matches_table1() {
    let (code, out, _) = run(&["build", "--group", "Z9", "--subgroup", "3", "--construction", "1R"]);
    assert_eq!(code, 0);
    let body: Vec<&str> = out
        .lines()
        .filter(|l| l.contains("||") && !l.trim_start().starts_with("||"))
        .collect();
    assert_eq!(body.len(), 9);
    assert!(body[0].starts_with("0 ||"));
}

#[test]
fn output_is_deterministic() {
    for (g, s, c) in [
        ("S3", "(12)", "2L"),
        ("Z9", "3", "1L"),
        ("A4", "(12)(34);(13)(24)", "2R"),
    ] {
        assert_eq!(exchange(g, s, c), exchange(g, s, c));
    }
    assert_eq!(run(&["demo", "q6-left"]), run(&["demo", "q6-left"]));
}

#[test]
fn exit_statuses() {
    assert_eq!(
        run(&[
            "build",
            "--group",
            "S4",
            "--subgroup",
            "(12)(34)",
            "--construction",
            "2R"
        ])
        .0,
        3
    );
    assert_eq!(run(&["search", "--group", "S4", "--subgroup", "(12)(34)"]).0, 3);
    assert_eq!(run(&["search", "--group", "S3", "--subgroup", "(12)"]).0, 0);
    assert_eq!(
        run(&["search", "--group", "S4", "--subgroup", "(12)(34)", "--cap", "2"]).0,
        4
    );
    assert_eq!(
        run(&[
            "build",
            "--group",
            "Q9",
            "--subgroup",
            "trivial",
            "--construction",
            "1R"
        ])
        .0,
        5
    );
    assert_eq!(
        run(&["build", "--group", "S3", "--subgroup", "(1234)", "--construction", "1R"]).0,
        5
    );
    assert_eq!(run(&["frobnicate"]).0, 5);
    assert_eq!(run(&["demo", "nope"]).0, 5);
    assert_eq!(run(&["mols", "--p", "4"]).0, 5);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn bad_partition_is_a_condition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("parts.txt");
    fs::write(&path, "(1) (12) (13)\n(123) (132) (23)\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, _, err) = run(&[
        "build",
        "--group",
        "S3",
        "--subgroup",
        "(12)",
        "--construction",
        "1R",
        "--partition",
        p,
    ]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let good = exchange("S3", "(12)", "2L");
    let path = dir.path().join("t.json");
    fs::write(&path, &good).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&["verify", p]), (0, "pass\n".into(), String::new()));

    // two cells of one row swapped across column blocks
    let mut t = CayleySudokuTable::from_exchange(&good).unwrap();
    let (r, c) = (0, 0);
    let other = (0..t.size()).find(|&j| !t.col_blocks()[0].contains(&j)).unwrap();
    let (a, b) = (t.cell(r, c), t.cell(r, other));
    t.mutate_cell(r, c, b);
    t.mutate_cell(r, other, a);
    fs::write(&path, t.to_exchange()).unwrap();
    assert_eq!(run(&["verify", p]).0, 5, "body no longer matches the group");

    // a true Cayley table whose row blocks are not transversals
    let g = spec("S3");
    let s = Subgroup::generated(&g, &els(&g, &["(12)"]));
    let rows = [els(&g, &["(1)", "(12)", "(13)"]), els(&g, &["(123)", "(132)", "(23)"])];
    let cols: Vec<Vec<usize>> = s.cosets(Side::Right).into_iter().map(|c| c.listing).collect();
    let bad = CayleySudokuTable::from_blocks(&g, &rows, &cols).unwrap();
    fs::write(&path, bad.to_exchange()).unwrap();
    let (code, out, _) = run(&["verify", p]);
    assert_eq!(code, 2);
    assert!(out.starts_with("fail: "), "{out}");

    let mut doc: Value = serde_json::from_str(&good).unwrap();
    doc["body"][0][0] = Value::String("(99)".into());
    fs::write(&path, doc.to_string()).unwrap();
    assert_eq!(run(&["verify", p]).0, 5);

    fs::write(&path, "not json").unwrap();
    assert_eq!(run(&["verify", p]).0, 5);
    assert_eq!(run(&["verify", dir.path().join("missing").to_str().unwrap()]).0, 5);
}

#[test]
fn exchange_documents_round_trip() {
    for (g, s, c) in [("S3", "(12)", "2L"), ("Z9", "3", "1R"), ("D4", "(12)(34)", "1L")] {
        let text = exchange(g, s, c);
        let t = CayleySudokuTable::from_exchange(&text).unwrap();
        assert_eq!(t.to_exchange(), text);
        assert!(blocks_are_sudoku(&t));
    }
}

#[test]
fn baer_check_reports_json() {
    let (code, out, _) = run(&["baer-check", "--group", "S3", "--subgroup", "(12)"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["side"], "right");
    assert_eq!(v["parts"].as_array().unwrap().len(), 2);
    let (code, _, _) = run(&["baer-check", "--group", "S4", "--subgroup", "(12)(34)"]);
    assert_eq!(code, 2);
}

#[test]
fn demos_and_mols() {
    for name in ["z9", "s3-c1", "s3-c2", "q6-left", "q6-right", "qn:10", "mols:3"] {
        let (code, out, err) = run(&["demo", name]);
        assert_eq!(code, 0, "{name}: {err}");
        assert!(!out.is_empty());
    }
    let (code, out, _) = run(&["mols", "--p", "3", "--output", "exchange"]);
    assert_eq!(code, 0);
    let _: Value = serde_json::from_str(&out).unwrap();
}

#[test]
fn quasigroup_sources() {
    // universal, although the stabilizer has no complement
    let (code, out, err) = run(&["search", "--group", "lmult:qn:6", "--subgroup", "stab:1"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.split(", ").count(), 6);
    let (code, _, err) = run(&[
        "search",
        "--group",
        "rmult:qn:6",
        "--subgroup",
        "stab:1",
        "--side",
        "right",
    ]);
    assert_eq!(code, 0, "{err}");
}
