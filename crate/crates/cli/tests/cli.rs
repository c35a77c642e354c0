mod common;

use std::fs;

use cfcode::parse_matrix;
use cfcode_core::{materialize, CodeParams};
use common::{cfcode, gen, stderr, stdout};

#[test]
fn params_report() {
    let o = cfcode(&["params", "5", "3", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for needle in ["N=45\n", "t=10\n", "w=24\n", "rate=0.0738206\n"] {
        assert!(out.contains(needle), "{needle}: {out}");
    }
    assert!(stderr(&o).is_empty());
}

#[test]
fn params_best_k() {
    let o = cfcode(&["params", "10", "0", "2", "2", "--best-k"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("k*=5 t*=252\n"), "{}", stdout(&o));

    let o = cfcode(&["params", "4", "0", "3", "1", "--best-k"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no admissible k"));
}

#[test]
fn params_json() {
    let o = cfcode(&["params", "5", "3", "2", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"], "45");
    assert_eq!(v["cols"], "10");
    assert_eq!(v["column_weight"], "24");
    assert_eq!(v["asymptotic_rows_estimate"], 78.125);
    assert!((v["rate"].as_f64().unwrap() - 10f64.log2() / 45.0).abs() < 1e-15);
}

#[test]
fn params_invalid_names_constraint() {
    let o = cfcode(&["params", "5", "5", "2", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("k < n"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());

    let o = cfcode(&["params", "4", "3", "2", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("l + s <= t"));
}

#[test]
fn params_warns_on_ell_one() {
    let o = cfcode(&["params", "5", "3", "2", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning: l = 1"));
}

#[test]
fn gen_writes_expected_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.txt");
    let p = CodeParams::new(5, 3, 2, 2).unwrap();
    assert_eq!(gen(&p, &path).status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "cfcode v1");
    assert_eq!(lines[1], "45 10");
    let data: Vec<&str> = lines.iter().copied().filter(|l| !l.starts_with('#')).skip(2).collect();
    assert_eq!(data.len(), 45);
    // Columns in colex order: {1,2,3},{1,2,4},{1,3,4},{2,3,4},{1,2,5},
    // {1,3,5},{2,3,5},{1,4,5},{2,4,5},{3,4,5}; row 0 is {{1,2},{1,3}}.
    assert_eq!(data[0], "1110110000");
    assert_eq!(parse_matrix(&text).unwrap().matrix, materialize(&p, u64::MAX).unwrap());
}

#[test]
fn gen_to_stdout_matches_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.txt");
    gen(&CodeParams::new(5, 3, 2, 1).unwrap(), &path);
    let o = cfcode(&["gen", "5", "3", "2", "1"]);
    assert_eq!(o.stdout, fs::read(&path).unwrap());
}

#[test]
fn gen_budget_exceeded() {
    let o = cfcode(&["gen", "5", "3", "2", "2", "--max-bits", "100"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("450"), "{}", stderr(&o));
    let o = cfcode(&["gen", "5", "3", "2", "2", "--max-rows", "44"]);
    assert_eq!(o.status.code(), Some(3));
    let o = cfcode(&["gen", "40", "20", "3", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gen_invalid_params() {
    assert_eq!(cfcode(&["gen", "5", "2", "2", "2"]).status.code(), Some(2));
}

#[test]
fn verify_generated_and_preconditions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.txt");
    gen(&CodeParams::new(5, 3, 2, 2).unwrap(), &path);
    let f = path.to_str().unwrap();

    let o = cfcode(&["verify", f, "--s", "2", "--l", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("COVER-FREE (2,2)\n"));

    // s + l = 11 > t = 10.
    let o = cfcode(&["verify", f, "--s", "2", "--l", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds"));

    // s + l = t is allowed; this code is not cover-free (2,8).
    let o = cfcode(&["verify", f, "--s", "2", "--l", "8"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_all_ones_reports_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ones.txt");
    fs::write(&path, "cfcode v1\n2 3\n111\n111\n").unwrap();
    let o = cfcode(&["verify", path.to_str().unwrap(), "--s", "1", "--l", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample: zero columns [0], one columns [1]"));

    let o = cfcode(&["verify", path.to_str().unwrap(), "--s", "1", "--l", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["counterexample"]["neg"], serde_json::json!([0]));
    assert_eq!(v["counterexample"]["pos"], serde_json::json!([1]));
}

#[test]
fn verify_malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "cfcode v1\n2 3\n101\n10\n").unwrap();
    let o = cfcode(&["verify", path.to_str().unwrap(), "--s", "1", "--l", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));

    let o = cfcode(&["verify", "/nonexistent/file", "--s", "1", "--l", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_counting_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.txt");
    gen(&CodeParams::new(6, 3, 2, 1).unwrap(), &path);
    let o = cfcode(&["verify", path.to_str().unwrap(), "--s", "2", "--l", "1", "--count-witnesses"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("min witnesses per pair: 1"));
}

#[test]
fn entry_by_label_and_rank() {
    let o = cfcode(&["entry", "5", "3", "2", "2", "--row", "{1,2},{4,5}", "--col", "{1,2,3}"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1\n"));

    let o = cfcode(&["entry", "5", "3", "2", "2", "--row-rank", "0", "--col-rank", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "1\nrow {{1,2},{1,3}} (rank 0)\ncol {1,2,3} (rank 0)\n"
    );

    let o = cfcode(&["entry", "5", "3", "2", "2", "--row", "{{1,4},{2,5}}", "--col-rank", "0"]);
    assert!(stdout(&o).starts_with("0\n"));
}

#[test]
fn entry_errors() {
    for args in [
        &["entry", "5", "3", "2", "2", "--row-rank", "45", "--col-rank", "0"][..],
        &["entry", "5", "3", "2", "2", "--row-rank", "0", "--col-rank", "10"],
        &["entry", "5", "3", "2", "2", "--row", "{1,2}", "--col", "{1,2,3}"],
        &["entry", "5", "3", "2", "2", "--row", "{1,2},{1,2}", "--col", "{1,2,3}"],
        &["entry", "5", "3", "2", "2", "--row-rank", "x", "--col-rank", "0"],
        &["entry", "5", "3", "2", "2", "--row-rank", "0"],
        &["entry", "5", "3", "2", "2", "--row-rank", "0", "--col", "{1,2,9}"],
    ] {
        assert_eq!(cfcode(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn witness_command() {
    let o = cfcode(&[
        "witness", "5", "3", "2", "2", "--neg", "{1,2,3};{1,2,4}", "--pos", "{3,4,5};{1,4,5}",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "{{3,4},{1,5}}");
    assert_eq!(lines[1], "rank 20");
    assert!(lines[2].starts_with("confirmed"));

    let o = cfcode(&["witness", "5", "3", "1", "1", "--neg", "{1,2,3}", "--pos", "{3,4,5}"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn witness_errors() {
    let shared = cfcode(&[
        "witness", "5", "3", "2", "2", "--neg", "{1,2,3};{1,2,4}", "--pos", "{1,2,3};{1,4,5}",
    ]);
    assert_eq!(shared.status.code(), Some(2));
    let parse = cfcode(&["witness", "5", "3", "2", "2", "--neg", "{1,2,3", "--pos", "{3,4,5};{1,4,5}"]);
    assert_eq!(parse.status.code(), Some(2));
    let count = cfcode(&["witness", "5", "3", "2", "2", "--neg", "{1,2,3}", "--pos", "{3,4,5};{1,4,5}"]);
    assert_eq!(count.status.code(), Some(2));
    // No row of X(3,2,2,4) is 0 on {1,3,4},{2,3,4} and 1 on {1,2,3},{1,2,4}.
    let none = cfcode(&[
        "witness", "4", "3", "2", "2", "--neg", "{1,3,4};{2,3,4}", "--pos", "{1,2,3};{1,2,4}",
    ]);
    assert_eq!(none.status.code(), Some(4));
    assert!(stderr(&none).contains("internal consistency failure"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cfcode(&[]).status.code(), Some(2));
    assert_eq!(cfcode(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cfcode(&["params", "5", "3"]).status.code(), Some(2));
    assert_eq!(cfcode(&["--help"]).status.code(), Some(0));
}
