use std::process::{Command, Output};

use serde_json::Value;

fn cubesect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubesect"))
        .args(args)
        .output()
        .expect("run cubesect")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

/// Data rows of a CSV table, split into fields, after checking the header.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("j,k,n,method,value,std_error,lower_bound,upper_bound,asymptotic,samples,seed")
    );
    lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(field: &str) -> f64 {
    field
        .parse()
        .unwrap_or_else(|_| panic!("{field:?} is not a number"))
}

#[test]
fn eval_examples() {
    let rows = csv_rows(&stdout(&cubesect(&[
        "eval", "--j", "0", "--k", "2", "--n", "3",
    ])));
    assert_eq!(rows.len(), 1);
    // (24/π) arctan(1/√2)
    let closed = 24.0 / std::f64::consts::PI * (1.0 / 2f64.sqrt()).atan();
    assert!((num(&rows[0][4]) - closed).abs() < 1e-9);
    assert_eq!(rows[0][3], "quadrature");

    let rows = csv_rows(&stdout(&cubesect(&[
        "eval", "--j", "0", "--k", "1", "--n", "100",
    ])));
    assert!((num(&rows[0][4]) - 2.0).abs() < 1e-8);

    let rows = csv_rows(&stdout(&cubesect(&[
        "eval", "--j", "1", "--k", "2", "--n", "5",
    ])));
    let r = &rows[0];
    assert_eq!(r[3], "bounds");
    assert_eq!(r[4], "", "no exact value for j ≥ 1");
    assert!(num(&r[6]) <= num(&r[7]));
    assert_eq!(num(&r[7]), 10.0);
}

#[test]
fn eval_sweeps_in_grid_order() {
    let rows = csv_rows(&stdout(&cubesect(&[
        "eval", "--j", "0..1", "--k", "2", "--n", "3..5",
    ])));
    let keys: Vec<(String, String)> = rows.iter().map(|r| (r[0].clone(), r[2].clone())).collect();
    let want: Vec<(String, String)> = [
        ("0", "3"),
        ("1", "3"),
        ("0", "4"),
        ("1", "4"),
        ("0", "5"),
        ("1", "5"),
    ]
    .iter()
    .map(|(j, n)| (j.to_string(), n.to_string()))
    .collect();
    assert_eq!(keys, want);
}

#[test]
fn csv_and_json_carry_identical_values() {
    let args = ["--j", "0..1", "--k", "2..3", "--n", "4..6"];
    let csv = stdout(&cubesect(
        &[&["eval", "--format", "csv"][..], &args].concat(),
    ));
    let json = stdout(&cubesect(
        &[&["eval", "--format", "json"][..], &args].concat(),
    ));
    let records: Vec<Value> = serde_json::from_str(&json).unwrap();
    let rows = csv_rows(&csv);
    assert_eq!(rows.len(), records.len());
    let fields = [
        "j",
        "k",
        "n",
        "method",
        "value",
        "std_error",
        "lower_bound",
        "upper_bound",
        "asymptotic",
        "samples",
        "seed",
    ];
    for (row, rec) in rows.iter().zip(&records) {
        for (cell, name) in row.iter().zip(fields) {
            let expected = match &rec[name] {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                v => v.to_string(),
            };
            assert_eq!(cell, &expected, "{name}");
        }
    }
}

#[test]
fn simulate_is_reproducible_and_on_target() {
    let args = [
        "simulate",
        "--j",
        "0",
        "--k",
        "3",
        "--n",
        "4",
        "--samples",
        "100000",
        "--seed",
        "7",
    ];
    let first = stdout(&cubesect(&args));
    assert_eq!(first, stdout(&cubesect(&args)));
    let row = &csv_rows(&first)[0];
    assert_eq!(row[3], "face_hit_lp");
    assert_eq!(row[9], "100000");
    assert_eq!(row[10], "7");
    // (2⁴·4/π) arctan(1/√3) = 32/3
    let (mean, se) = (num(&row[4]), num(&row[5]));
    assert!((mean - 32.0 / 3.0).abs() < 3.0 * se, "{mean} ± {se}");
}

#[test]
fn simulate_polygons_and_histogram() {
    let out = cubesect(&[
        "simulate",
        "--j",
        "0",
        "--k",
        "2",
        "--n",
        "3",
        "--samples",
        "20000",
        "--method",
        "polygon_exact",
        "--histogram",
        "--format",
        "json",
    ]);
    let records: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    let mean = records[0]["value"].as_f64().unwrap();
    let se = records[0]["std_error"].as_f64().unwrap();
    assert!((mean - 4.701_918_6).abs() < 3.0 * se);
    assert!(records[0]["lower_bound"].is_null());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("vertices j=0 k=2 n=3: 4:"), "{err}");
}

#[test]
fn random_seed_is_reported() {
    let out = stdout(&cubesect(&[
        "simulate",
        "--j",
        "0",
        "--k",
        "1",
        "--n",
        "3",
        "--samples",
        "10",
        "--seed",
        "random",
    ]));
    let row = &csv_rows(&out)[0];
    assert!(row[10].parse::<u64>().is_ok());
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["eval", "--j", "2", "--k", "2", "--n", "5"][..],
        &["eval", "--j", "0", "--k", "1..5", "--n", "5"],
        &["eval", "--j", "0", "--k", "2", "--n", "3", "--tol", "0"],
        &[
            "simulate",
            "--j",
            "0",
            "--k",
            "3",
            "--n",
            "5",
            "--method",
            "polygon_exact",
        ],
        &[
            "simulate", "--j", "0", "--k", "2", "--n", "5", "--method", "simplex",
        ],
        &[
            "simulate",
            "--j",
            "0",
            "--k",
            "2",
            "--n",
            "5",
            "--samples",
            "0",
        ],
        &["eval", "--j", "0", "--k", "2"],
        &["frobnicate"],
    ] {
        let out = cubesect(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn unrepresentable_values_exit_with_three() {
    let out = cubesect(&["eval", "--j", "0", "--k", "1050", "--n", "1100"]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn quick_verification_passes() {
    let out = cubesect(&["verify", "--level", "quick", "--seed", "1"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], Value::Bool(true));
    assert_eq!(report["level"], "quick");
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c["passed"] == Value::Bool(true)));
}

#[test]
fn tampered_constant_fails_verification() {
    let out = cubesect(&["verify", "--level", "quick", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("codim1_closed_form"), "{err}");
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], Value::Bool(false));
}
