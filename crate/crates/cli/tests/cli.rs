use std::process::{Command, Output};

use partbias::ExactRational;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partbias"))
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}");
    String::from_utf8(out.stdout).unwrap()
}

fn q(v: &Value) -> ExactRational {
    v.as_str().expect("rational string").parse().expect("p/q")
}

#[test]
fn count_small() {
    let v = json(&["count", "--r", "1", "--s", "2", "--n", "4"]);
    let row = &v["results"][0];
    assert_eq!(row["total"], "3");
    assert_eq!(row["greater"], "2");
    assert_eq!(q(&row["ratio"]), ExactRational::new(2, 3));
    assert_eq!(v["command"], "count");
    assert_eq!(v["metadata"]["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn count_empty_gives_null_ratio() {
    let v = json(&["count", "--r", "2", "--s", "3", "--n", "1"]);
    assert_eq!(v["results"][0]["total"], "0");
    assert!(v["results"][0]["ratio"].is_null());
}

#[test]
fn count_grid_and_oracle_agree() {
    let dp = json(&["count", "--r", "1,4", "--s", "2", "--i", "3", "--n-max", "30", "--step", "5"]);
    let brute = json(&["count", "--r", "1,4", "--s", "2", "--i", "3", "--n-max", "30", "--step", "5", "--oracle"]);
    assert_eq!(dp["results"], brute["results"]);
    assert_eq!(dp["results"].as_array().unwrap().len(), 7);
}

#[test]
fn validation_errors_exit_2() {
    let out = run(&["count", "--r", "1", "--s", "1", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("DisjointnessViolation"));
    assert!(out.stdout.is_empty());

    let out = run(&["asymptote", "--r", "2", "--s", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("GcdHypothesisViolated"));

    let out = run(&["progression", "--r", "1", "--s", "3", "--m", "2", "--N", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("InvalidProgression"));
}

#[test]
fn asymptote_corollaries() {
    let v = json(&["asymptote", "--r", "1,2", "--s", "3"]);
    assert_eq!(q(&v["results"][0]["ratio_limit"]), ExactRational::new(9, 10));
    let v = json(&["asymptote", "--r", "1", "--s", "2,3,4"]);
    assert_eq!(q(&v["results"][0]["ratio_limit"]), ExactRational::new(2, 5));
}

#[test]
fn volume_two_term_value() {
    let v = json(&["volume", "--a", "2,3", "--b", "6,10"]);
    let row = &v["results"][0];
    let expected = ExactRational::new(1, 24 * 4 * 6 * 8 * 9) - ExactRational::new(1, 24 * 4 * 10 * 12 * 13);
    assert_eq!(q(&row["v_ab"]), expected);
    assert_eq!(q(&row["v_ab"]) + q(&row["v_ba"]), q(&row["simplex"]));
}

#[test]
fn progression_modes() {
    let base = ["progression", "--r", "1", "--s", "2", "--m", "2", "--N", "1"];
    let exact = json(&base);
    assert_eq!(exact["results"][0]["limit"], "2/3");
    let mut beta = base.to_vec();
    beta.extend(["--mode", "beta"]);
    assert_eq!(json(&beta)["results"][0]["limit"], "2/3");
    for mode in ["quadrature", "gamma"] {
        let mut args = base.to_vec();
        args.extend(["--mode", mode]);
        let x: f64 = json(&args)["results"][0]["limit"].as_str().unwrap().parse().unwrap();
        assert!((x - 2.0 / 3.0).abs() < 1e-10, "{mode}: {x}");
    }
    let out = run(&["progression", "--r", "1", "--s", "3", "--m", "2", "--N", "1", "--mode", "beta"]);
    assert_eq!(out.status.code(), Some(2));
}

const CONJ: [&str; 11] = [
    "conjecture", "--r", "1", "--s", "2", "--m", "2", "--n-grid", "100,200,400", "--N-grid", "2,4,6",
];

#[test]
fn conjecture_csv_shape() {
    let mut args = CONJ.to_vec();
    args.extend(["--format", "csv"]);
    let text = stdout(&args);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,N,total,greater,less,equal,ratio");
    let data: Vec<&&str> = lines[1..].iter().filter(|l| !l.starts_with(',')).collect();
    let limits: Vec<&&str> = lines[1..].iter().filter(|l| l.starts_with(',')).collect();
    assert_eq!(data.len(), 9);
    assert_eq!(limits.len(), 3);
    assert_eq!(*limits[0], ",2,,,,,24/35");
    let keys: Vec<(u64, u64)> = data
        .iter()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), f[0].parse().unwrap())
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let mut csv_args = CONJ.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv = stdout(&csv_args);
    let v = json(&CONJ);
    let rows = v["results"].as_array().unwrap();
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    for (line, row) in csv.lines().skip(1).zip(rows) {
        for (key, cell) in header.iter().zip(line.split(',')) {
            let expected = match &row[*key] {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            assert_eq!(cell, expected, "{key}");
        }
    }
    for row in rows {
        if !row["ratio"].is_null() {
            let r = q(&row["ratio"]);
            assert_eq!(r.to_string(), row["ratio"].as_str().unwrap());
        }
    }
}

#[test]
fn output_is_byte_stable() {
    assert_eq!(stdout(&CONJ), stdout(&CONJ));
}

#[test]
fn conjecture_budget_exit_3() {
    let out = run(&[
        "conjecture", "--r", "1", "--s", "2", "--m", "2", "--n-grid", "400", "--N-grid", "6", "--budget", "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["results"][0]["ratio"].is_null());
    assert!(String::from_utf8_lossy(&out.stderr).contains("BudgetExceeded"));
}

#[test]
fn config_file_supplies_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# corollary\nr = 1,2\ns = 3\nformat = csv\n").unwrap();
    let text = stdout(&["asymptote", "--config", path.to_str().unwrap()]);
    assert_eq!(text, "ratio_limit,lead_total,lead_greater,dimension\n9/10,1/6,3/20,2\n");
}

#[test]
fn timing_only_on_request() {
    let v = json(&["asymptote", "--r", "1", "--s", "2"]);
    assert!(v["metadata"].get("timing_ms").is_none());
    let v = json(&["asymptote", "--r", "1", "--s", "2", "--timing"]);
    assert!(v["metadata"]["timing_ms"].is_number());
}

#[test]
fn direction_ehrhart_scan() {
    let v = json(&["direction", "--r", "1", "--s", "3", "--m", "3", "--N", "1", "--n", "50"]);
    assert_eq!(v["results"][0]["greater_wins"], true);
    let v = json(&["ehrhart", "--r", "1", "--s", "2", "--t", "3000"]);
    assert_eq!(v["results"][0]["count"], "1501");
    let v = json(&["scan", "--size", "2", "--max-part", "6"]);
    assert_eq!(v["results"].as_array().unwrap().last().unwrap()["kind"], "minimum");
}
