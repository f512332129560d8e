use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn setsize(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setsize"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn measure_csv_with_graduation() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "pts.csv", "x,y\n0,0\n1/2,3\n2.5,-1\n");
    let g1 = json(&setsize(&[
        "measure", "--input", &csv, "--header", "--scale", "1/2",
    ]));
    assert_eq!(g1["inputs"][0]["measurements"][0]["count"], "3");
    let g2 = json(&setsize(&[
        "measure",
        "--input",
        &csv,
        "--header",
        "--scale",
        "1/2",
        "--graduation",
        "2",
    ]));
    assert_eq!(g2["inputs"][0]["measurements"][0]["count"], "2");
    assert_eq!(g2["inputs"][0]["measurements"][0]["count_graduation1"], "3");
    assert_eq!(g2["version"], 1);
}

#[test]
fn custom_delimiter() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "pts.tsv", "0;1\n5;6\n");
    let out = json(&setsize(&[
        "measure",
        "--input",
        &csv,
        "--delimiter",
        ";",
        "--scale",
        "10",
    ]));
    assert_eq!(out["inputs"][0]["measurements"][0]["pair"], "(10,1)");
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "bad.csv", "0,0\n1,1\n2,oops\n");
    let out = setsize(&["measure", "--input", &csv, "--scale", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn bad_flags_are_rejected() {
    assert_eq!(
        setsize(&["measure", "--preset", "cantor", "--sweep", "1:2:3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        setsize(&["measure", "--preset", "cantor", "--scale", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        setsize(&["measure", "--preset", "koch", "--scale", "1/3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        setsize(&[
            "measure",
            "--preset",
            "cantor",
            "--scale",
            "1/3",
            "--graduation",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        setsize(&["measure", "--preset", "cantor", "--scale", "1/2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dim_on_cantor_sweep() {
    let out = json(&setsize(&[
        "dim",
        "--preset",
        "cantor",
        "--sweep",
        "1/3:1/3:12",
    ]));
    let slope = out["fit"]["slope"].as_f64().unwrap();
    assert!((slope - 2f64.ln() / 3f64.ln()).abs() < 1e-9);
    assert_eq!(out["fit"]["samples"].as_array().unwrap().len(), 12);
}

#[test]
fn compare_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.csv", "0,0,0\n1,2,3\n4,5,6\n");
    let b = write(dir.path(), "b.csv", "0\n7\n9\n");
    let c = write(dir.path(), "c.csv", "0\n7\n");
    let out = json(&setsize(&[
        "compare", "--input", &a, "--input", &b, "--scale", "0.1",
    ]));
    assert_eq!(out["equal"], true);
    assert_eq!(out["per_scale"][0]["counts"], serde_json::json!(["3", "3"]));
    let out = json(&setsize(&["compare", "--input", &a, "--input", &c]));
    assert_eq!(out["equal"], false);
}

#[test]
fn algebra_reports_value_and_errors() {
    let out = json(&setsize(&["algebra", "(1/2,3)+(1/2,4)"]));
    assert_eq!(out["text"], "(1/2,7)");
    assert_eq!(out["value"]["pair"], "(1/2,7)");
    let out = setsize(&["algebra", "(1/2,3)+(1/3,4)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 7"));
}

#[test]
fn infinity_sequence() {
    let out = json(&setsize(&["infinity", "--n", "4"]));
    assert_eq!(
        out["sequence"],
        serde_json::json!(["ln w/ln(1/r)", "1", "2^w/w", "2^(2^w)/w"])
    );
    assert_eq!(out["ch"]["corollary"], "w * (r, 2) = 1");
    assert_eq!(out["ch"]["hypothesis_conditional"], true);
}

#[test]
fn check_exit_status_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("check.json");
    let out = setsize(&["check", "--trials", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let rep: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(rep["passed"], true);
    assert_eq!(rep["reports"].as_array().unwrap().len(), 4);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.csv", "0,0\n1,5\n2,7\n");
    let b = write(dir.path(), "b.csv", "3\n1\n2\n");
    let runs: [&[&str]; 6] = [
        &[
            "measure",
            "--uniform",
            "2000",
            "--dim",
            "2",
            "--sweep",
            "1/2:1/2:6",
            "--seed",
            "5",
            "--workers",
            "3",
        ],
        &["dim", "--preset", "sierpinski", "--sweep", "1/2:1/2:10"],
        &["compare", "--input", &a, "--input", &b, "--scale", "1/2"],
        &["algebra", "dim((1/27,8))"],
        &["infinity"],
        &["check", "--trials", "20", "--seed", "7"],
    ];
    for args in runs {
        let a = setsize(args);
        let b = setsize(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
