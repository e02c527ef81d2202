use std::process::{Command, Output};

fn zetarecur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetarecur"))
        .args(args)
        .env_remove("ZETARECUR_PRECISION")
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn table_dump_json() {
    let out = zetarecur(&["tables", "--kind", "V", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kind"], "V");
    assert_eq!(v["size"], 2);
    let diag: Vec<_> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["row"] == e["col"])
        .map(|e| e["value"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(diag, ["-1", "1"]);
}

#[test]
fn table_dump_csv() {
    let out = zetarecur(&["tables", "--kind", "L", "--n", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("row,col,value\n"));
    assert!(text.lines().any(|l| l == "1,1,8"));
}

#[test]
fn algebra_suite_report() {
    let out = zetarecur(&["verify", "--suite", "algebra", "--n-max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["summary"]["failed"], 0);
    let records = v["records"].as_array().unwrap();
    let names: Vec<&str> = records.iter().map(|r| r["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(records.iter().all(|r| r["paper_equation_label"].is_string()));
}

#[test]
fn limit_suite_csv_and_text() {
    let out = zetarecur(&["verify", "--suite", "limit", "--N", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).lines().count() > 1);
    let out = zetarecur(&["verify", "--suite", "limit", "--N", "1", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_zetarecur"))
        .args(["verify", "--suite", "ramanujan"])
        .env("ZETARECUR_PRECISION", "128")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["config"]["precision_bits"], 128);
}

#[test]
fn unreachable_tolerance_fails() {
    let out = zetarecur(&["verify", "--suite", "limit", "--precision-bits", "64", "--tol", "1e-200"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "fail");
}

#[test]
fn usage_errors() {
    for args in [
        &["verify", "--alpha-min", "2"][..],
        &["verify", "--n-max", "0"],
        &["verify", "--N", "0"],
        &["tables", "--kind", "c", "--n", "3", "--N", "3"],
        &["frobnicate"],
    ] {
        assert_eq!(zetarecur(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(zetarecur(&["--help"]).status.code(), Some(0));
}
