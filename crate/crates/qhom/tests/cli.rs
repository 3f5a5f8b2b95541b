//! End-to-end tests of the qhom binary: exit codes, JSON shape, file and
//! config handling.

use std::process::{Command, Output};

fn qhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhom"))
        .args(args)
        .env_remove("QHOM_CONFIG")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_expression_text() {
    let out = qhom(&["analyze", "x0^7 + x0^3*x1^4 + x1^6*x2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("classification Free"));
    assert!(text.contains("tau = 27"));
    assert!(text.contains("elapsed"));
}

#[test]
fn analyze_expression_json() {
    let out = qhom(&["analyze", "x0^7 + x0^3*x1^4 + x1^6*x2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["degree"], 7);
    assert_eq!(v["mdr"]["r"], 3);
    assert_eq!(v["classification"]["name"], "Free");
    assert_eq!(v["tjurina"]["total"], 27);
    for key in [
        "input",
        "betti",
        "dpwall",
        "qh",
        "points",
        "identities",
        "warnings",
    ] {
        assert!(v.get(key).is_some(), "missing key {}", key);
    }
    assert!(v.get("elapsed").is_none());
}

#[test]
fn analyze_family_and_no_oracle() {
    let out = qhom(&[
        "analyze",
        "--family",
        "ploski_even",
        "--params",
        "m=2",
        "--json",
        "--no-oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["input"]["label"], "ploski_even(m=2)");
    assert_eq!(v["classification"]["exponents"], serde_json::json!([1, 2]));
    assert!(v["points"][0].get("mu").is_none());
}

#[test]
fn analyze_file_with_comments() {
    let dir = std::env::temp_dir().join("qhom_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("curve.txt");
    std::fs::write(
        &path,
        "# a free septic\nx0^7 + x0^3*x1^4 \n  + x1^6*x2 # trailing comment\n",
    )
    .unwrap();
    let out = qhom(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["degree"], 7);
}

#[test]
fn rejection_exit_codes() {
    // not homogeneous
    let out = qhom(&["analyze", "x0^2 + x1^3"]);
    assert_eq!(out.status.code(), Some(2));
    // parse error
    let out = qhom(&["analyze", "x0 +* x1"]);
    assert_eq!(out.status.code(), Some(2));
    // positive-dimensional singular locus
    let out = qhom(&["analyze", "x0^2*x1^2"]);
    assert_eq!(out.status.code(), Some(2));
    // JSON errors carry machine-readable codes
    let out = qhom(&["analyze", "x0^2 + x1^3", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"]["code"], "not_homogeneous");
}

#[test]
fn check_point_records() {
    let out = qhom(&["check-point", "x0*(x0^3*x2 + x1^4)", "0:0:1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["mu"], 13);
    assert_eq!(v["tau"], 13);
    assert_eq!(v["agreement"], true);

    let out = qhom(&["check-point", "x0*(x0^3*x2 + x1^4)", "1:1:1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_summary_and_continuation() {
    let out = qhom(&[
        "sweep",
        "--family",
        "cuspidal_free",
        "--range",
        "d=6..7",
        "--range",
        "r=2..3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // d=6, r=3 violates r < d/2 and must be recorded, not fatal
    assert!(text.contains("error: invalid family parameters"));
    assert!(text.contains("summary: criterion/oracle agreement"));

    let out = qhom(&[
        "sweep",
        "--family",
        "ploski_odd",
        "--range",
        "m=2..3",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["instances"].as_array().unwrap().len(), 2);
    assert_eq!(v["summary"]["max_scheme_degree"], 1);
    assert_eq!(v["summary"]["r_squared_bound"], 1);
}

#[test]
fn config_file_and_env() {
    let dir = std::env::temp_dir().join("qhom_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tiny_cap.conf");
    std::fs::write(&path, "step_cap = 1 # starve the engine\n").unwrap();

    // via --config: the cap makes analysis fail as a rejection
    let out = qhom(&[
        "analyze",
        "x0^7 + x0^3*x1^4 + x1^6*x2",
        "--config",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    // via environment variable
    let out = Command::new(env!("CARGO_BIN_EXE_qhom"))
        .args(["analyze", "x0^7 + x0^3*x1^4 + x1^6*x2"])
        .env("QHOM_CONFIG", path.to_str().unwrap())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // output format from config
    let json_conf = dir.join("json.conf");
    std::fs::write(&json_conf, "output = json\n").unwrap();
    let out = qhom(&[
        "analyze",
        "x0*(x0^3*x2 + x1^4)",
        "--config",
        json_conf.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(serde_json::from_str::<serde_json::Value>(&stdout(&out)).is_ok());

    // bad config is a rejection
    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "speed = fast\n").unwrap();
    let out = qhom(&["analyze", "x0^3", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn families_listing() {
    let out = qhom(&["families"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in [
        "ploski_even",
        "cuspidal_free",
        "three_syzygy",
        "conic_lines_9",
    ] {
        assert!(text.contains(name));
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let run = || stdout(&qhom(&["analyze", "x0^7 + x0^4*x1^3 + x1^6*x2", "--json"]));
    assert_eq!(run(), run());
}
