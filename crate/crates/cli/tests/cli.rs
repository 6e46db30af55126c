use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn edgesub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgesub"))
        .args(args)
        .env_remove("EDGESUB_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = edgesub(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("edgesub-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn k3_file() -> PathBuf {
    temp_file("k3.txt", "3 3\n0 1\n1 2\n0 2\n")
}

#[test]
fn count_forest_pairs_in_triangle() {
    let k3 = k3_file();
    let v = json(&["count", "forest", "2", k3.to_str().unwrap()]);
    assert_eq!(v["value"], 3);
    for key in ["query", "mode", "samples", "seed", "elapsed_ms", "citations", "config_hash"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(!v["citations"].as_array().unwrap().is_empty());
}

#[test]
fn count_connected_via_subs() {
    let v = json(&["count", "connected", "3", "k4", "--mode", "via-subs"]);
    assert_eq!(v["value"], 20);
    assert_eq!(v["mode"], "via-subs");
}

#[test]
fn all_exact_modes_agree() {
    for mode in ["brute", "via-subs", "via-basis"] {
        let v = json(&["count", "connected", "3", "petersen", "--mode", mode]);
        assert_eq!(v["value"], json(&["count", "connected", "3", "petersen", "--mode", "brute"])["value"]);
    }
}

#[test]
fn fptras_record_carries_sample_size() {
    let v = json(&["count", "planar", "4", "k7", "--mode", "fptras", "--eps", "0.2", "--delta", "0.1", "--seed", "7"]);
    // C(C(6,3), 4) * 3 ln(2/delta) / eps^2
    let t = (4845.0f64 * 3.0 * (2.0f64 / 0.1).ln() / 0.04).ceil() as u64;
    assert_eq!(v["samples"], t);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["estimate"]["path"], "sampling");
    assert_eq!(v["estimate"]["fraction"], "5985/1");
}

#[test]
fn fptras_is_deterministic_given_seed() {
    let args = ["count", "forest", "4", "k7", "--mode", "fptras", "--eps", "0.5", "--delta", "0.2", "--seed", "3"];
    assert_eq!(json(&args)["estimate"], json(&args)["estimate"]);
}

#[test]
fn torus_residue_of_connectivity() {
    let v = json(&["coeff", "connected", "torus:5", "--mod", "5"]);
    assert_eq!(v["residue"], 1);
    assert_eq!(v["verdict"], "#W[1]-hard criterion met");
}

#[test]
fn coefficient_tables_on_the_triangle() {
    assert_eq!(json(&["coeff", "trivially-true", "k3"])["top"], 0);
    assert_eq!(json(&["coeff", "matching", "k3"])["bottom"], 1);
}

#[test]
fn tutte_forest_interpretation() {
    let k3 = k3_file();
    let v = json(&["tutte", k3.to_str().unwrap(), "2", "2/1", "1/1"]);
    assert_eq!(v["value"], "3/1");
    assert_eq!(v["interpretation"], "k-forests");
}

#[test]
fn tutte_point_classification() {
    let k3 = k3_file();
    let v = json(&["tutte", k3.to_str().unwrap(), "1", "2/1", "2/1", "--classify"]);
    assert_eq!(v["classification"]["exact"], "polynomial (hyperbola)");
    let v = json(&["tutte", "anything", "3", "1/1", "5/1", "--classify"]);
    assert_eq!(v["classification"]["exact"], "FPT, #P-hard");
    assert!(v["value"].is_null());
}

#[test]
fn tutte_modes_agree() {
    let values: Vec<Value> = ["brute", "delcon", "via-z", "auto"]
        .iter()
        .map(|m| json(&["tutte", "petersen", "3", "3", "-2", "--mode", m])["value"].clone())
        .collect();
    assert!(values.windows(2).all(|w| w[0] == w[1]), "{values:?}");
}

#[test]
fn map_emits_json_grid_and_svg() {
    let v = json(&["map"]);
    assert_eq!(v["grid"].as_array().unwrap().len(), 25);
    let svg = edgesub(&["map", "--svg"]);
    assert!(svg.status.success());
    assert!(String::from_utf8(svg.stdout).unwrap().starts_with("<svg"));
}

#[test]
fn verify_fixed_points() {
    let v = json(&["verify", "fixed-points", "--ell", "3"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"][0]["detail"], "15 fixed points");
}

#[test]
fn verify_other_suites_pass() {
    for suite in ["basis-identity", "tutte-identities"] {
        assert_eq!(json(&["verify", suite, "--instances", "3"])["passed"], true);
    }
}

#[test]
fn table_format_is_key_value() {
    let out = edgesub(&["count", "forest", "2", "k3", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("value") && l.trim_end().ends_with('3')));
}

#[test]
fn exit_codes() {
    let bad = temp_file("bad.txt", "3 2\n0 1\n");
    let code = |args: &[&str]| edgesub(args).status.code().unwrap();
    assert_eq!(code(&["count", "forest", "1", bad.to_str().unwrap()]), 2);
    assert_eq!(
        code(&["count", "forest", "3", "petersen", "--mode", "brute", "--budget-subset", "10"]),
        3
    );
    assert_eq!(code(&["count", "no-such-property", "1", "k3"]), 4);
    assert_eq!(code(&["count", "eulerian", "2", "k4", "--mode", "decide"]), 4);
    assert_eq!(code(&["count", "forest", "x", "k3"]), 4);
    assert_eq!(code(&["coeff", "connected", "k3", "--mod", "5"]), 4);
}

#[test]
fn errors_go_to_stderr_only() {
    let out = edgesub(&["count", "no-such-property", "1", "k3"]);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn config_file_defines_properties_and_changes_hash() {
    let cfg = temp_file(
        "config.json",
        r#"{"seed": 11, "properties": [{"name": "triangle-free-minor", "forbidden_minors": [[[0,1],[1,2],[0,2]]]}]}"#,
    );
    let out = Command::new(env!("CARGO_BIN_EXE_edgesub"))
        .args(["count", "triangle-free-minor", "3", "k4"])
        .env("EDGESUB_CONFIG", &cfg)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // 3-edge forests of K4: 20 minus the 4 triangles
    assert_eq!(v["value"], 16);
    assert_eq!(v["seed"], 11);
    assert_ne!(v["config_hash"], json(&["count", "forest", "3", "k4"])["config_hash"]);
}
