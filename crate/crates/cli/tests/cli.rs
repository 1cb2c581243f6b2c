use std::process::{Command, Output};

use serde_json::Value;

fn demuskin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_demuskin"))
        .args(args)
        .env_remove("DEMUSKIN_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = demuskin(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(v["schema_version"], 1);
    v
}

fn stdout(args: &[&str]) -> String {
    let out = demuskin(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn present_relator_length() {
    let v = ok_json(&["present", "--p", "3", "--d", "2", "--r", "1", "--rprime", "2"]);
    assert_eq!(v["relator_length"], 20);
    assert_eq!(v["generators"], serde_json::json!(["x1", "y1", "x2", "y2"]));
    assert_eq!(v["params"]["rprime"], 2);
}

#[test]
fn present_defaults_to_infinite_level() {
    let v = ok_json(&["present"]);
    assert_eq!(v["params"]["rprime"], "inf");
    assert_eq!(v["relator"], "x1^4 y1 x1^-1 y1^-1 x2 y2 x2^-1 y2^-1");
}

#[test]
fn params_json_overrides_flags() {
    let v = ok_json(&[
        "split",
        "--params",
        r#"{"p":3,"d":2,"r":1,"rprime":2,"kind":{"amalg":1}}"#,
    ]);
    assert_eq!(v["descriptor"]["kind"]["amalg"], 1);
    assert_eq!(v["splitting"]["kind"], "amalgam");
    assert_eq!(v["edge_word"], "x1^4 y1 x1^-1 y1^-1");
}

#[test]
fn split_dot_one_edge() {
    let dot = stdout(&["split", "--rprime", "1", "--format", "dot"]);
    assert!(dot.starts_with("digraph "));
    assert_eq!(dot.matches(" -> ").count(), 1);
    assert!(dot.contains("\"A\" -> \"B\""));
}

#[test]
fn validate_catalog_and_file() {
    for kind in ["hnn", "hnn-def", "amalg"] {
        let rp = if kind == "hnn" { "inf" } else { "2" };
        let v = ok_json(&["validate", "--kind", kind, "--rprime", rp]);
        assert_eq!(v["valid"], true, "{kind}");
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("split.json");
    let split = ok_json(&["split", "--rprime", "1"]);
    std::fs::write(&path, split["splitting"].to_string()).unwrap();
    let v = ok_json(&["validate", "--rprime", "1", "--splitting", path.to_str().unwrap()]);
    assert_eq!(v["valid"], true);
    // The same splitting does not present a different level.
    let out = demuskin(&["validate", "--rprime", "2", "--splitting", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn twist_preserves_relator() {
    let v = ok_json(&["twist", "--kind", "hnn", "--k", "-2", "--word", "x2"]);
    assert_eq!(v["relator_preserved"], true);
    assert_eq!(v["k"], -2);
    assert!(v["word_image"].is_string());
}

#[test]
fn reduce_and_tlength() {
    let v = ok_json(&["reduce", "--alphabet", "a,b", "--word", "b a a b a^-1 b^-1"]);
    assert_eq!(v["reduced"], "b a^2 b a^-1 b^-1");
    assert_eq!(v["cyclic_core"], "a b");
    assert_eq!(v["cyclic_length"], 2);
    let v = ok_json(&["tlength", "--rprime", "1", "--word", "x1 y2"]);
    assert_eq!(v["elliptic"], false);
    assert_eq!(v["translation_length"], 2);
    let v = ok_json(&["tlength", "--rprime", "1", "--word", "x1^4 y1 x1^-1 y1^-1"]);
    assert_eq!(v["elliptic"], true);
}

#[test]
fn intersect_verdicts() {
    let v = ok_json(&["intersect", "--rprime", "1"]);
    assert_eq!(v["compatible"], false);
    assert_eq!(v["provenance"], "hyperbolicity");
    let v = ok_json(&[
        "intersect",
        "--d",
        "3",
        "--rprime",
        "1",
        "--with-kind",
        "amalg",
        "--with-n",
        "2",
    ]);
    assert_eq!(v["compatible"], true);
    assert_eq!(v["provenance"], "refinement");
    let dot = stdout(&[
        "intersect",
        "--d",
        "3",
        "--rprime",
        "1",
        "--with-kind",
        "amalg",
        "--with-n",
        "2",
        "--format",
        "dot",
    ]);
    assert_eq!(dot.matches(" -> ").count(), 2);
}

#[test]
fn certify_outer_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = demuskin(&[
        "certify-outer",
        "--p",
        "3",
        "--d",
        "2",
        "--r",
        "1",
        "--kind",
        "hnn",
        "--k",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["nonconjugate"], true);
    let again = stdout(&["certify-outer", "--verify", path.to_str().unwrap()]);
    assert_eq!(again, text);
    let tampered = text.replacen("\"k\": 1", "\"k\": 2", 1);
    std::fs::write(&path, tampered).unwrap();
    let out = demuskin(&["certify-outer", "--verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn whitehead_and_separate() {
    let v = ok_json(&["whitehead", "--rprime", "3"]);
    assert_eq!(v["report"]["minimal"], true);
    assert_eq!(v["report"]["length"], 38);
    let v = ok_json(&["whitehead", "--alphabet", "x,y", "--word", "x y x y"]);
    assert_eq!(v["report"]["minimal"], false);
    assert_eq!(v["minimized_length"], 2);
    let v = ok_json(&["separate", "--rprimes", "1,2,3", "--primes", "2,5,7"]);
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 3);
    assert!(pairs.iter().all(|p| p["verdict"] == "distinct"));
}

#[test]
fn seeded_samples_are_deterministic() {
    let args = ["whitehead", "--rprime", "1", "--samples", "3", "--seed", "9"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["samples"].as_array().unwrap().len(), 3);
}

#[test]
fn quotient_order_law() {
    let v = ok_json(&["quotient", "--rprime", "2", "--s", "2"]);
    assert_eq!(v["case"], "case2");
    assert_eq!(v["edge_order"], 9);
    assert_eq!(v["relator_image"], serde_json::json!([0, 0, 0]));
    let v = ok_json(&["quotient", "--rprime", "1", "--s", "2"]);
    assert_eq!(v["case"], "case3");
    assert_eq!(v["target"]["type"], "cyclic");
}

#[test]
fn curve_complex_slice() {
    let v = ok_json(&["curve-complex", "--p", "3", "--d", "2", "--r", "1", "--rprime-max", "3"]);
    let ids: Vec<&str> = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["hnn", "amalg_n1_r1", "amalg_n1_r2", "amalg_n1_r3"]);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 6);
    let dot = stdout(&["curve-complex", "--rprime-max", "3", "--format", "dot"]);
    assert!(dot.starts_with("graph \"curve_complex\" {"));
    assert!(dot.trim_end().ends_with('}'));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["curve-complex", "--d", "3", "--rprime-max", "2"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn exit_codes() {
    assert_eq!(demuskin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(demuskin(&["present", "--p", "x"]).status.code(), Some(1));
    assert_eq!(demuskin(&["present", "--params", "{not json"]).status.code(), Some(1));
    assert_eq!(
        demuskin(&[
            "present",
            "--params",
            r#"{"schema_version":7,"p":3,"d":2,"r":1,"rprime":1}"#
        ])
        .status
        .code(),
        Some(1)
    );
    let out = demuskin(&["split", "--kind", "amalg", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "domain");
    assert_eq!(demuskin(&["present", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(demuskin(&["present", "--rprime", "40"]).status.code(), Some(3));
}

#[test]
fn resource_bound_exit_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_demuskin"))
        .args(["certify-outer", "--rprime", "1", "--kind", "amalg", "--k", "1"])
        .env("DEMUSKIN_MAX_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}
