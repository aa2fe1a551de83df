//! End-to-end tests of the binary: exit codes, JSON shape against the
//! shipped schemas, and a file-based codec round trip.

use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tangram"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn json_line(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().next().expect("one line")).expect("valid JSON")
}

/// Minimal structural check against a shipped schema: every required key is
/// present, and (when additionalProperties is false) no unknown keys appear.
fn assert_matches_schema(doc: &Value, schema_file: &str) {
    let path = format!("{}/../../schemas/{schema_file}", env!("CARGO_MANIFEST_DIR"));
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file")).unwrap();
    let obj = doc.as_object().expect("output is a JSON object");
    for req in schema["required"].as_array().expect("required list") {
        assert!(
            obj.contains_key(req.as_str().unwrap()),
            "missing required key {req} for {schema_file} in {doc}"
        );
    }
    if schema["additionalProperties"] == Value::Bool(false) {
        let props = schema["properties"].as_object().unwrap();
        for key in obj.keys() {
            assert!(props.contains_key(key), "unknown key {key} for {schema_file}");
        }
    }
}

#[test]
fn analyze_tuteurer() {
    let doc = json_line(&run_ok(&["analyze", "tuteurer", "--json"]));
    assert_matches_schema(&doc, "analyze.schema.json");
    assert_eq!(doc["cut_number"], 4);
    assert_eq!(doc["is_tangram"], true);
    assert_eq!(doc["budget_exhausted"], false);
}

#[test]
fn analyze_non_tangram() {
    let doc = json_line(&run_ok(&["analyze", "0102", "--json"]));
    assert_matches_schema(&doc, "analyze.schema.json");
    assert_eq!(doc["is_tangram"], false);
    assert_eq!(doc["cut_number"], Value::Null);
    assert_eq!(doc["cutting"], Value::Null);
}

#[test]
fn analyze_ints_encoding() {
    let doc = json_line(&run_ok(&["analyze", "7,8,7,8", "--ints", "--json"]));
    assert_eq!(doc["cut_number"], 1);
}

#[test]
fn search_json_shape() {
    let doc = json_line(&run_ok(&["search", "-q", "2", "-k", "1", "-t", "16", "--json"]));
    assert_matches_schema(&doc, "search.schema.json");
    assert_eq!(doc["status"], "max_length");
    assert_eq!(doc["max_length"], 3);
    assert_eq!(doc["witness"], "aba");
}

#[test]
fn experiment_json_shape() {
    let doc = json_line(&run_ok(&[
        "experiment",
        "run",
        "interval-lemma",
        "--params",
        "{\"n\": 3}",
        "--json",
    ]));
    assert_matches_schema(&doc, "experiment.schema.json");
    assert_eq!(doc["status"], "pass");
}

#[test]
fn generate_commands() {
    let out = run_ok(&["generate", "zimin", "3"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "abacaba");
    let out = run_ok(&["generate", "pansiot"]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "abcadbacdabcdacbdcadbacdabca"
    );
}

#[test]
fn codec_file_roundtrip() {
    let dir = std::env::temp_dir().join(format!("tangram-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let log = dir.join("encoded.bin");
    run_ok(&[
        "codec", "encode", "001011", "-q", "2", "-k", "1", "--lmin", "2",
        "--out", log.to_str().unwrap(),
    ]);
    let out = run_ok(&["codec", "decode", "--input", log.to_str().unwrap(), "--json"]);
    let doc = json_line(&out);
    // "001011" echoes in letter form
    assert_eq!(doc["word"], "aababb");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_error_exit_code() {
    let out = bin().args(["analyze", "01a!"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["analyze", "abab", "--threads", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exit_code() {
    let out = bin()
        .args(["analyze", "tuteurertuteurer", "--budget", "10", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let doc: Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stdout).lines().next().unwrap()).unwrap();
    assert_eq!(doc["budget_exhausted"], true);
}

#[test]
fn budget_env_override() {
    let out = bin()
        .args(["analyze", "tuteurertuteurer", "--json"])
        .env("TANGRAM_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_codes_stable_across_runs() {
    for _ in 0..2 {
        assert_eq!(bin().args(["analyze", "abab"]).output().unwrap().status.code(), Some(0));
    }
}
