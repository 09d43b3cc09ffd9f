//! End-to-end runs of the `stratify` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn stratify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stratify")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn projective_plane_homology() {
    let out = stratify(&["homology", "--field", "q", "corpus:rp2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["betti"], serde_json::json!([1, 0, 0]));
    let out = stratify(&["--field", "f2", "homology", "corpus:rp2"]);
    assert_eq!(json(&out)["betti"], serde_json::json!([1, 1, 1]));
}

#[test]
fn unzip_cone_on_circle() {
    let out = stratify(&["unzip", "corpus:cone-s1", "--deep", "*"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["ledger"]["balanced"], true);
    // the link is a 12-gon
    assert_eq!(v["link"]["vertices"].as_array().unwrap().len(), 12);
    assert_eq!(v["ledger"]["betti_link"], serde_json::json!([1, 1]));
    assert_eq!(v["pi_simplicial"], true);
}

#[test]
fn strata_report_on_standard_triangle() {
    let out = stratify(&["strata-report", "corpus:delta2-standard"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["monotone"], true);
    let targets: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["target"].as_str().unwrap()).collect();
    assert_eq!(targets, ["(2,2)", "(1,2)", "(0,2)"]);
}

#[test]
fn out_file_and_log() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("tower.json");
    let out = stratify(&["--out", report.to_str().unwrap(), "unzip-tower", "corpus:delta2-faces"]);
    assert_eq!(out.status.code(), Some(0));
    let saved: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(saved["stages"].as_array().map(Vec::len), Some(2), "{saved}");
    let log = fs::read_to_string(dir.path().join("tower.json.log")).unwrap();
    assert!(log.contains("unzip-tower") && log.contains("exit code 0"), "{log}");
    // the summary goes to stdout instead of the report
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_err());
}

#[test]
fn constructions_reload() {
    let dir = tempfile::tempdir().unwrap();
    let coned = dir.path().join("coned.json");
    assert_eq!(stratify(&["--out", coned.to_str().unwrap(), "cone", "corpus:hexagon"]).status.code(), Some(0));
    let out = stratify(&["homology", coned.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["betti"], serde_json::json!([1, 0, 0]));

    // a subdivision bundle carries the carrier map next to the refined stratification
    let bundle = json(&stratify(&["subdivide", "corpus:delta2-standard"]));
    assert_eq!(bundle["carrier"]["{{0},{0,1}}"], "{0,1}");
    let strat = write(dir.path(), "strat.json", &bundle["stratified"].to_string());
    let out = stratify(&["strata-report", &strat]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["monotone"], true);
}

#[test]
fn files_are_loaded_by_kind() {
    let dir = tempfile::tempdir().unwrap();
    let poset = write(dir.path(), "vee.json", r#"{"elements":["a","b","c"],"leq":[["a","b"],["a","c"]]}"#);
    let out = stratify(&["validate", &poset]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let circle = write(dir.path(), "circle.json", r#"{"vertices":["x","y","z"],"simplices":[["x","y"],["y","z"],["x","z"]]}"#);
    let out = stratify(&["homology", &circle]);
    assert_eq!(json(&out)["betti"], serde_json::json!([1, 1]));
    let cone = stratify(&["--field", "f2", "unzip-tower", &circle]);
    assert_eq!(cone.status.code(), Some(0));
}

#[test]
fn invalid_documents_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(dir.path(), "broken.json", r#"{"elements":["a","b","c"],"leq":[["a","b"],["b","c"]]}"#);
    let out = stratify(&["validate", &broken]);
    assert_eq!(out.status.code(), Some(1));
    let colliding = stratify(&["join", "corpus:delta1", "corpus:delta1"]);
    assert_eq!(colliding.status.code(), Some(1));
    assert_eq!(stratify(&["join", "corpus:delta1", "corpus:delta1", "--disjoint"]).status.code(), Some(0));
    let gap = stratify(&["restrict", "corpus:delta2-standard", "--strata", "0", "--strata", "2"]);
    assert_eq!(gap.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let garbled = write(dir.path(), "garbled.json", "{\n  \"elements\": [\"a\",\n");
    let out = stratify(&["validate", &garbled]);
    assert_eq!(out.status.code(), Some(64));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    assert_eq!(stratify(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(stratify(&["homology", "corpus:nothing"]).status.code(), Some(64));
    assert_eq!(stratify(&["homology", "/no/such/file.json"]).status.code(), Some(64));
    assert_eq!(stratify(&["--field", "f2", "sheaf-cohomology", "corpus:circle-monodromy-plus"]).status.code(), Some(64));
    assert_eq!(stratify(&["--help"]).status.code(), Some(0));
}

#[test]
fn sheaf_cohomology_of_monodromy() {
    let plus = json(&stratify(&["sheaf-cohomology", "corpus:circle-monodromy-plus"]));
    let minus = json(&stratify(&["sheaf-cohomology", "corpus:circle-monodromy-minus"]));
    assert_ne!(plus, minus);
    assert!(plus.to_string().contains("[1,1]"), "{plus}");
    assert!(minus.to_string().contains("[0,0]"), "{minus}");
}

#[test]
fn mesh_export_writes_off() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = dir.path().join("link.off");
    let out = stratify(&["mesh-export", "corpus:cone-s1", "--deep", "*", "--part", "link", "--mesh", mesh.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let off = fs::read_to_string(&mesh).unwrap();
    assert!(off.starts_with("OFF\n12 12 0\n"), "{off}");
}
