use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn mapspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mapspace")).args(args).env_remove("MAPSPACE_WORKDIR").output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn free_loop_report() {
    let s1 = data("s1.json");
    let coeff = data("lambda_x3.json");
    let args = ["mapspace", "--source", &s1, "--coeff", &coeff, "--max-degree", "6", "--pmax", "auto"];
    let out = mapspace(&args);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["betti"], serde_json::json!([1, 0, 1, 1, 1, 1, 1]));
    assert_eq!(r["params"]["p_max"], 16);
    assert_eq!(r["stabilization"]["stable"], true);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["betti", "checks", "isotypic", "params", "ring", "stabilization"]);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let order: Vec<usize> = ["\"params\"", "\"betti\"", "\"ring\"", "\"isotypic\"", "\"stabilization\"", "\"checks\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]));
    // byte-identical on a second run
    assert_eq!(mapspace(&args).stdout, out.stdout);
}

#[test]
fn moore_space_homology_mod_three() {
    let out = mapspace(&["homology", "--source", &data("moore13.json"), "--field", "F3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["betti"], serde_json::json!([1, 1, 1]));
    let out = mapspace(&["homology", "--source", &data("moore13.json"), "--field", "Q"]);
    assert_eq!(report(&out)["betti"], serde_json::json!([1, 0, 0]));
}

#[test]
fn default_adjunction_triple() {
    let out = mapspace(&["adjunction-check"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["checks"][0]["detail"], "left_count=2 right_count=2");
    assert_eq!(r["checks"][1]["pass"], true);
}

#[test]
fn ring_of_two_points() {
    let out = mapspace(&["ring", "--source", "builtin:sphere:0", "--max-degree", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let cubes: Vec<&Value> =
        r["ring"].as_array().unwrap().iter().filter(|e| e["left"][0] == 3 && e["right"][0] == 3).collect();
    assert_eq!(cubes.len(), 3);
}

#[test]
fn reflection_isotypic() {
    let out = mapspace(&[
        "isotypic",
        "--source",
        &data("zigzag4.json"),
        "--group",
        &data("reflection_zigzag4.json"),
        "--max-degree",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["isotypic"]["2"]["chi1"], 1);
    assert_eq!(r["isotypic"]["3"]["trivial"], 1);
}

#[test]
fn distinct_exit_codes() {
    let code = |args: &[&str]| mapspace(args).status.code();
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let bad = bad.display().to_string();
    // parse error
    assert_eq!(code(&["homology", "--source", &bad]), Some(3));
    // malformed input data
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, r#"{"name":"x","cells":[{"id":"e","dim":1,"faces":[]}]}"#).unwrap();
    assert_eq!(code(&["homology", "--source", &broken.display().to_string()]), Some(4));
    // dim K exceeds the connectivity of the target
    assert_eq!(code(&["mapspace", "--source", "builtin:sphere:3"]), Some(5));
    // simplicial backend on a source that is too large for it
    assert_eq!(code(&["mapspace", "--source", "builtin:sphere:1", "--backend", "simplicial"]), Some(6));
    // truncation below the dimension of the source
    assert_eq!(code(&["adjunction-check", "--trunc", "0"]), Some(7));
    // field disagreeing with the coefficient file
    assert_eq!(code(&["mapspace", "--source", "builtin:simplex:0", "--coeff", &data("lambda_x3.json"), "--field", "F7"]), Some(9));
    // missing file
    assert_eq!(code(&["homology", "--source", "/nonexistent/k.json"]), Some(10));
    // usage error from the argument parser
    assert_eq!(code(&["mapspace"]), Some(2));
}

#[test]
fn work_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(data("point.json"), dir.path().join("k.json")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_mapspace"))
        .args(["mapspace", "--source", "k.json", "--output", "report.json"])
        .env("MAPSPACE_WORKDIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(r["betti"], serde_json::json!([1, 0, 0, 1, 0, 0, 0]));
}
