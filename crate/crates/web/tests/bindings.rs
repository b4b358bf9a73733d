use mapspace_web::{adjunction_json, homology_json, mapping_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn moore_space_homology_depends_on_the_field() {
    assert_eq!(parse(homology_json("moore:3", "F3"))["betti"], serde_json::json!([1, 1, 1]));
    assert_eq!(parse(homology_json("moore:3", "Q"))["betti"], serde_json::json!([1, 0, 0]));
}

#[test]
fn free_loops_on_the_circle() {
    let v = parse(mapping_json("sphere:1", "Q", 4, false));
    assert_eq!(v["betti"], serde_json::json!([1, 0, 1, 1, 1]));
    assert_eq!(v["stable"], true);
}

#[test]
fn adjunction_counts_agree() {
    let v = parse(adjunction_json("simplex:0", "yoneda", "simplex:1", 1));
    assert_eq!(v["left_count"], 2);
    assert_eq!(v["right_count"], 2);
}

#[test]
fn errors_are_reported_as_json() {
    assert!(parse(homology_json("torus:2", "Q"))["error"].is_string());
    assert!(parse(adjunction_json("simplex:0", "cone", "simplex:1", 1))["error"].is_string());
}
