use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_persnerve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn cech_triangle_h1_interval() {
    let dir = TempDir::new().unwrap();
    let cloud = write(dir.path(), "tri.csv", "0,0\n1,0\n0.5,0.8660254037844386\n");
    let out = dir.path().join("out.json");
    let o = run(&["cech", cloud.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&out);
    let h1: Vec<&Value> = v["intervals"].as_array().unwrap().iter().filter(|iv| iv["dim"] == 1).collect();
    assert_eq!(h1.len(), 1);
    assert!((h1[0]["birth"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!((h1[0]["death"].as_f64().unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-9);
}

#[test]
fn cech_single_point() {
    let dir = TempDir::new().unwrap();
    let cloud = write(dir.path(), "one.json", r#"{"points": [[2.0, 3.0, 4.0]]}"#);
    let out = dir.path().join("out.json");
    let o = run(&["cech", cloud.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&out);
    let ivs = v["intervals"].as_array().unwrap();
    assert_eq!(ivs.len(), 1);
    assert_eq!(ivs[0]["dim"], 0);
    assert!(ivs[0]["death"].is_null());
}

#[test]
fn malformed_csv_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let cloud = write(dir.path(), "bad.csv", "0,0\n1,zero\n");
    let o = run(&["cech", cloud.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn alpha_rejects_non_planar_clouds() {
    let dir = TempDir::new().unwrap();
    let cloud = write(dir.path(), "c.csv", "0,0,0\n1,0,0\n0,1,0\n");
    assert_eq!(run(&["alpha2d", cloud.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn alpha_square() {
    let dir = TempDir::new().unwrap();
    let cloud = write(dir.path(), "sq.csv", "0,0\n1,0\n1,1\n0,1\n");
    let out = dir.path().join("out.json");
    let o = run(&["alpha2d", cloud.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&out);
    // the square's hole is born at 0.5 and filled when the diagonal appears
    let h1: Vec<&Value> = v["intervals"].as_array().unwrap().iter().filter(|iv| iv["dim"] == 1).collect();
    assert_eq!(h1.len(), 1);
    assert!((h1[0]["birth"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!((h1[0]["death"].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-9);
}

const HOLLOW_THEN_FILLED: &str = r#"{
  "levels": [0, 1],
  "simplices": [
    {"vertices": [0], "birth": 0}, {"vertices": [1], "birth": 0}, {"vertices": [2], "birth": 0},
    {"vertices": [0, 1], "birth": 0}, {"vertices": [1, 2], "birth": 0}, {"vertices": [0, 2], "birth": 0},
    {"vertices": [0, 1, 2], "birth": 1}
  ]
}"#;

#[test]
fn persistence_hollow_then_filled_triangle() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.json", HOLLOW_THEN_FILLED);
    let out = dir.path().join("out.json");
    let o = run(&["persistence", f.to_str().unwrap(), "--table", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&out);
    let bars = v["barcode"].as_array().unwrap();
    assert!(bars.contains(&serde_json::json!({"dim": 1, "birth": 0, "death": 1})));
    assert!(bars.contains(&serde_json::json!({"dim": 0, "birth": 0, "death": null})));
    assert_eq!(bars.len(), 2);
    assert!(v["table"].is_array() || v["table"].is_object());
}

#[test]
fn persistence_rejects_non_monotone_births() {
    let dir = TempDir::new().unwrap();
    let text = r#"{"levels": [0, 1], "simplices": [
        {"vertices": [0], "birth": 1}, {"vertices": [1], "birth": 0}, {"vertices": [0, 1], "birth": 0}]}"#;
    let f = write(dir.path(), "f.json", text);
    assert_eq!(run(&["persistence", f.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn nerve_of_a_plain_cover() {
    let dir = TempDir::new().unwrap();
    let cover = write(
        dir.path(),
        "c.json",
        r#"{"elements": {"0": {"maximal_simplices": [[0, 1]]}, "1": {"maximal_simplices": [[1, 2]]},
            "2": {"maximal_simplices": [[2, 3]]}}}"#,
    );
    let out = dir.path().join("n.json");
    let o = run(&["nerve", cover.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&out)["maximal_simplices"], serde_json::json!([[0, 1], [1, 2]]));
}

#[test]
fn verify_without_instances_is_under_powered() {
    assert_eq!(run(&["verify", "--instances", "0"]).status.code(), Some(3));
}

#[test]
fn verify_flags_a_cover_with_a_disconnected_intersection() {
    // two arcs covering a circle meet in two points
    let dir = TempDir::new().unwrap();
    let input = write(
        dir.path(),
        "in.json",
        r#"{"cover": {"levels": [0], "indices": [0, 1], "elements": {
            "0": {"0": {"maximal_simplices": [[0, 1], [1, 2]]}},
            "1": {"0": {"maximal_simplices": [[2, 3], [0, 3]]}}}}}"#,
    );
    let out = dir.path().join("r.json");
    let o = run(&["verify", "--strict", "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let v = json(&out);
    assert_eq!(v["status"], "hypothesis-violation");
    assert!(v["tallies"]["hypothesis_violations"].as_u64().unwrap() > 0);
}

#[test]
fn verify_accepts_a_good_hand_built_cover() {
    let dir = TempDir::new().unwrap();
    let input = write(
        dir.path(),
        "in.json",
        r#"{"cover": {"levels": [0, 1], "indices": [0, 1], "elements": {
            "0": {"0": {"maximal_simplices": [[0, 1]]}, "1": {"maximal_simplices": [[0, 1, 2]]}},
            "1": {"1": {"maximal_simplices": [[1, 2, 3]]}}}}}"#,
    );
    let o = run(&["verify", "--strict", "--input", input.to_str().unwrap()]);
    let code = o.status.code();
    // no theorem failure and no hypothesis violation; a witness may be absent
    assert!(code == Some(0) || code == Some(3), "{}", stdout(&o));
}

#[test]
fn verify_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = run(&["verify", "--seed", "3", "--instances", "8", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn cylinder_check_passes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.json");
    let o = run(&["cylinder-check", "--pairs", "40", "--max-degree", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(json(&out)["failures"].as_array().unwrap().is_empty());
}
