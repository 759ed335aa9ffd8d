use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fuchsian::obj::parse_obj;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fuchsian"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout_json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

const D1: &str = r#"{"group": "boost:1", "normals": [[0, 1]], "support": [2]}"#;
const OCTAGON: &str = r#"{"group": "octagon", "normals": [[0, 0, 1]], "support": [1]}"#;

/// Three normals in general position; simple at h = 1.
const THREE: &str = r#"{"group": "octagon", "normals": [[0, 0, 1], [0.5456932224396738, 0.19099262785388582, 1.155101414123941], [-0.2551953761404359, 0.850651253801453, 1.3374349463048447]], "support": [1, 1, 1]}"#;

#[test]
fn covol_of_boost_segment() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "d1.json", D1);
    let v = stdout_json(&run(&["covol", spec.to_str().unwrap()]));
    let area = v["areas"][0].as_f64().unwrap();
    assert!((area - 4.0 * 0.5f64.tanh()).abs() < 1e-12);
    assert!((v["covol"].as_f64().unwrap() - area).abs() < 1e-12);
    assert_eq!(v["kind"], "covolume");
    assert_eq!(v["metadata"]["tool"], "fuchsian");
    assert!(v["metadata"]["tolerances"].is_object());
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "oct.json", OCTAGON);
    let a = run(&["build", spec.to_str().unwrap()]);
    let b = run(&["build", spec.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let out = dir.path().join("out.json");
    let c = run(&["build", spec.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(c.status.success() && c.stdout.is_empty());
    assert_eq!(std::fs::read(out).unwrap(), a.stdout);
}

#[test]
fn nonpositive_support_is_rejected() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        dir.path(),
        "bad.json",
        r#"{"group": "octagon", "normals": [[0, 0, 1], [0.5, 0, 1.118033988749895]], "support": [1, -0.5]}"#,
    );
    let o = run(&["covol", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains('1'), "{err}");
}

#[test]
fn malformed_json_reports_location() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "broken.json", "{\n  \"group\": \"octagon\",\n  \"normals\": [[0, 0, 1]\n}\n");
    let o = run(&["covol", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(&format!("{}:4:", spec.display())), "{err}");
}

#[test]
fn unknown_group_and_command() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["group-info", "dodecagon"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn group_info_reports_cell() {
    let v = stdout_json(&run(&["group-info", "octagon"]));
    assert_eq!(v["generators"].as_array().unwrap().len(), 8);
    let vol = v["dirichlet_cell"]["volume"].as_f64().unwrap();
    assert!((vol - 4.0 * std::f64::consts::PI).abs() < 1e-9);
    assert_eq!(v["dirichlet_cell"]["vertices"].as_array().unwrap().len(), 8);
}

#[test]
fn orbit_counts_points() {
    let v = stdout_json(&run(&["orbit", "--group", "boost:1", "--point", "0,1", "--radius", "2.5"]));
    // translates at distance 0, ±1, ±2
    assert_eq!(v["count"], 5);
}

#[test]
fn obj_export_round_trips() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "oct.json", OCTAGON);
    let o = run(&["export", spec.to_str().unwrap(), "--format", "obj", "--words", "1"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mesh = parse_obj(&text).unwrap();
    assert_eq!(mesh.faces.len(), 9);
    assert!(mesh.faces.iter().all(|f| f.len() == 8));

    let j = stdout_json(&run(&["export", spec.to_str().unwrap(), "--words", "1"]));
    let faces = j["faces"].as_array().unwrap();
    let coords: Vec<f64> = faces
        .iter()
        .flat_map(|f| f["vertices"].as_array().unwrap().iter())
        .flat_map(|v| v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()))
        .collect();
    let from_obj: Vec<f64> = mesh.vertices.iter().flatten().copied().collect();
    assert_eq!(coords, from_obj);
}

#[test]
fn d1_export_writes_lines() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "d1.json", D1);
    let o = run(&["export", spec.to_str().unwrap(), "--format", "obj", "--words", "2"]);
    let mesh = parse_obj(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert!(mesh.faces.is_empty());
    assert_eq!(mesh.lines.len(), 5);
    assert!(mesh.vertices.iter().all(|v| v[2] == 0.0));
}

#[test]
fn repro_prints_both_values() {
    let o = run(&["paper-repro"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("2.176624"));
    assert!(text.contains("2.745166004061"));
    assert!(text.contains("0.272078 ≤ π/2 = 1.570796"));

    let v = stdout_json(&run(&["paper-repro", "--json"]));
    let rows = v["rows"].as_array().unwrap();
    let trace = rows.iter().find(|r| r["quantity"].as_str().unwrap().starts_with("2cosh")).unwrap();
    assert_eq!(trace["agrees"], true);
    assert_eq!(v["isoperimetric"]["pass"], true);
}

#[test]
fn solve_round_trip() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        dir.path(),
        "solve.json",
        r#"{"family": {"group": "boost:1", "normals": [[0, 1]]}, "target_areas": [1.5], "config": {"tol": 1e-12}}"#,
    );
    let v = stdout_json(&run(&["solve", spec.to_str().unwrap()]));
    assert_eq!(v["converged"], true);
    let h = v["solution"][0].as_f64().unwrap();
    // d = 1: one facet of length 2h·tanh(ℓ/2)
    assert!((2.0 * h * 0.5f64.tanh() - 1.5).abs() < 1e-10);
}

#[test]
fn check_finds_no_counterexample() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "three.json", THREE);
    let o = run(&["check", spec.to_str().unwrap(), "--trials", "2", "--seed", "7"]);
    let v = stdout_json(&o);
    assert_eq!(v["failures"], 0);
    assert!(v["checks"].as_u64().unwrap() > 0);
}
