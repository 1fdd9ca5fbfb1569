use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anglesum"))
        .args(args)
        .env("ANGLESUM_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (v, out.status.code().unwrap())
}

#[test]
fn alpha_of_limiting_pyramid() {
    let (v, code) = json(&["alpha", "--expr", "Pinf tri"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["summary"]["alpha_f"], "(1/4, 5/4, 2, 1 | 4, 6, 4, 1)");
    assert_eq!(v["config"]["seed"], 0xC0FFEE);
}

#[test]
fn alpha_of_cube_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.json");
    let verts: Vec<Vec<i32>> = (0..8).map(|m| (0..3).map(|a| (m >> a) & 1).collect()).collect();
    fs::write(&path, serde_json::json!({"dim": 3, "vertices": verts}).to_string()).unwrap();
    let (v, code) = json(&["alpha", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["alpha_f"], "(1, 3, 3, 1 | 8, 12, 6, 1)");
    assert_eq!(v["summary"]["exact"], true);
    assert_eq!(v["rows"][2]["method"], "dihedral");
}

#[test]
fn square_from_bipyramid_expression() {
    let (v, _) = json(&["alpha", "--expr", "B* seg"]);
    assert_eq!(v["summary"]["alpha_f"], "(1, 2, 1 | 4, 4, 1)");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(json(&["verify", "--expr", "B*^2 point", "--rel", "gram"]).1, 0);
    let (v, code) = json(&["verify", "--fixture", "torus", "--rel", "gram"]);
    assert_eq!(code, 1);
    assert_eq!(v["rows"][0]["residual"], -1);
    let (v, code) = json(&["verify", "--fixture", "t1_3", "--rel", "perles"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(run(&["verify", "--fixture", "cube", "--rel", "perles"]).status.code(), Some(2));
    assert_eq!(run(&["alpha", "--expr", "Q tri"]).status.code(), Some(2));
}

#[test]
fn spans() {
    let (v, code) = json(&["span", "simplices", "9"]);
    assert_eq!((code, v["summary"]["rank"].as_u64()), (0, Some(4)));
    let (v, _) = json(&["span", "general", "6"]);
    assert_eq!(v["summary"]["rank"], 9);
    let (v, code) = json(&["span", "simplicial", "3", "--samples", "20000"]);
    assert_eq!((code, v["summary"]["rank"].as_u64()), (0, Some(2)), "{v}");
}

#[test]
fn complex_commands() {
    let (v, _) = json(&["complex", "chars", "--fixture", "gamma"]);
    assert_eq!(v["summary"]["alpha"], serde_json::json!([8, 12, 6]));
    assert_eq!(v["summary"]["chi_alpha"], 2);
    assert_eq!(v["summary"]["chi_boundary"], 4);
    let (v, _) = json(&["complex", "chars", "--fixture", "handlebody:2"]);
    assert_eq!(v["summary"]["chi_alpha"], -1);
    let (v, _) = json(&["complex", "chars", "--fixture", "torus", "--refine", "1"]);
    assert_eq!(v["summary"]["chi_alpha"], 0);
    let (v, _) = json(&["complex", "fixtures"]);
    assert!(v["rows"].as_array().unwrap().len() >= 8);
}

#[test]
fn glue_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.vox");
    let b = dir.path().join("b.vox");
    fs::write(&a, "# left\ndim 3\n0 0 0\n").unwrap();
    fs::write(&b, "dim 3\n1 0 0\n1 1 0\n").unwrap();
    let (v, code) = json(&["complex", "glue", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["summary"]["classification"], "balls(1)");
    assert_eq!(v["summary"]["agrees"], true);
    let out = run(&["complex", "glue", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    fs::write(&b, "dim 3\n1 0 zero\n").unwrap();
    assert_eq!(run(&["complex", "glue", a.to_str().unwrap(), b.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn build_round_trips() {
    let out = run(&["complex", "build", "torus", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.vox");
    fs::write(&p, v["summary"]["text"].as_str().unwrap()).unwrap();
    let (c, _) = json(&["complex", "chars", "--file", p.to_str().unwrap()]);
    assert_eq!(c["summary"]["alpha"], serde_json::json!([4, 12, 8]));
}

#[test]
fn curved_commands() {
    let (v, code) = json(&["curved", "gram", "--fixture", "octant"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"][0]["residual"], 0);
    let (v, _) = json(&["curved", "alpha", "--fixture", "ideal-triangle"]);
    assert_eq!(v["rows"][0]["alpha"], "1/4");
    assert_eq!(v["summary"]["alpha_tilde_minus_one"], "-1/4");
    let (v, code) = json(&["curved", "perles", "--suite", "hyperbolic"]);
    assert_eq!(code, 0);
    assert!(v["rows"].as_array().unwrap().iter().any(|r| r["evidence_only"] == true));
    let (v, code) = json(&["curved", "schlafli", "--d", "2"]);
    assert_eq!(code, 0);
    assert!((v["summary"]["calibration"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    let (v, code) = json(&["curved", "perles", "--fixture", "octant", "--k", "-1"]);
    assert_eq!((code, v["rows"][0]["residual"].as_i64()), (0, Some(0)));
}

#[test]
fn curved_geometry_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    fs::write(&p, r#"{"geometry": "spherical", "vertices": [[1,0,0],[-1,0,0],[0,1,0]]}"#).unwrap();
    assert_eq!(run(&["curved", "alpha", "--file", p.to_str().unwrap()]).status.code(), Some(3));
    fs::write(&p, r#"{"geometry": "hyperbolic", "vertices": [[2,0],[0,0.5],[-0.5,-0.5]]}"#).unwrap();
    assert_eq!(run(&["curved", "alpha", "--file", p.to_str().unwrap()]).status.code(), Some(3));
    fs::write(&p, r#"{"geometry": "hyperbolic", "vertices": [[0.5,0],[0,0.5],[-0.5,-0.5]]}"#).unwrap();
    assert_eq!(run(&["curved", "gram", "--file", p.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["alpha", "--fixture", "tetrahedron", "--samples", "5000", "--seed", "7", "--format", "csv"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_anglesum"))
        .args(args)
        .env("ANGLESUM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().starts_with("k,alpha,stderr,method,f"));
}
