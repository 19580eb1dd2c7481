use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use phasediag_core::category::find_isomorphism;
use phasediag_core::io::import_olog;
use phasediag_core::io::olog::from_json;
use tempfile::TempDir;

fn phasediag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phasediag")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn seeded() -> TempDir {
    let dir = TempDir::new().unwrap();
    let o = phasediag(&["--seed-fixtures", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    dir
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn milnor_number_of_e6() {
    let o = phasediag(&["sing", "mu", "--germ", "x^3+y^4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "6\n");
}

#[test]
fn spectrum_and_stabilize() {
    let o = phasediag(&["sing", "spectrum", "--germ", "x^3+y^4", "--weights", "1/3,1/4"]);
    assert_eq!(stdout(&o), "0 1/4 1/3 1/2 7/12 5/6\n");
    let o = phasediag(&["sing", "stabilize", "--germ", "x^3+y^4"]);
    assert_eq!(stdout(&o), "y^4 + x^3 + z^2\n");
    let o = phasediag(&["sing", "mu", "--germ", "x^2*y"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn non_bijective_generator_exits_with_validation_error() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, r#"{"degree": 3, "generators": ["(0 1)", [0, 2, 2]]}"#).unwrap();
    let o = phasediag(&["group", "info", "-i", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("generator 1"), "{err}");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(phasediag(&["sing", "mu"]).status.code(), Some(2));
    assert_eq!(phasediag(&["orbitcat"]).status.code(), Some(2));
    assert_eq!(phasediag(&["ldp", "--grid", "0:1:0.5"]).status.code(), Some(2));
    assert_eq!(phasediag(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn phase_of_point_matches_orbit_category() {
    let dir = seeded();
    let phase_out = path(dir.path(), "phase.json");
    let orbit_out = path(dir.path(), "orbit.json");
    let o = phasediag(&[
        "phase",
        "-g",
        &path(dir.path(), "group_s3.json"),
        "-x",
        &path(dir.path(), "complex_point.json"),
        "-o",
        &phase_out,
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let o = phasediag(&["orbitcat", "-i", &path(dir.path(), "group_s3.json"), "-o", &orbit_out]);
    assert!(o.status.success());

    let load = |p: &str| import_olog(&from_json(&std::fs::read_to_string(p).unwrap()).unwrap()).unwrap();
    let (a, b) = (load(&phase_out), load(&orbit_out));
    assert_eq!(a.category.object_count(), 4);
    assert!(find_isomorphism(&a.category, &b.category).unwrap().is_some());
}

#[test]
fn dot_is_byte_stable() {
    let dir = seeded();
    let args = |out: &str| {
        vec![
            "phase".to_string(),
            "-g".into(),
            path(dir.path(), "group_c2.json"),
            "-x".into(),
            path(dir.path(), "complex_square_reflection.json"),
            "-o".into(),
            out.to_string(),
        ]
    };
    let outs: Vec<PathBuf> = (0..2).map(|i| dir.path().join(format!("run{i}.dot"))).collect();
    for out in &outs {
        let a = args(out.to_str().unwrap());
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        assert!(phasediag(&refs).status.success());
    }
    let first = std::fs::read(&outs[0]).unwrap();
    assert_eq!(first, std::fs::read(&outs[1]).unwrap());
    assert!(String::from_utf8(first).unwrap().starts_with("digraph phi0 {"));
}

#[test]
fn every_seeded_input_runs() {
    let dir = seeded();
    let groups = ["trivial", "c2", "c4", "s3", "d4", "a4", "s4"];
    for g in groups {
        let o = phasediag(&["group", "info", "-i", &path(dir.path(), &format!("group_{g}.json"))]);
        assert!(o.status.success(), "{g}");
    }
    for s in ["segment_midpoint", "chain5", "square"] {
        let o = phasediag(&["strata", "-i", &path(dir.path(), &format!("strata_{s}.json")), "--format", "json"]);
        assert!(o.status.success(), "{s}");
        from_json(&stdout(&o)).unwrap();
    }
    let o = phasediag(&["quiver", "-g", &path(dir.path(), "group_s3.json"), "-r", &path(dir.path(), "rep_s3-standard.json")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dims: Vec<u64> = v["nodes"].as_array().unwrap().iter().map(|n| n["fixDim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![2, 1, 0, 0]);
}

#[test]
fn rate_table() {
    let o = phasediag(&["ldp", "--bernoulli", "0.3", "--grid", "0.1:0.9:0.1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 9);
    for r in &rows {
        let (x, p) = (r[0], 0.3f64);
        let kl = x * (x / p).ln() + (1.0 - x) * ((1.0 - x) / (1.0 - p)).ln();
        assert!((r[1] - kl).abs() < 1e-11);
        assert_eq!(r[2], -r[1]);
    }
    let o = phasediag(&["ldp", "--dist", "0:0.7,1:0.2", "--grid", "0:1:0.5"]);
    assert_eq!(o.status.code(), Some(1));
}
