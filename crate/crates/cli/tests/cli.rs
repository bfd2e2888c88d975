use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn shearer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shearer"))
        .args(args)
        .env_remove("SHEARER_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const C5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";

#[test]
fn verify_unit_weights_on_c5() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c5.txt", C5);
    let out = shearer(&["verify", g.to_str().unwrap(), "--weights", "unit"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert!((v["worst_slack"].as_f64().unwrap() - 0.0137056).abs() < 1e-6);
    assert_eq!(v["theorem"], "weighted_local");
}

#[test]
fn triangle_is_a_hypothesis_violation() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k3.txt", "3 3\n0 1\n1 2\n2 0\n");
    let out = shearer(&["verify", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"], "not_triangle_free");
    assert!(v["message"].as_str().unwrap().contains("not triangle-free"));
}

#[test]
fn exact_chif_on_c5() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c5.txt", C5);
    let out = shearer(&["chif", g.to_str().unwrap(), "--exact"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], "5/2");
}

#[test]
fn parse_error_is_infrastructure() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "bad.txt", "2 1\n0 2\n");
    let out = shearer(&["chif", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["message"].as_str().is_some());
    let out = shearer(&["chif", "/nonexistent/graph.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "io");
}

#[test]
fn dimacs_input_and_weight_sources() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k2.col", "c edge\np edge 2 1\ne 1 2\n");
    let w = write(dir.path(), "w.txt", "1\n2\n");
    for src in ["unit", "degree", "perron", "random:3"] {
        let out = shearer(&["verify", g.to_str().unwrap(), "--weights", src]);
        assert_eq!(out.status.code(), Some(0), "{src}");
    }
    let arg = format!("file:{}", w.display());
    let out = shearer(&["verify", g.to_str().unwrap(), "--weights", &arg]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["per_vertex"][0]["target"].as_f64().unwrap() - 0.3862944).abs() < 1e-7);
}

#[test]
fn gen_round_trips_and_writes_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("pet.txt");
    let out = shearer(&["gen", "--kind", "petersen", "-o", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("10 15\n"));
    let out = shearer(&["chif", out_path.to_str().unwrap(), "--exact"]);
    assert_eq!(json(&out)["value"], "5/2");
    let k = shearer(&["gen", "--kind", "kneser", "--n", "7", "--k", "3"]);
    assert!(String::from_utf8(k.stdout).unwrap().starts_with("35 70\n"));
    let bad = shearer(&["gen", "--kind", "kneser", "--n", "5"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn seed_env_and_determinism() {
    let a = Command::new(env!("CARGO_BIN_EXE_shearer"))
        .args(["gen", "--kind", "tfp", "--n", "15"])
        .env("SHEARER_SEED", "99")
        .output()
        .unwrap();
    let b = shearer(&["gen", "--kind", "tfp", "--n", "15", "--seed", "99"]);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    fs::write(&g, &a.stdout).unwrap();
    let r1 = shearer(&["verify", g.to_str().unwrap(), "--weights", "random:5"]);
    let r2 = shearer(&["verify", g.to_str().unwrap(), "--weights", "random:5"]);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn edgebound_isolated_handling() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "iso.txt", "6 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let out = shearer(&["edgebound", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = shearer(&["edgebound", g.to_str().unwrap(), "--strip-isolated"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["n"], 5);
}

#[test]
fn spectral_bounds_and_dynamics() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c5.txt", C5);
    let out = shearer(&["spectral", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!((json(&out)["spectral"]["rho"].as_f64().unwrap() - 2.0).abs() < 1e-10);
    let out = shearer(&["bounds", g.to_str().unwrap()]);
    assert_eq!(json(&out)["chi_f"], "5/2");
    let out = shearer(&["dynamics", g.to_str().unwrap(), "--eps", "0.3", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mix_report"]["identity_holds"], true);
    let out = shearer(&["dynamics", g.to_str().unwrap(), "--eps", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn corpus_runs_every_certifier() {
    let out = shearer(&["corpus", "--filter", "C1", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let graphs = v["graphs"].as_array().unwrap();
    let names: Vec<&str> = graphs.iter().map(|g| g["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["C10", "C11", "C12"]);
    assert_eq!(graphs[0]["certificates"].as_array().unwrap().len(), 7);
    let serial = shearer(&["corpus", "--filter", "C1", "--jobs", "1"]);
    assert_eq!(serial.stdout, out.stdout);
}

#[test]
fn pretty_tables() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c5.txt", C5);
    let out = shearer(&["verify", g.to_str().unwrap(), "--pretty"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("per_vertex:"));
    assert!(text.contains("achieved"));
}
