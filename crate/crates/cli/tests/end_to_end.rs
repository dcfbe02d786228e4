use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use vortex_model::Config;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_vortex-cert"));
    c.env_remove("VORTEX_CERT_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_file(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn manifest(p: &Path) -> Value {
    let mut m = p.as_os_str().to_owned();
    m.push(".manifest.json");
    json_file(Path::new(&m))
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn certify_square_antiprism_equilibrium() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "a8.json");
    let o = run(&["certify", "--fixture", "antiprism8", "--omega", "0", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let c = json_file(&out);
    assert_eq!(c["status"], "validated");
    assert_eq!((c["m"].as_u64(), c["n"].as_u64(), c["p"].as_u64()), (Some(4), Some(2), Some(0)));
    assert!(c["bounds"]["r0"].as_f64().unwrap() < 1e-10);
    assert!(c["provenance"].get("created").is_none());

    let m = manifest(&out);
    assert_eq!(m["command"], "certify");
    assert_eq!(m["outputs"], serde_json::json!([s(&out)]));
    assert_eq!(m["parameters"]["omega"], 0.0);
    assert!(m["started"].is_u64() && m["build"].as_str().unwrap().starts_with("vortex-cert"));
    assert_eq!(m["stages"][0]["status"], "validated");
}

#[test]
fn certify_near_collision_equilibrium() {
    let o = run(&["certify", "--fixture", "collision10", "--omega", "50", "--json"]);
    assert_eq!(code(&o), 0);
    let c: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(c["status"], "validated");
    assert!(c["radii"].as_array().unwrap().iter().all(|r| r.as_f64().unwrap() <= 4e-13));
}

#[test]
fn certify_reports_not_validated() {
    let dir = TempDir::new().unwrap();
    let cfg = path(&dir, "three.json");
    fs::write(&cfg, r#"{"vortices": [[1, 0, 0], [0.995, 0.0998749, 0], [0, 0, 1]]}"#).unwrap();
    let out = path(&dir, "report.json");
    let o = run(&["certify", "--config", s(&cfg), "--omega", "0", "--out", s(&out)]);
    assert_eq!(code(&o), 2);
    let r = json_file(&out);
    assert_eq!(r["status"], "NotValidated");
    assert!(r["reason"].is_string());
    assert_eq!(manifest(&out)["inputs"], serde_json::json!([s(&cfg)]));
}

#[test]
fn bad_input_exits_with_one() {
    let dir = TempDir::new().unwrap();
    let cfg = path(&dir, "broken.json");
    fs::write(&cfg, r#"{"m": 5, "n": 1"#).unwrap();
    assert_eq!(code(&run(&["certify", "--config", s(&cfg)])), 1);
    assert_eq!(code(&run(&["certify", "--config", s(&path(&dir, "missing.json"))])), 1);
    assert_eq!(code(&run(&["certify", "--fixture", "dodecahedron"])), 1);
    assert_eq!(code(&run(&["certify"])), 1);
    assert_eq!(code(&run(&["certify", "--fixture", "octahedron", "--omega", "nan"])), 1);
    assert_eq!(code(&run(&["certify", "--fixture", "octahedron", "--no-such-flag"])), 1);
    assert_eq!(code(&run(&["certify", "--one-ring", "5:2"])), 1);
    assert_eq!(code(&run(&["certify", "--one-ring", "5:2:1.5"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn five_vortex_branch_is_certified_stable_end_to_end() {
    let dir = TempDir::new().unwrap();
    let chain = path(&dir, "n5.json");
    let o = run(&[
        "continue", "--fixture", "bipyramid5", "--form", "2", "--omega-from", "0.2", "--omega-to", "0.3", "--out",
        s(&chain),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let c = json_file(&chain);
    let segs = c.as_array().unwrap();
    assert!(!segs.is_empty());
    assert_eq!(segs[0]["omega"][0], 0.2);
    assert_eq!(segs.last().unwrap()["omega"][1], 0.3);
    assert!(segs.iter().all(|x| x["status"] == "validated"));

    let verdicts = path(&dir, "n5-stability.json");
    let o = run(&["stability", "--chain", s(&chain), "--out", s(&verdicts)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = json_file(&verdicts);
    assert!(v.as_array().unwrap().iter().all(|x| x["verdict"] == "CertifiedStable" && x["color"] == "green"));
    assert_eq!(manifest(&verdicts)["inputs"], serde_json::json!([s(&chain)]));
}

#[test]
fn continuation_stalls_at_the_eight_vortex_bifurcation() {
    let o = run(&[
        "continue", "--fixture", "antiprism8", "--form", "2", "--omega-from", "1.5", "--omega-to", "1.7", "--json",
    ]);
    assert_eq!(code(&o), 2);
    let summary: Value = serde_json::from_slice(&o.stderr).unwrap();
    let stall = &summary["stall"];
    assert_eq!(stall["status"], "black");
    let at = stall["omega"][0].as_f64().unwrap();
    assert!((1.55..=1.70).contains(&at), "{at}");
    assert!(summary["segments"].as_array().unwrap().iter().all(|x| x["status"] == "yellow"));
    let chain: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(chain.as_array().unwrap().last().unwrap()["omega"][1].as_f64().unwrap(), at);
}

#[test]
fn empty_range_and_numeric_runs() {
    let o = run(&["continue", "--one-ring", "5:2:0.1", "--omega-to", "0.1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(serde_json::from_slice::<Value>(&o.stdout).unwrap(), serde_json::json!([]));

    let o = run(&["continue", "--one-ring", "5:2:0.1", "--omega-to", "0.35", "--no-rigor", "--step", "0.02"]);
    assert_eq!(code(&o), 0);
    let chain: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(chain.as_array().unwrap().iter().all(|x| x["status"] == "numeric"));
    assert_eq!(code(&run(&["continue", "--one-ring", "5:2:0.1", "--omega-to", "0.35", "--step", "0"])), 1);
}

#[test]
fn stability_verdicts_of_single_configurations() {
    // pentagonal bipyramid: Q2 has an eigenvalue at zero
    let o = run(&["stability", "--one-ring", "5:2:0", "--json"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "Inconclusive");

    let o = run(&["stability", "--one-ring", "5:2:0.1"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "CertifiedStable");

    let o = run(&["stability", "--one-ring", "7:0:0.5"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "NotPositive");

    assert_eq!(code(&run(&["stability", "--chain", "/nonexistent/chain.json"])), 1);
}

/// z of the pentagon with poles rotating at `omega = 3z / (1 - z^2)`.
fn pentagon_height(omega: f64) -> f64 {
    if omega == 0.0 {
        return 0.0;
    }
    (-3.0 + (9.0 + 4.0 * omega * omega).sqrt()) / (2.0 * omega)
}

#[test]
fn diagram_of_the_pentagon_family() {
    let dir = TempDir::new().unwrap();
    let chain = path(&dir, "pentagon.json");
    let omega_to = 3.0 * 0.15 / (1.0 - 0.15 * 0.15);
    let o = run(&[
        "continue", "--one-ring", "5:2:0.01", "--omega-to", &omega_to.to_string(), "--out", s(&chain),
    ]);
    assert_eq!(code(&o), 0);
    let csv = path(&dir, "pentagon.csv");
    let o = run(&["diagram", "--chain", s(&chain), "--out", s(&csv)]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&fs::read_to_string(&csv).unwrap());
    assert_eq!(rows[0], cli::DIAGRAM_COLUMNS.map(String::from).to_vec());
    assert!(rows.len() > 2);
    for r in &rows[1..] {
        let x: Vec<f64> = r[..6].iter().map(|v| v.parse().unwrap()).collect();
        for omega in [x[0], x[1]] {
            let mu = 5.0 * pentagon_height(omega);
            assert!(x[2] <= mu && mu <= x[3], "{r:?}");
        }
        assert!(x[4] <= x[5]);
        assert!(["green", "yellow", "black"].contains(&r[6].as_str()));
    }
    // the family is stable for 0 < |z| < 0.188
    assert_eq!(rows.last().unwrap()[6], "green");

    let empty = path(&dir, "empty.json");
    fs::write(&empty, "[]").unwrap();
    let o = run(&["diagram", "--chain", s(&empty)]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), cli::DIAGRAM_COLUMNS.join(","));
}

#[test]
fn simulation_conserves_energy_and_momentum() {
    let o = run(&["simulate", "--fixture", "bipyramid5", "--t", "1", "--dt", "1e-3", "--every", "50", "--perturb", "0.05"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let rows = csv_rows(&text);
    assert_eq!(&rows[0][..5], ["t", "H", "phi_x", "phi_y", "phi_z"]);
    assert_eq!(rows[0].len(), 5 + 3 * 5);
    assert_eq!(rows.len(), 1 + 21);
    let num = |r: &Vec<String>, k: usize| r[k].parse::<f64>().unwrap();
    let first = &rows[1];
    for r in &rows[1..] {
        assert!((num(r, 1) - num(first, 1)).abs() <= 1e-8);
        for k in 2..5 {
            assert!((num(r, k) - num(first, k)).abs() <= 1e-8);
        }
    }
    assert!((num(rows.last().unwrap(), 0) - 1.0).abs() < 1e-12);
    assert_eq!(code(&run(&["simulate", "--fixture", "bipyramid5", "--dt", "0"])), 1);
    assert_eq!(code(&run(&["simulate", "--fixture", "bipyramid5", "--dt", "-1e-3"])), 1);
}

#[test]
fn seeded_perturbations_are_reproducible() {
    let args = ["simulate", "--fixture", "octahedron", "--t", "0.1", "--dt", "1e-2", "--perturb", "1e-2"];
    let with = |seed: &str| bin().args(args).env("VORTEX_CERT_SEED", seed).output().unwrap();
    let (a, b, c) = (with("11"), with("11"), with("12"));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(code(&with("eleven")), 1);
}

#[test]
fn identical_invocations_give_identical_artifacts() {
    let dir = TempDir::new().unwrap();
    let mut texts = Vec::new();
    for k in 0..2 {
        let chain = path(&dir, &format!("chain{k}.json"));
        let o = run(&["continue", "--one-ring", "4:1:0.3", "--omega-to", "1.1", "--out", s(&chain)]);
        assert_eq!(code(&o), 0);
        let csv = path(&dir, &format!("diagram{k}.csv"));
        assert_eq!(code(&run(&["diagram", "--chain", s(&chain), "--out", s(&csv)])), 0);
        texts.push((fs::read(&chain).unwrap(), fs::read(&csv).unwrap()));
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn catalog_listing_and_configuration_json() {
    let o = run(&["catalog", "list", "--json"]);
    assert_eq!(code(&o), 0);
    let list: Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = list.as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    assert_eq!(names, catalog::NAMES.to_vec());

    let o = run(&["catalog", "show", "octahedron", "--form", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(v["provenance"].is_string());
    match Config::from_json(&text).unwrap() {
        Config::Rings(r) => assert_eq!((r.m(), r.n(), r.p()), (3, 2, 0)),
        other => panic!("{other:?}"),
    }
    assert_eq!(code(&run(&["catalog", "show", "dodecahedron"])), 1);
    assert_eq!(code(&run(&["catalog", "show", "octahedron", "--form", "5"])), 1);
}
