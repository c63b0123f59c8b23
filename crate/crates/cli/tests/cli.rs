use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use onsager_core::io::{export_model, parse_model};
use onsager_core::model::{build_model, solve_phi};
use onsager_core::{ParamSet, Scalar, TDModel};
use serde_json::Value;
use tempfile::TempDir;

fn onsager(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_onsager"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn records(out: &[u8]) -> Vec<Value> {
    String::from_utf8_lossy(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn without_timing(mut recs: Vec<Value>) -> Vec<Value> {
    for r in &mut recs {
        r.as_object_mut().unwrap().remove("micros");
    }
    recs
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const GOLDEN: &str = "suites = [\"all\"]\n[[target]]\nd = 1\nq = 2\na = 3\nb = 5\nphi = [\"1\"]\n";

fn d2_model() -> TDModel {
    let (q, a, b) = (Scalar::from_int(2), Scalar::from_int(3), Scalar::from_int(5));
    let phi = solve_phi(2, &q, &a, &b).unwrap().remove(0);
    build_model(&ParamSet::new(2, q, a, b, phi).unwrap()).unwrap()
}

#[test]
fn golden_config_passes_with_exit_zero() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "golden.toml", GOLDEN);
    let out = onsager(&["verify", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let recs = records(&out.stdout);
    assert!(recs.len() > 100);
    assert!(recs.iter().all(|r| r["pass"] == true && r.get("witness").is_none()));
    for suite in ["scalars", "model", "lusztig", "splitmaps", "equitable", "diagrams"] {
        assert!(recs.iter().any(|r| r["suite"] == suite), "{suite} ran");
    }
}

#[test]
fn every_check_appears_once_per_target() {
    let dir = TempDir::new().unwrap();
    let text = format!("{GOLDEN}[[target]]\nname = \"second\"\nd = 2\nq = 2\na = 3\nb = 5\n");
    let cfg = write(dir.path(), "two.toml", &text);
    let recs = records(&onsager(&["verify", "--config", &cfg]).stdout);
    for target in ["d=1 q=2 a=3 b=5 phi=1", "second"] {
        let names: Vec<&str> = recs
            .iter()
            .filter(|r| r["target"] == target)
            .map(|r| r["check"].as_str().unwrap())
            .collect();
        let unique: std::collections::HashSet<&&str> = names.iter().collect();
        assert!(!names.is_empty());
        assert_eq!(names.len(), unique.len(), "{target}");
    }
}

#[test]
fn collision_gives_validation_entry() {
    let dir = TempDir::new().unwrap();
    // d = 2, q = 2, a = 2: a^2 = q^{2d-2}
    let text = format!("{GOLDEN}[[target]]\nd = 2\nq = 2\na = 2\nb = 5\n");
    let cfg = write(dir.path(), "bad.toml", &text);
    let out = onsager(&["verify", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    let recs = records(&out.stdout);
    let bad: Vec<&Value> = recs.iter().filter(|r| r["target"] == "d=2 q=2 a=2 b=5").collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["check"], "input.params");
    assert_eq!(bad[0]["pass"], false);
    assert!(bad[0]["witness"]["note"].as_str().unwrap().contains("a^2 = q^2"));
    // the golden target is still fully reported
    assert!(recs
        .iter()
        .filter(|r| r["target"] != "d=2 q=2 a=2 b=5")
        .all(|r| r["pass"] == true));
}

#[test]
fn imported_matrices_with_perturbed_phi_fail_qdg() {
    let dir = TempDir::new().unwrap();
    let m = d2_model();
    let mut astar = m.astar().clone();
    astar[(0, 1)] = &astar[(0, 1)] + &Scalar::one();
    let pair = TDModel::from_matrices(m.params().clone(), m.a().clone(), astar, None).unwrap();
    let path = write(dir.path(), "perturbed.model", &export_model(&pair));
    let out = onsager(&["verify", "--model", &path, "--suite", "model"]);
    assert_eq!(out.status.code(), Some(1));
    let recs = records(&out.stdout);
    let qdg = recs.iter().find(|r| r["check"] == "qdg.relation_a").unwrap();
    assert_eq!(qdg["pass"], false);
    let rows = qdg["witness"]["matrix"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().flat_map(|r| r.as_array().unwrap()).any(|x| x != "0"));
}

#[test]
fn imported_phi_file_with_perturbed_entry_reports_residual() {
    let dir = TempDir::new().unwrap();
    let m = d2_model();
    let phi = m.phi().unwrap();
    let bumped = &phi[0] + &Scalar::one();
    let text = format!("2 2 3 5\nphi: {} {}\n", bumped, phi[1]);
    let path = write(dir.path(), "phi.model", &text);
    let out = onsager(&["verify", "--model", &path]);
    assert_eq!(out.status.code(), Some(1));
    let recs = records(&out.stdout);
    assert!(recs.iter().all(|r| r["suite"] == "input"));
    assert!(recs.iter().any(|r| r["check"] == "input.model" && r["pass"] == false));
    let failing: Vec<&Value> = recs
        .iter()
        .filter(|r| r["check"].as_str().unwrap().starts_with("qdg.") && r["pass"] == false)
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|r| r["witness"]["matrix"].is_array()));
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let dir = TempDir::new().unwrap();
    let text = format!(
        "parallel = true\n{GOLDEN}[[target]]\nd = 2\nq = \"3/2\"\na = \"-2/7\"\nb = 3\n[[target]]\nd = 2\nq = 2\na = 2\nb = 5\n"
    );
    let cfg = write(dir.path(), "det.toml", &text);
    let first = without_timing(records(&onsager(&["verify", "--config", &cfg]).stdout));
    let second = without_timing(records(&onsager(&["verify", "--config", &cfg]).stdout));
    assert_eq!(first, second);
    let serial_cfg = write(
        dir.path(),
        "serial.toml",
        &text.replace("parallel = true", "parallel = false"),
    );
    let serial = without_timing(records(&onsager(&["verify", "--config", &serial_cfg]).stdout));
    assert_eq!(first, serial);
}

#[test]
fn output_path_from_config_and_flag() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "o.toml", &format!("output = \"r.jsonl\"\n{GOLDEN}"));
    let out = onsager(&["verify", "--config", &cfg, "--suite", "model"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let recs = records(&fs::read(dir.path().join("r.jsonl")).unwrap());
    assert!(recs.iter().all(|r| r["suite"] == "model"));

    let flag = dir.path().join("f.jsonl");
    let out = onsager(&[
        "verify",
        "--d",
        "1",
        "--q",
        "2",
        "--a",
        "3",
        "--b",
        "5",
        "--phi",
        "1",
        "--suite",
        "scalars",
        "--output",
        flag.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!records(&fs::read(flag).unwrap()).is_empty());
}

#[test]
fn setup_errors_exit_two_with_line_numbers() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "syntax.toml", "[[target]]\nd = 1\nq = = 2\n");
    let out = onsager(&["verify", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax.toml:3:"));

    let cfg = write(dir.path(), "suite.toml", &GOLDEN.replace("\"all\"", "\"al\""));
    assert_eq!(onsager(&["verify", "--config", &cfg]).status.code(), Some(2));

    let cfg = write(dir.path(), "empty.toml", "suites = [\"all\"]\n");
    assert_eq!(onsager(&["verify", "--config", &cfg]).status.code(), Some(2));

    let missing = dir.path().join("missing.toml");
    assert_eq!(
        onsager(&["verify", "--config", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    let model = write(dir.path(), "bad.model", "1 2 3 5\nphi: 1/0\n");
    let out = onsager(&["verify", "--model", &model]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let cfg = write(dir.path(), "ref.toml", "[[target]]\nmodel = \"bad.model\"\n");
    assert_eq!(onsager(&["verify", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn model_files_resolve_relative_to_config() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "g.model", "1 2 3 5\nphi: 1\n");
    let cfg = write(
        dir.path(),
        "rel.toml",
        "suites = [\"model\", \"lusztig\"]\n[[target]]\nmodel = \"g.model\"\n",
    );
    let out = onsager(&["verify", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    assert!(records(&out.stdout).iter().all(|r| r["target"] == "g.model"));
}

#[test]
fn export_import_round_trip() {
    let dir = TempDir::new().unwrap();
    for extra in [&[][..], &["--matrices"][..]] {
        let path = dir.path().join("m.model");
        let mut args = vec![
            "export",
            "--d",
            "2",
            "--q",
            "3/2",
            "--a",
            "-2/7",
            "--b",
            "3",
            "--out",
            path.to_str().unwrap(),
        ];
        args.extend_from_slice(extra);
        assert_eq!(onsager(&args).status.code(), Some(0));
        let written = fs::read_to_string(&path).unwrap();
        let out = onsager(&["import", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(String::from_utf8(out.stdout).unwrap(), written);
        let back = parse_model(&written).unwrap().into_model().unwrap();
        assert_eq!(back.a().rows(), 3);
    }
}

#[test]
fn solve_phi_prints_sequences() {
    let out = onsager(&[
        "solve-phi",
        "--d",
        "1",
        "--q",
        "2",
        "--a",
        "3",
        "--b",
        "5",
        "--limit",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let first: Scalar = text.lines().next().unwrap().parse().unwrap();
    assert!(!first.is_zero());
    assert!(text.lines().count() <= 2);

    let out = onsager(&["solve-phi", "--d", "2", "--q", "2", "--a", "2", "--b", "5"]);
    assert_eq!(out.status.code(), Some(2));
}
