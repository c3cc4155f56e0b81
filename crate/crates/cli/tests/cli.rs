use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcone"))
        .args(args)
        .output()
        .expect("qcone runs")
}

fn gen_curve(dir: &Path, genus: &str, seed: &str) -> PathBuf {
    let path = dir.join(format!("g{genus}-s{seed}.json"));
    let out = qcone(&["gen-curve", "--genus", genus, "--seed", seed, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn genus_six_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let out = qcone(&["gen-curve", "--genus", "6", "--seed", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());
}

#[test]
fn unsupported_prime_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let out = qcone(&[
        "gen-curve", "--genus", "4", "--prime", "1000", "--seed", "1", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quadrics_through_a_genus_five_curve() {
    let dir = tempfile::tempdir().unwrap();
    let curve = gen_curve(dir.path(), "5", "7");
    let out = qcone(&["ideal", "--curve", curve.to_str().unwrap(), "--degree", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["basis"].as_array().unwrap().len(), 3);
    assert_eq!(v["config"]["degree"], 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("dim I(2) = 3"));
}

#[test]
fn curve_files_round_trip_with_points() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    let out = qcone(&["gen-curve", "--genus", "4", "--seed", "2", "--points", "12", "--out", p]);
    assert!(out.status.success());
    let first = std::fs::read(&path).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 12);
    let out = qcone(&["ideal", "--curve", p, "--degree", "3"]);
    assert_eq!(json(&out)["dim"], 5);
    qcone(&["gen-curve", "--genus", "4", "--seed", "2", "--points", "12", "--out", p]);
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn config_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let curve = gen_curve(dir.path(), "4", "1");
    let c = curve.to_str().unwrap();
    for (body, field) in [
        (r#"{"sweeep": 10}"#, "sweeep"),
        (r#"{"oracle_points": 0}"#, "oracle_points"),
        (r#"{"k_max": 3}"#, "k_max"),
    ] {
        let cfg = dir.path().join("cfg.json");
        std::fs::write(&cfg, body).unwrap();
        let out = qcone(&["verify", "--curve", c, "--config", cfg.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&out.stderr).contains(field));
    }
}

#[test]
fn reconstruct_and_hessian_succeed() {
    let dir = tempfile::tempdir().unwrap();
    let curve = gen_curve(dir.path(), "4", "1");
    let c = curve.to_str().unwrap();
    let out = qcone(&["reconstruct", "--curve", c, "--w-seed", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["cone"]["W"].as_array().unwrap().len(), 3);
    assert_eq!(v["polars"].as_array().unwrap().len(), 1);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));

    let out = qcone(&["hessian", "--curve", c, "--w-seed", "3", "--sweep", "40"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 41);
    assert!(csv.starts_with("kind,u0,u1,u2,gamma,det,kernel_match\n"));
}

#[test]
fn spans_with_a_quick_config() {
    let dir = tempfile::tempdir().unwrap();
    let curve = gen_curve(dir.path(), "4", "1");
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"off_curve_probes": 100, "structured_probes": 5}"#).unwrap();
    let traj = dir.path().join("traj.csv");
    let out = qcone(&[
        "spans",
        "--curve",
        curve.to_str().unwrap(),
        "--config",
        cfg.to_str().unwrap(),
        "--trajectory",
        traj.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["f4_rank"], 5);
    assert_eq!(v["config"]["suite"]["off_curve_probes"], 100);
    assert!(std::fs::read_to_string(traj).unwrap().starts_with("batch,f4_rank,f3_rank\n"));
}

/// The full suite reports one known failing check (criterion 10), so the
/// exit status is the verification-failure code; the reports must match byte for byte.
#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let curve = gen_curve(dir.path(), "4", "1");
    let c = curve.to_str().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let ra = qcone(&["verify", "--curve", c, "--full", "--out", a.to_str().unwrap()]);
    let rb = qcone(&["verify", "--curve", c, "--full", "--out", b.to_str().unwrap()]);
    assert_eq!(ra.status.code(), Some(3));
    assert_eq!(rb.status.code(), Some(3));
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let failed: Vec<u64> = v["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["id"].as_u64().unwrap())
        .collect();
    assert_eq!(failed, vec![10]);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 13);
    assert!(String::from_utf8_lossy(&ra.stderr).contains("criterion 13 [g=4] determinism"));
}
