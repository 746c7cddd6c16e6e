use std::process::Command;

fn osc3d(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_osc3d")).args(args).output().expect("spawn osc3d")
}

fn stdout(args: &[&str]) -> String {
    let out = osc3d(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn headers() {
    let first = |args: &[&str]| stdout(args).lines().next().unwrap().to_string();
    assert_eq!(first(&["mandel"]), "delta,r,Q");
    assert_eq!(first(&["squeeze-map"]), "phi,r,var1,var2,squeezed");
    assert_eq!(first(&["squeeze_map"]), "phi,r,var1,var2,squeezed");
    assert_eq!(first(&["borders"]), "phi,r_plus,r_minus");
    assert_eq!(first(&["evolve", "--alpha", "1"]), "t,rx,ry,rz,px,py,pz,phase");
    assert_eq!(first(&["wigner", "--grid", "z:-1:1:3", "--grid", "py:-1:1:3"]), "z,py,W");
}

#[test]
fn row_counts_follow_the_grid() {
    let csv = stdout(&["mandel", "--grid", "delta:0:1:4", "--grid", "r:0:1:5"]);
    assert_eq!(csv.lines().count(), 1 + 20);
    let csv = stdout(&["borders", "--grid", "phi:0.1:3:7"]);
    assert_eq!(csv.lines().count(), 1 + 7);
}

#[test]
fn vacuum_mandel_rows_equal_cosh_2r() {
    for line in stdout(&["mandel", "--alpha", "0"]).lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let expected = if v[1] == 0.0 { 0.0 } else { (2.0 * v[1]).cosh() };
        assert!((v[2] - expected).abs() < 1e-12, "{line}");
    }
}

#[test]
fn ground_state_wigner_peak() {
    let csv = stdout(&["wigner", "--grid", "x:-1:1:3", "--grid", "px:-1:1:3"]);
    let centre: Vec<f64> = csv.lines().nth(5).unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(&centre[..2], &[0.0, 0.0]);
    assert!((centre[2] - std::f64::consts::PI.powi(-3)).abs() < 1e-15);
}

#[test]
fn out_file_and_config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("q.json");
    std::fs::write(&cfg, r#"{"format": "json", "alpha": "0.5", "grid": ["delta:0:1:2", "r:0:0.5:2"]}"#).unwrap();
    let status =
        osc3d(&["mandel", "--config", cfg.to_str().unwrap(), "--alpha", "1.25", "--out", out.to_str().unwrap()]);
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["meta"]["config"]["alpha"], "1.25");
    assert_eq!(v["meta"]["columns"], serde_json::json!(["delta", "r", "Q"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn config_errors_exit_with_two() {
    let code = |args: &[&str]| osc3d(args).status.code();
    assert_eq!(code(&["mandel", "--grid", "delta:0:1:1", "--grid", "r:0:1:3"]), Some(2));
    assert_eq!(code(&["evolve"]), Some(2));
    assert_eq!(code(&["wigner", "--state", "fock:1,2"]), Some(2));
    assert_eq!(code(&["wigner", "--params", "1,-1,1"]), Some(2));
    assert_eq!(code(&["mandel", "--config", "/nonexistent/run.json"]), Some(2));
    assert_eq!(code(&["mandel", "--format", "xml"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
}
