use std::fs;
use std::process::{Command, Output};

use scspdc::TwoModeState;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scspdc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn state_emits_fock_json() {
    let o = run(&["state", "--lambda", "0", "--M", "1", "--z-re", "1", "--format", "json"]);
    assert!(o.status.success());
    let s = TwoModeState::from_json(stdout(&o).trim()).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((s.amplitude(0, 1).re - h).abs() < 1e-15);
    assert!((s.amplitude(1, 0).re - h).abs() < 1e-15);
}

#[test]
fn evolve_both_reports_agreement() {
    let o = run(&[
        "evolve", "--lambda", "0", "--M", "1", "--z-re", "1", "--r", "0.5", "--method", "both", "--format", "json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let meta = &v["metadata"];
    assert_eq!(meta["method"], "both");
    assert!(meta["cutoff"].as_u64().unwrap() > 1);
    assert!(meta["leakage"].as_f64().unwrap() < 1e-11);
    assert!(meta["fidelity_between_methods"].as_f64().unwrap() >= 1.0 - 1e-10);
    let state = TwoModeState::from_json(&v["state"].to_string()).unwrap();
    assert!((state.norm_sqr() - 1.0).abs() < 1e-12);

    let o = run(&["evolve", "--lambda", "0", "--M", "1", "--r", "0.5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["metadata"]["fidelity_between_methods"].is_null());
}

#[test]
fn sweep_is_deterministic_across_threads() {
    let base = [
        "sweep", "--axis", "lambda:0:2:5", "--axis", "r:0:0.8:4", "--M", "3", "--z-re", "1",
    ];
    let a = run(&[&base[..], &["--threads", "1"]].concat());
    let b = run(&[&base[..], &["--threads", "2"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 21);
    assert_eq!(
        text.lines().next().unwrap(),
        "lambda,M,z_re,z_im,r,theta,S,ns,ni,Qs,Qi,g2,leakage"
    );
}

#[test]
fn sweep_json_and_subset() {
    let o = run(&[
        "sweep", "--axis", "z:0:1:3", "--lambda", "0", "--M", "4", "--r", "0", "--observables", "S,g2", "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[0]["g2"].is_null());
    assert!((rows[2]["S"].as_f64().unwrap() - 0.7265625).abs() < 1e-12);
    assert!(rows[0].get("ns").is_none());
}

#[test]
fn invalid_configs_exit_2() {
    let degenerate = run(&["sweep", "--axis", "lambda:1:1:2", "--M", "4", "--z-re", "1", "--r", "0.1"]);
    assert_eq!(degenerate.status.code(), Some(2));
    let missing = run(&["sweep", "--axis", "lambda:0:1:2", "--M", "4", "--z-re", "1"]);
    assert_eq!(missing.status.code(), Some(2));
    let figure = run(&["figure", "fig9"]);
    assert_eq!(figure.status.code(), Some(2));
    let tol = run(&["state", "--lambda", "0", "--M", "1", "--tail-tol", "2"]);
    assert_eq!(tol.status.code(), Some(0), "state ignores the truncation policy");
    let bad_tol = run(&["evolve", "--lambda", "0", "--M", "1", "--r", "0.1", "--tail-tol", "2"]);
    assert_eq!(bad_tol.status.code(), Some(2));
}

#[test]
fn truncation_failure_exits_3() {
    let o = run(&["evolve", "--lambda", "0", "--M", "2", "--r", "2.5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("max_pairs"));
    let o = run(&["evolve", "--lambda", "0", "--M", "2", "--r", "2.5", "--max-pairs", "5000"]);
    assert!(o.status.success());
}

#[test]
fn config_file_mirrors_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        "# fig 1 blue curve, coarse\naxis = lambda:0:10:6\nM = 4\nz_re = 1\nr = 0.1\nthreads = 1\n",
    )
    .unwrap();
    let out = dir.path().join("s.csv");
    let o = run(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 7);

    // command-line value wins over the file
    let o = run(&["sweep", "--config", cfg.to_str().unwrap(), "--r", "0.5"]);
    assert!(stdout(&o).lines().nth(1).unwrap().contains(",5.00000000000e-1,"));

    fs::write(&cfg, "lambda 3\n").unwrap();
    let o = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn figure_writes_csvs_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["figure", "fig4", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("fig4_manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["figure"], "fig4");
    assert_eq!(manifest["policy"]["max_pairs"], 20000);
    let file = manifest["files"][0]["file"].as_str().unwrap();
    let csv = fs::read_to_string(dir.path().join(file)).unwrap();
    assert_eq!(csv.lines().count(), 102);
    assert!(csv.lines().next().unwrap().contains("P_4_0"));
    assert_eq!(manifest["files"][0]["fixed"]["theta"], 0.0);
}

#[test]
fn verify_catches_corrupted_deformation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.json");
    let o = run(&["verify", "--corrupt-g", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let oracle = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "oracle_equivalence")
        .unwrap();
    assert_eq!(oracle["passed"], false);
    assert!(oracle["measured"].as_f64().unwrap() > 1e-3);
}
