use std::process::{Command, Output};

use nphoton::scan::ScanResult;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nphoton"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn table(out: &Output) -> ScanResult {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    ScanResult::from_csv(&stdout(out)).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(out)).unwrap()
}

fn row_for(t: &ScanResult, pred: impl Fn(&[f64]) -> bool) -> Vec<f64> {
    t.rows.iter().find(|r| pred(r)).cloned().expect("row present")
}

#[test]
fn state_symmetric_pair() {
    let out = run(&["state", "--n", "1", "--m", "0", "--gamma", "0.7853981634", "--theta", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n1,n2,amplitude");
    assert!(lines[1].starts_with("1,0,0.70710678"));
    assert!(lines[2].starts_with("0,1,0.70710678"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn state_degenerate_exits_two() {
    let out = run(&["state", "--n", "2", "--m", "1", "--gamma", "pi/4", "--theta", "pi"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero norm"));
    assert!(out.stdout.is_empty());
}

#[test]
fn state_ten_digit_angles_do_not_cancel_exactly() {
    let out = run(&["state", "--n", "2", "--m", "1", "--gamma", "0.7853981634", "--theta", "3.14159265"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().nth(1).unwrap().starts_with("1,1,"));
}

#[test]
fn state_superposition() {
    let out = run(&[
        "state", "--superpose", "--n", "3", "--alphas", "1,1,0,0", "--thetas", "0,0,0,0", "--gamma", "0",
    ]);
    assert_eq!(
        stdout(&out),
        "n1,n2,amplitude\n3,0,0.707106781187\n2,1,0.707106781187\n"
    );
}

#[test]
fn state_complex_coefficients_and_json() {
    let out = run(&[
        "state", "--superpose", "--n", "1", "--alphas", "1,0+1i", "--gamma", "0", "--format", "json",
    ]);
    let v = json(&out);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    // psi_10 = |1,0>, psi_11 = |0,1> at gamma = 0
    assert_eq!(rows[0]["n1"], 1);
    assert!((rows[1]["im"].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["state", "--n", "3"]).status.code(), Some(1));
    assert_eq!(run(&["state", "--n", "3", "--m", "5", "--gamma", "0"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["state", "--n", "1", "--m", "0", "--gamma", "tau"]).status.code(), Some(1));
    assert_eq!(run(&["scan-bell", "--grid", "0:1"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--only", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["state", "--vacuum", "--n", "1"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("scan-entropy"));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn entropy_command() {
    let t = table(&run(&["entropy", "--n", "3", "--m", "0", "--gamma", "pi/4"]));
    assert_eq!(t.columns, ["entropy"]);
    assert!((t.rows[0][0] - 1.0).abs() < 1e-12);
    let t = table(&run(&["entropy", "--vacuum"]));
    assert_eq!(t.rows[0][0], 0.0);
}

#[test]
fn bell_slice_value_and_curve() {
    let t = table(&run(&["bell", "--n", "1", "--m", "0", "--gamma", "pi/4", "--theta-b", "-pi/4"]));
    assert_eq!(t.columns, ["theta_b", "bell"]);
    assert!((t.rows[0][1] + 2.0 * 2f64.sqrt()).abs() < 1e-12);

    let t = table(&run(&["bell", "--n", "2", "--m", "1", "--gamma", "0.3", "--grid", "0:pi:5"]));
    assert_eq!(t.rows.len(), 5);
    for r in &t.rows {
        assert!((r[1] - 2.0 * r[0].cos()).abs() < 1e-10);
    }
}

#[test]
fn scan_entropy_single_family() {
    let t = table(&run(&["scan-entropy", "--family", "single", "--grid", "0:pi/2:3", "--verify"]));
    assert_eq!(t.columns, ["gamma", "entropy", "defined"]);
    let peak = row_for(&t, |r| (r[0] - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    assert!((peak[1] - 1.0).abs() < 1e-12);
    assert_eq!(peak[2], 1.0);
}

#[test]
fn scan_entropy_equal_weight_family() {
    let t = table(&run(&[
        "scan-entropy", "--family", "equal-weight", "--grid", "0:3pi/4:4", "--ns", "1,4", "--verify",
    ]));
    assert_eq!(t.columns, ["gamma", "N", "entropy", "defined"]);
    let r = row_for(&t, |r| r[0] == 0.0 && r[1] == 4.0);
    assert!((r[2] - 2.3219).abs() < 1e-4);
    let r = row_for(&t, |r| (r[0] - 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-12 && r[1] == 1.0);
    assert_eq!(r[3], 0.0);
}

#[test]
fn scan_bell_examples() {
    let t = table(&run(&["scan-bell", "--grid", "pi/8:pi/2:4", "--theta-grid", "0:pi/3:2"]));
    assert_eq!(t.columns, ["gamma", "theta_m", "bell_max"]);
    let near = |a: f64, b: f64| (a - b).abs() < 1e-12;
    let r = row_for(&t, |r| near(r[0], std::f64::consts::FRAC_PI_4) && r[1] == 0.0);
    assert!((r[2] - 2.82843).abs() < 1e-5);
    for r in t.rows.iter().filter(|r| near(r[0], std::f64::consts::FRAC_PI_2)) {
        assert!((r[2] - 2.0).abs() < 1e-12);
    }
    let r = row_for(&t, |r| near(r[0], std::f64::consts::FRAC_PI_8) && r[1] > 1.0);
    assert!((r[2] - 2.1213203435596424).abs() < 1e-12);
}

fn magnitude(args: &[&str]) -> f64 {
    json(&run(args))["magnitude"].as_f64().unwrap()
}

#[test]
fn optimize_examples() {
    let v = json(&run(&["optimize", "--n", "1", "--m", "0", "--gamma", "pi/4", "--theta", "0"]));
    assert!((v["magnitude"].as_f64().unwrap() - 2.828427).abs() < 1e-6);
    for key in ["a", "a_p", "b", "b_p"] {
        assert!(v["angles"][key]["theta"].is_f64());
        assert!(v["angles"][key]["phi"].is_f64());
    }
    assert!(v["converged"].as_bool().unwrap());
    assert!(v["iterations"].is_u64());

    assert!((magnitude(&["optimize", "--vacuum"]) - 2.0).abs() < 1e-6);
    assert!((magnitude(&["optimize", "--n", "5", "--m", "2", "--gamma", "pi/8"]) - 2.449490).abs() < 1e-6);
    // |2,1> and |1,2> lie in different pseudospin blocks: no violation
    assert!((magnitude(&["optimize", "--n", "3", "--m", "1", "--gamma", "pi/8"]) - 2.0).abs() < 1e-6);
    let full = magnitude(&["optimize", "--n", "5", "--m", "2", "--gamma", "pi/8", "--theta", "1", "--include-phi"]);
    let polar = magnitude(&["optimize", "--n", "5", "--m", "2", "--gamma", "pi/8", "--theta", "1"]);
    assert!(full >= polar - 1e-9);
}

#[test]
fn optimize_degenerate_exits_two() {
    let out = run(&["optimize", "--n", "4", "--m", "2", "--gamma", "pi/4", "--theta", "pi"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_default_passes() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
    assert!(text.lines().any(|l| l.starts_with("DIAG [cross-correlation]")));
    for suite in nphoton::verify::SUITES {
        assert!(text.contains(&format!("[{suite}]")), "missing {suite}");
    }
}

#[test]
fn verify_single_suites() {
    let text = stdout(&run(&["verify", "--only", "su2"]));
    let checks: Vec<&str> = text.lines().filter(|l| l.contains('[')).collect();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|l| l.starts_with("PASS [su2]")));

    let out = run(&["verify", "--only", "cross-correlation"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("DIAG [cross-correlation]")).count(), 16);
}

#[test]
fn output_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("surface.csv");
    let out = run(&["scan-bell", "--grid", "0:pi:7", "--theta-grid", "-pi:pi:5", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(ScanResult::from_csv(&text).unwrap().to_csv(), text);
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn commands_are_deterministic() {
    let args = ["optimize", "--superpose", "--n", "3", "--alphas", "1,0.5-0.2i,0,1", "--gamma", "0.4", "--include-phi"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["scan-entropy", "--family", "equal-weight", "--grid", "-pi:pi:9", "--format", "json"];
    let first = run(&args);
    assert_eq!(first.stdout, run(&args).stdout);
    let v = json(&first);
    assert_eq!(v["columns"][1], "N");
}
