use std::path::PathBuf;
use std::process::{Command, Output};

fn projdunkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projdunkl")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("projdunkl-cli-{tag}-{}", std::process::id()))
}

#[test]
fn eval_examples() {
    let out = projdunkl(&["eval", "T", "--kappa", "1/2", "--poly", "x1^2", "--xi", "(1)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "5/2*x1");

    let out = projdunkl(&["eval", "chi", "--kappa", "1", "--poly", "x1^2"]);
    assert_eq!(stdout(&out).trim(), "1/3*x1^2 (scale: 1/Γ(2))");

    let out = projdunkl(&["eval", "M", "--kappa", "0", "--z", "1"]);
    assert_eq!(stdout(&out).trim(), "2.718281828459045");

    let out = projdunkl(&["eval", "EK", "--gamma", "0", "--delta", "1", "--poly", "x1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn parse_errors_exit_with_two() {
    let out = projdunkl(&["eval", "T", "--kappa", "1", "--poly", "x1 +* 2", "--xi", "(1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column"));

    let out = projdunkl(&["transform", "--function", "sinc", "--kappa", "0", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = projdunkl(&["verify", "--max-degree", "11"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("max_degree"));
}

#[test]
fn transform_examples() {
    let out = projdunkl(&["transform", "--function", "indicator", "--kappa", "0", "--lambda", "pi"]);
    let text = stdout(&out);
    let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert!(row[3] < 1e-12, "{text}");

    let out = projdunkl(&["transform", "--function", "gaussian", "--kappa", "0", "--lambda", "0"]);
    let text = stdout(&out);
    let re: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((re - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-8);

    let out = projdunkl(&[
        "transform",
        "--function",
        "bump",
        "--kappa",
        "1/2",
        "--lambda",
        "0:5:1",
        "--report",
        "factorization",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let worst = report["max_discrepancy"].as_f64().unwrap();
    assert!(worst < 1e-7, "{report}");
}

#[test]
fn grid_and_quadrature() {
    let out = projdunkl(&["grid", "--kappa", "0", "--lambda", "1", "--x", "0:1:0.5"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    let last: Vec<f64> = text.lines().last().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert!((last[3] - 1f64.cos()).abs() < 1e-14 && (last[4] - 1f64.sin()).abs() < 1e-14);

    let out = projdunkl(&["quadrature", "--kappa", "1", "--order", "4"]);
    let rule: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let total: f64 = rule["weights"].as_array().unwrap().iter().map(|w| w.as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-14);
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "--suite", "geometry", "--suite", "commutativity", "--samples", "30", "--seed", "5"];
    let (a, b) = (scratch("a"), scratch("b"));
    let run = |dir: &PathBuf| {
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--out", dir.to_str().unwrap()]);
        projdunkl(&full)
    };
    assert!(run(&a).status.success());
    assert!(run(&b).status.success());
    for file in ["records.jsonl", "summary.json"] {
        let x = std::fs::read(a.join(file)).unwrap();
        assert_eq!(x, std::fs::read(b.join(file)).unwrap(), "{file} differs");
        assert!(!x.is_empty());
    }
    std::fs::remove_dir_all(a).unwrap();
    std::fs::remove_dir_all(b).unwrap();
}

#[test]
fn degree_zero_passes() {
    let out = projdunkl(&["verify", "--max-degree", "0", "--samples", "20"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn faults_give_nonzero_exit_with_witness() {
    for (flag, suite) in
        [("--perturb-kappa", "commutativity"), ("--perturb-root", "geometry"), ("--drop-projection", "laplacian")]
    {
        let out = projdunkl(&["verify", "--suite", suite, "--max-degree", "3", "--samples", "20", flag]);
        assert_eq!(out.status.code(), Some(1), "{flag}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("FAIL") && err.contains("witness"), "{err}");
    }
    let out = projdunkl(&["verify", "--perturb-kappa", "--perturb-root"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precision_env_is_checked() {
    let out = Command::new(env!("CARGO_BIN_EXE_projdunkl"))
        .args(["eval", "M", "--kappa", "0", "--z", "1"])
        .env("PROJDUNKL_PRECISION", "quad")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_projdunkl"))
        .args(["eval", "M", "--kappa", "0", "--z", "1"])
        .env("PROJDUNKL_PRECISION", "double")
        .output()
        .unwrap();
    assert!(out.status.success());
}
