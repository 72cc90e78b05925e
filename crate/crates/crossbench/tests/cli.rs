use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn crossbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossbench"))
        .args(args)
        .env_remove("CROSSBENCH_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_lists_fixtures() {
    let o = crossbench(&["validate", data("z3.json").to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("F1: |G| = 2"), "{text}");
    assert!(text.contains("Z3: |G| = 3"), "{text}");
}

#[test]
fn malformed_table_names_the_row() {
    let o = crossbench(&["validate", data("bad_table.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("system.group.table[2]"), "{err}");
}

#[test]
fn convolve_on_a_custom_system() {
    let o = crossbench(&[
        "convolve",
        data("z3.json").to_str().unwrap(),
        "--fixture",
        "Z3",
        "-f",
        data("f.json").to_str().unwrap(),
        "-g",
        data("g.json").to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let h: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(h, serde_json::json!([[[2.0, 1.0]], [[1.0, 2.0]], [3.0]]));
}

#[test]
fn build_crossed_reports_kernel_dimensions() {
    let o = crossbench(&["build-crossed", data("z3.json").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Z3: dim L1 = 3, kernel dim = 1, quotient dim = 2"));
}

#[test]
fn verify_is_deterministic_and_honors_the_seed_variable() {
    let config = data("z3.json");
    let args = [
        "verify",
        config.to_str().unwrap(),
        "--suite",
        "core",
        "--format",
        "json",
    ];
    let a = crossbench(&args);
    let b = crossbench(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let seeded = Command::new(env!("CARGO_BIN_EXE_crossbench"))
        .args(args)
        .env("CROSSBENCH_SEED", "11")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&seeded.stdout).unwrap();
    assert_eq!(report["seed"], 11);
    let flag = crossbench(&[&args[..], &["--seed", "12"]].concat());
    let report: serde_json::Value = serde_json::from_slice(&flag.stdout).unwrap();
    assert_eq!(report["seed"], 12);
}

#[test]
fn failing_checks_exit_nonzero() {
    let o = crossbench(&[
        "verify",
        data("z3.json").to_str().unwrap(),
        "--suite",
        "core",
        "--tol",
        "1e-300",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fail"));
}

#[test]
fn report_reemits_from_stdin() {
    let json = stdout(&crossbench(&[
        "verify",
        data("z3.json").to_str().unwrap(),
        "--suite",
        "actions",
        "--format",
        "json",
    ]));
    let mut child = Command::new(env!("CARGO_BIN_EXE_crossbench"))
        .args(["report", "--format", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(json.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), json);
}

#[test]
fn unknown_suite_is_rejected() {
    let o = crossbench(&[
        "verify",
        data("z3.json").to_str().unwrap(),
        "--suite",
        "nope",
    ]);
    assert!(!o.status.success());
}
