//! End-to-end checks of the binary: exit codes, output formats, and
//! byte-level determinism across reruns and thread counts.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bercalc(args: &[&str], envs: &[(&str, &str)], dir: &Path) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bercalc"));
    cmd.args(args).current_dir(dir);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary should spawn")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

const NILPOTENT: &str = r#"{"rows":2,"cols":2,"data":[[0,0],[1,0],[0,0],[0,0]]}"#;

#[test]
fn range_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "range",
        "--space",
        "hardy:0.5",
        "--symbol",
        "dilation:0,0.6",
        "--grid",
        "40x16",
        "--out",
        "a.csv",
        "--svg",
        "a.svg",
    ];
    let first = bercalc(&args, &[], dir.path());
    assert_eq!(code(&first), 0, "stderr: {}", String::from_utf8_lossy(&first.stderr));
    let mut again = args;
    again[8] = "b.csv";
    again[10] = "b.svg";
    let second = bercalc(&again, &[("BERCALC_THREADS", "2")], dir.path());
    assert_eq!(code(&second), 0);

    let a = fs::read(dir.path().join("a.csv")).unwrap();
    let b = fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b, "rerun under a different thread count must be byte-identical");
    assert_eq!(
        fs::read(dir.path().join("a.svg")).unwrap(),
        fs::read(dir.path().join("b.svg")).unwrap()
    );

    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im"));
    assert_eq!(lines.count(), 40 * 16);
}

#[test]
fn range_prints_csv_to_stdout_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = bercalc(&["range", "--symbol", "fock-diag:0,1", "--grid", "101"], &[], dir.path());
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("re,im\n"));
    assert_eq!(text.lines().count(), 102);
    let config = String::from_utf8_lossy(&out.stderr);
    assert!(config.contains("command=range"), "missing config header: {config}");
    assert!(config.contains("space=fock:1:1"), "unresolved default space: {config}");
}

#[test]
fn bad_descriptors_and_usage_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["range", "--symbol", "nosuch:1"],
        vec!["range", "--symbol", "dilation:0;0.6"],
        vec!["range", "--symbol", "dilation:0,0.6", "--grid", "40"],
        vec!["range", "--symbol", "fock-scalar:0,0.5", "--space", "hardy:0.5"],
        vec!["range", "--symbol", "dilation:0,0.6", "--unknown-flag"],
        vec!["verify", "--trials", "5", "--dims", "0-3"],
        vec!["norm", "--matrix", "m.json", "--path", "median"],
        vec!["reproduce", "--item", "nosuch"],
    ] {
        let out = bercalc(&args, &[], dir.path());
        assert_eq!(code(&out), 2, "args {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = bercalc(&["radius", "--matrix", "missing.json"], &[], dir.path());
    assert_eq!(code(&out), 1, "I/O failures are runtime errors, not usage errors");
}

#[test]
fn invalid_thread_cap_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = bercalc(&["radius", "--matrix", "m.json"], &[("BERCALC_THREADS", "zero")], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn radius_and_norm_print_known_values() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("nil.json"), NILPOTENT).unwrap();

    let radius = bercalc(&["radius", "--matrix", "nil.json"], &[], dir.path());
    assert_eq!(code(&radius), 0);
    assert_eq!(stdout_of(&radius), "0.000000000000000\n");

    for (path, t, want) in [
        ("geom", "0.5", "0.000000000000000\n"),
        ("arith", "0.5", "0.500000000000000\n"),
        ("arithmetic", "1", "1.000000000000000\n"),
        ("harm", "0", "1.000000000000000\n"),
    ] {
        let out = bercalc(
            &["norm", "--matrix", "nil.json", "--path", path, "--t", t, "--p", "1"],
            &[],
            dir.path(),
        );
        assert_eq!(code(&out), 0, "path {path}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(stdout_of(&out), want, "path {path}, t {t}");
    }
}

#[test]
fn verify_reports_are_valid_json_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args =
        ["verify", "--suite", "pairing", "--trials", "25", "--seed", "7", "--report", "r1.json"];
    let first = bercalc(&args, &[], dir.path());
    assert_eq!(code(&first), 0, "stderr: {}", String::from_utf8_lossy(&first.stderr));
    let mut again = args;
    again[8] = "r2.json";
    let second = bercalc(&again, &[("BERCALC_THREADS", "2")], dir.path());
    assert_eq!(code(&second), 0);
    let r1 = fs::read(dir.path().join("r1.json")).unwrap();
    assert_eq!(r1, fs::read(dir.path().join("r2.json")).unwrap());

    let reports: serde_json::Value = serde_json::from_slice(&r1).unwrap();
    let list = reports.as_array().unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0]["suite"], "pairing");
    assert_eq!(list[0]["trials"], 25);
    assert!(list[0]["minSlack"].as_f64().unwrap() >= -1e-9);
    assert_eq!(list[0]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_all_runs_every_suite_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = bercalc(&["verify", "--trials", "5", "--seed", "3"], &[], dir.path());
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let reports: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let suites: Vec<&str> =
        reports.as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(suites, ["pairing", "seminorm", "blocks"]);
}

#[test]
fn reproduce_checks_the_reference_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let out = bercalc(&["reproduce", "--item", "mix-minimizer"], &[], dir.path());
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout_of(&out);
    let value = |label: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(label))
            .unwrap_or_else(|| panic!("missing {label:?} in {text}"))
            .trim()
            .parse()
            .unwrap()
    };
    assert!((value("minimized mixed radius =") - 481.0 / 6.0).abs() <= 1e-10);
    assert!((value("half fourth-power radius =") - 92.5).abs() <= 1e-10);
}

#[test]
fn reproduce_emits_figure_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = bercalc(&["reproduce", "--item", "fock-spiral", "--outdir", "figs"], &[], dir.path());
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("figs/fock-spiral.csv")).unwrap();
    assert!(csv.starts_with("re,im\n"));
    assert_eq!(csv.lines().count(), 1002);
    let svg = fs::read_to_string(dir.path().join("figs/fock-spiral.svg")).unwrap();
    assert!(svg.starts_with("<svg "));
    assert_eq!(svg.matches("<circle").count(), 1001);
}
