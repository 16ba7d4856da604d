//! End-to-end tests of the binary: output shapes, exit codes, cache
//! behaviour, and determinism across parallelism levels.

use std::process::{Command, Output};

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_shimura-census"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn report_minus_seven() {
    let out = run(&["report", "-D", "-7", "--precision", "20"], &[]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().map(str::trim).collect();
    assert_eq!(lines.len(), 1, "one component at D = -7");
    let v: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["d"], -7);
    assert_eq!(v["isotropic"], true);
    assert_eq!(v["disc_b"], 1);
    assert_eq!(v["level_n"], 7);
    assert_eq!(v["degree"], "1/3");
    assert_eq!(v["volume_symbolic"]["c_log"]["7"], "1/8");
    assert_eq!(v["volume_numeric"]["precision"], 20);
}

#[test]
fn report_rejects_even_discriminant() {
    let out = run(&["report", "-D", "-4"], &[]);
    assert!(!out.status.success());
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("even"), "stderr: {}", stderr(&out));
}

#[test]
fn census_range_and_cache_idempotence() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("census.ndjson");
    let args = [
        "census", "--min", "-25", "--max", "-3", "--precision", "15",
        "--cache", cache.to_str().unwrap(),
    ];
    let first = run(&args, &[]);
    assert!(first.status.success());
    let ds: Vec<i64> = stdout(&first)
        .trim()
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["d"].as_i64().unwrap())
        .collect();
    assert_eq!(ds, vec![-3, -7, -11, -15, -19, -23]);
    assert!(stderr(&first).contains("computed=6, cached=0"));

    // Warm cache: zero recomputation, byte-identical stream.
    let second = run(&args, &[]);
    assert!(second.status.success());
    assert!(stderr(&second).contains("computed=0, cached=6"));
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn census_parallelism_is_deterministic() {
    let base = [
        "census", "--min", "-60", "--max", "-3", "--precision", "12", "--no-cache",
    ];
    let one = run(&[&base[..], &["--jobs", "1"]].concat(), &[]);
    let four = run(&[&base[..], &["--jobs", "4"]].concat(), &[]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(stdout(&one), stdout(&four), "jobs=4 byte-identical to jobs=1");
}

#[test]
fn census_cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["census", "--min", "-10", "--max", "-3", "--precision", "10"],
        &[("SHIMURA_CENSUS_CACHE_DIR", dir.path().to_str().unwrap())],
    );
    assert!(out.status.success());
    assert!(dir.path().join("census.ndjson").exists());
}

#[test]
fn census_rejects_bad_range() {
    let out = run(&["census", "--min", "-3", "--max", "-25", "--no-cache"], &[]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("min <= max"));
}

#[test]
fn verify_scopes() {
    let out = run(&["verify", "--scope", "classgroup", "--bound", "80"], &[]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[PASS] genus counting"));
    assert!(text.contains("checks"));

    let out = run(&["verify", "--scope", "volumes", "--bound", "60"], &[]);
    assert!(out.status.success(), "{}", stdout(&out));

    let out = run(&["verify", "--scope", "bogus", "--bound", "10"], &[]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("unknown scope"));
}
