use std::process::Command;

use serde_json::Value;

fn sawkit(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_sawkit")).args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn counts(json: &str) -> Vec<String> {
    let v: Value = serde_json::from_str(json).unwrap();
    v["counts"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect()
}

#[test]
fn enumerate_examples() {
    let (out, _, code) = sawkit(&["enumerate", "--family", "tree:3", "--n", "3", "--manifest", "none"]);
    assert_eq!(code, 0);
    assert_eq!(counts(&out), ["1", "3", "6", "12"]);
    let (out, _, _) = sawkit(&["enumerate", "--family", "loop:4", "--n", "3", "--manifest", "none"]);
    assert_eq!(counts(&out), ["1", "4", "6", "12"]);
}

#[test]
fn enumerate_variants() {
    let (out, _, code) = sawkit(&[
        "enumerate", "--family", "loop:2", "--n", "5", "--root", "0", "--avoid-edge", "0:1", "--manifest", "none",
    ]);
    assert_eq!(code, 0);
    assert_eq!(counts(&out), ["1"; 6]);
    let (out, _, _) = sawkit(&["enumerate", "--family", "tree:3", "--n", "1", "--root", "():(0)", "--manifest", "none"]);
    assert_eq!(counts(&out), ["1", "2"]);
    let (ext, _, _) = sawkit(&["enumerate", "--family", "decor3", "--n", "6", "--extendable", "10", "--manifest", "none"]);
    let (all, _, _) = sawkit(&["enumerate", "--family", "decor3", "--n", "6", "--manifest", "none"]);
    let (e, a) = (counts(&ext), counts(&all));
    assert!(e[6].parse::<u64>().unwrap() < a[6].parse::<u64>().unwrap());
}

#[test]
fn csv_output() {
    let (out, _, code) = sawkit(&["enumerate", "--family", "ladder", "--n", "4", "--format", "csv", "--manifest", "none"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,count\n0,1\n1,3\n2,6\n3,12\n4,20\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["enumerate", "--family", "square", "--n", "3"],
        vec!["enumerate", "--family", "ladder"],
        vec!["enumerate", "--family", "ladder", "--n", "3", "--root", "0,7"],
        vec!["enumerate", "--family", "ladder", "--n", "3", "--avoid-edge", "5,0:6,0"],
        vec!["enumerate", "--family", "ladder", "--n", "3", "--extendable", "0"],
        vec!["check", "pi"],
        vec!["check", "--family", "loop:2", "strictness"],
        vec!["estimate", "--family", "ladder", "--n", "10", "--method", "magic"],
    ] {
        let (_, err, code) = sawkit(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
}

#[test]
fn truncation_exits_three_with_partial_series() {
    let (out, _, code) = sawkit(&["enumerate", "--family", "hex", "--n", "20", "--budget", "1000", "--manifest", "none"]);
    assert_eq!(code, 3);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["truncated"], true);
    assert!(v["counts"].as_array().unwrap().len() < 21);
}

#[test]
fn check_exit_codes() {
    let (_, _, code) = sawkit(&["check", "--family", "loop:4", "pi", "--manifest", "none"]);
    assert_eq!(code, 0);
    let (out, _, code) = sawkit(&["check", "--family", "decor3", "pi", "--manifest", "none"]);
    assert_eq!(code, 1);
    assert!(out.contains("\"violation\""));
    let (out, _, code) = sawkit(&["check", "--family", "hex", "strictness", "--manifest", "none"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cutoff"]["cutoff"], 6);
    assert_eq!(v["cutoff"]["pairs"][0]["sigma_at_cutoff"], "60");
    let (_, _, code) = sawkit(&["check", "--family", "tree:3", "strictness", "--n", "12", "--manifest", "none"]);
    assert_eq!(code, 3);
    let (_, _, code) = sawkit(&["check", "--family", "decor3", "menger", "--manifest", "none"]);
    assert_eq!(code, 0);
}

#[test]
fn out_file_and_manifest() {
    let dir = std::env::temp_dir().join(format!("sawkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let manifest = dir.join("manifest.json");
    let (out, _, code) = sawkit(&[
        "estimate",
        "--family",
        "loop:3",
        "--n",
        "16",
        "--out",
        report.to_str().unwrap(),
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!((r["estimate"]["mu_hat"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-3);
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(m["family"], "loop:3");
    assert_eq!(m["bounds"]["n"], 16);
    assert_eq!(m["exit_code"], 0);
    assert!(m["wall_time_s"].as_f64().is_some());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn manifest_defaults_to_stderr() {
    let (_, err, _) = sawkit(&["check", "lemmas", "--delta-max", "4", "--b-max", "5"]);
    let m: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(m["tool"], "sawkit");
}
