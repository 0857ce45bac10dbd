use std::process::Command;

use quotk::cli::run_from;

fn run(args: &[&str]) -> quotk::cli::Outcome {
    let mut v = vec!["quotk"];
    v.extend_from_slice(args);
    run_from(v)
}

fn tmp(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("quotk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const KT: [&str; 14] =
    ["compute", "--family", "ktheory", "--N", "2", "--ranks", "1", "--k", "1", "--K2", "1", "--c1K", "1", "--trunc"];

#[test]
fn compute_ktheory_json() {
    let mut a = KT.to_vec();
    a.extend(["10", "--format", "json"]);
    let out = run(&a);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let c: Vec<&str> = v["coeffs"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(c, ["0", "-2", "-4", "-6", "-8", "-10", "-12", "-14", "-16", "-18"]);
}

#[test]
fn output_is_deterministic() {
    let a = ["check", "--suite", "oracle", "--format", "json", "--seed", "5"];
    assert_eq!(run(&a).stdout, run(&a).stdout);
}

#[test]
fn segre_verlinde_suite_exits_zero() {
    let out = run(&["check", "--suite", "segre-verlinde", "--max-N", "3", "--trunc", "8"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("PASS"));
}

#[test]
fn fit_roundtrip() {
    let mut a = KT.to_vec();
    a.extend(["20", "--format", "json"]);
    let series = run(&a).stdout;
    let path = tmp("series.json", &series);
    let out = run(&["fit", "--in", &path, "--deg", "4", "4", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["poleAtOne"], 2);
    assert_eq!(v["allPolesAtOne"], true);
    assert_eq!(v["den"], serde_json::json!(["1", "-2", "1"]));
}

#[test]
fn fit_reports_no_fit() {
    let out = run(&["compute", "--family", "cobordism", "--y", "1", "--K2", "1", "--trunc", "25", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let path = tmp("pont.json", &out.stdout);
    let out = run(&["fit", "--in", &path, "--deg", "8", "8", "--format", "json"]);
    assert_eq!(out.stdout.trim(), r#"{"bounds":[8,8],"noFit":true}"#);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["compute", "--family", "ktheory", "--bogus"]).code, 2);
    assert_eq!(run(&["check", "--suite", "nope"]).code, 2);
    assert_eq!(run(&["compute", "--family", "ktheory", "--ranks", "1", "--trunc", "0"]).code, 2);
    let hyp = run(&["compute", "--family", "pg0", "--chi", "0", "--ranks", "1"]);
    assert_eq!(hyp.code, 2);
    assert!(hyp.stderr.contains("hypothesis"));
}

#[test]
fn config_file_merges_and_rejects_unknown_keys() {
    let cfg = tmp("a.cfg", "# ktheory\nfamily=ktheory\nN=2\nranks=1\nK2=1\nc1K=1\ntrunc=4\n");
    let out = run(&["compute", "--config", &cfg]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("q^3: -6"));
    let out = run(&["compute", "--config", &cfg, "--N", "1"]);
    assert!(out.stdout.contains("q^3: -3"), "flags take precedence: {}", out.stdout);
    let cfg = tmp("b.cfg", "command=check\nsuite=vieta\n");
    assert_eq!(run(&["--config", &cfg]).code, 0);
    let bad = tmp("c.cfg", "famly=ktheory\n");
    let out = run(&["compute", "--config", &bad]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("famly"));
}

#[test]
fn conjectural_runs_are_labelled() {
    let out = run(&[
        "compute", "--family", "ktheory", "--N", "2", "--ranks", "0", "--K2", "1", "--c1K", "1", "--shape", "single",
        "--beta-K", "1", "--beta-c1", "1", "--trunc", "5",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("conjectural instance check"));
    let out = run(&["compute", "--family", "ktheory", "--N", "2", "--ranks", "1", "--trunc", "5"]);
    assert!(!out.stdout.contains("conjectural"));
}

#[test]
fn closed_forms_and_oracles() {
    let out = run(&["compute", "--family", "closed", "--name", "rank1-chi0", "--K2", "2", "--trunc", "4"]);
    assert_eq!(out.stdout, "q^0: 2\nq^1: 4\nq^2: 2\nq^3: 0\nO(q^4)\n");
    let out = run(&["oracle", "--kind", "partitions", "--order", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["count"], 5);
    let out = run(&["oracle", "--kind", "w-star", "--format", "json"]);
    assert!(out.stdout.contains(r#""holds":true"#));
    let out = run(&["oracle", "--kind", "f-symmetry", "--seed", "3", "--format", "json"]);
    assert!(out.stdout.contains(r#""holds":true"#), "{}", out.stdout);
    let out = run(&["oracle", "--kind", "lagrange", "--phi", "1,1", "--trunc", "4", "--format", "json"]);
    assert!(out.stdout.contains(r#"["0","1","1","1"]"#), "{}", out.stdout);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_quotk");
    let ok = Command::new(bin).args(["check", "--suite", "vieta"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
