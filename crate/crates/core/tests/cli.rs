use std::process::{Command, Output};

use prgraph::report::{RunReport, SCHEMA_VERSION};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prgraph"))
        .args(args)
        .env_remove("PRGRAPH_THREADS")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, RunReport) {
    let out = run(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let r = RunReport::from_json(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), r)
}

#[test]
fn components_report_reparses() {
    let (code, r) = report(&["components", "ab:5,5", "2", "--extended"]);
    assert_eq!(code, 0);
    assert_eq!(r.schema_version, SCHEMA_VERSION);
    assert_eq!(r.command, "components");
    assert_eq!(r.group.as_deref(), Some("ab:5,5"));
    assert_eq!(r.result["component_count"], 2);
    assert_eq!(r.result["sizes"], serde_json::json!([240, 240]));
    let back = RunReport::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn components_csv() {
    let dir = std::env::temp_dir().join(format!("prgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("sizes.csv");
    let out = run(&["components", "ab:5,5", "2", "--extended", "--out", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.lines().any(|l| l == "240,2"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["components", "nonsense", "2"]).status.code(), Some(1));
    assert_eq!(run(&["components"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let (code, r) = report(&["connect", "ab:5,5", "2", "(1,0),(0,1)", "(2,0),(0,1)"]);
    assert_eq!(code, 3);
    assert_eq!(r.result["verdict"], "not_connected");
    let out = run(&["connect", "psl2:5", "3", "[[1,1],[0,1]],[[1,0],[1,1]],e", "[[1,0],[1,1]],[[1,1],[0,1]],e", "--max-visited", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn error_goes_to_stderr_only() {
    let out = run(&["redundant", "psl2:5", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn redundant_word_verifies() {
    let tuple = "(1 2),(1 2 3),(1 3)";
    let (code, r) = report(&["redundant", "sym:3", tuple]);
    assert_eq!(code, 0);
    let word = r.result["word"].as_str().unwrap().to_string();
    let end = r.result["end_literal"].as_str().unwrap().to_string();
    let (code, v) = report(&["verify", "sym:3", tuple, "--word", &word, "--expect", &end]);
    assert_eq!(code, 0, "{:?}", v.result);
    let (code, _) = report(&["verify", "sym:3", tuple, "--word", &word, "--expect", tuple]);
    assert_eq!(code, 3);
}

#[test]
fn walk_is_reproducible() {
    let args = ["walk", "alt:5", "3", "--burnin", "500", "--samples", "2000", "--seed", "17"];
    let (c1, a) = report(&args);
    let (c2, b) = report(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a.seed, Some(17));
    assert_eq!(a.result, b.result);
    let (_, other) = report(&["walk", "alt:5", "3", "--burnin", "500", "--samples", "2000", "--seed", "18"]);
    assert_ne!(a.result, other.result);
}

#[test]
fn gaschuetz_and_tsystems() {
    let (code, r) = report(&["gaschuetz", "ab:2,2", "(1,1)", "(1,0);(1,0)"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["exponents"].as_array().unwrap().len(), 2);
    let (code, r) = report(&["tsystems", "ab:5,5", "2", "--check"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["tsystem_count"], 1);
}

#[test]
fn group_info() {
    let (code, r) = report(&["group-info", "psl2:5"]);
    assert_eq!(code, 0);
    assert!(r.result.to_string().contains("60"));
}
