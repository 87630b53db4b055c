use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_insertion"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> (i32, serde_json::Value, String) {
    let out = bin().args(args).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or(serde_json::Value::Null);
    (out.status.code().unwrap(), json, text)
}

#[test]
fn check_c_constants() {
    let k3 = fixture("k3.json");
    let (code, v, _) = run(&["check-c", "--graph", k3.to_str().unwrap(), "--max-n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["constants"], serde_json::json!(["4/1", "5/1", "6/1", "7/1"]));
}

#[test]
fn k_dependence_counterexample() {
    let k3 = fixture("k3.json");
    let (code, v, _) = run(&["check-kdep", "--graph", k3.to_str().unwrap(), "--k", "1"]);
    assert_eq!(code, 1);
    let ce = &v["result"]["counterexample"];
    assert_eq!((ce["canonical_lhs"].as_str(), ce["lhs"].as_str()), (Some("8/1"), Some("6/1")));
}

#[test]
fn sft_certificate() {
    let s = fixture("colorings3.json");
    let (code, v, _) = run(&["sft", "--file", s.to_str().unwrap(), "--certify"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["certificate"]["issued"], true);
    let (code, _, _) = run(&["sft", "--sft", s.to_str().unwrap(), "--window", "5", "--count", "20"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": 2,, }").unwrap();
    let (code, v, _) = run(&["analyze", "--graph", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["result"]["error"].as_str().unwrap().contains("line 1 column"));
    let out = bin().args(["check-c"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_independent_of_threads_and_repeatable() {
    let g = fixture("k222.json");
    let g = g.to_str().unwrap();
    let a = run(&["min-k", "--graph", g, "--max-k", "2", "--max-n", "2", "--max-m", "2", "--threads", "1"]);
    let b = run(&["min-k", "--graph", g, "--max-k", "2", "--max-n", "2", "--max-m", "2", "--threads", "3"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.2, b.2);
    assert_eq!(a.1["result"]["min_k"], 2);
    let s1 = run(&["sample", "--graph", g, "--window", "4", "--count", "50", "--seed", "9"]);
    let s2 = run(&["sample", "--graph", g, "--window", "4", "--count", "50", "--seed", "9"]);
    assert_eq!(s1.2, s2.2);
}

#[test]
fn out_file_and_pretty() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let g = fixture("kite.json");
    let status = bin().args(["analyze", "--graph", g.to_str().unwrap(), "--out", out.to_str().unwrap()]).status().unwrap();
    assert!(status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["result"]["kite"], "(012;3)");
    let (_, _, text) = run(&["analyze", "--graph", g.to_str().unwrap(), "--pretty"]);
    assert!(text.lines().any(|l| l.starts_with("result.kite") && l.ends_with("(012;3)")));
}

#[test]
fn counterexample_reports_are_reproducible() {
    let g = fixture("k3_w2.json");
    let (code, v, _) = run(&["check-c", "--graph", g.to_str().unwrap(), "--max-n", "4"]);
    assert_eq!(code, 1);
    let ce = &v["result"]["counterexample"];
    assert_eq!(ce["n"], 3);
    let graph = insertion_kit::WeightedGraph::load(&g).unwrap();
    let r = insertion_kit::consistency::check_property_c(&graph, 4).unwrap();
    assert_eq!(serde_json::to_value(r.counterexample.unwrap()).unwrap(), *ce);
}

#[test]
fn verify_identities_passes() {
    let (code, v, _) = run(&["verify-identities", "--max-n", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], true);
}
