use std::process::{Command, Output};

fn umrg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umrg")).args(args).env_remove("UMRG_JOBS").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn spectrum_csv_for_k44() {
    let out = umrg(&["spectrum", "--builder", "complete_bipartite:4,4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("k,m_k,C(e,k)\n"));
    assert!(text.lines().any(|l| l == "5,96,4368"));
    assert!(text.lines().any(|l| l == "8,4446,12870"));
}

#[test]
fn spectrum_json_reports_tree_number_and_unreliability() {
    let out = umrg(&["spectrum", "--g6", "G?~vf_", "--out", "json", "--rho", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tree_number"], "4096");
    assert_eq!(v["superconnected"], true);
    assert_eq!(v["unreliability"][0]["unreliability"], 0.0);
    assert_eq!(v["unreliability"][1]["unreliability"], 1.0);
}

#[test]
fn compare_identical_graphs_dominates() {
    let out = umrg(&["compare", "--a", "G?~vf_", "--b", "complete_bipartite:4,4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["comparison"]["dominates"], true);
    assert_eq!(v["comparison"]["first_divergence"], serde_json::Value::Null);
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let a = umrg(&["verify", "all", "--out", "json", "--no-timing", "--jobs", "1"]);
    let b = umrg(&["verify", "all", "--out", "json", "--no-timing", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["graphs_checked"], 1290);
}

#[test]
fn verify_reports_runtime_unless_suppressed() {
    let out = umrg(&["verify", "regular"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["runtime_ms"].is_u64());
    assert!(v["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn enumerate_lists_graph6_lines() {
    let out = umrg(&["enumerate", "--n", "4", "--e", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 2);
    let strat = umrg(&["enumerate", "--n", "8", "--e", "16", "--stratify"]);
    let v: serde_json::Value = serde_json::from_slice(&strat.stdout).unwrap();
    assert_eq!(v["total"], 1290);
    assert_eq!(v["regular_count"], 6);
}

#[test]
fn bounds_reproduce_a_degree_sequence_case() {
    let out = umrg(&["bounds", "--degrees", "2,2", "--edges", "16", "--k", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["bound_value"], 4719);
}

#[test]
fn census_of_petersen() {
    let out = umrg(&["census", "--builder", "petersen"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["structure"]["girth"], 5);
    assert_eq!(v["biconnected"], true);
}

#[test]
fn mc_is_reproducible_per_seed() {
    let args = ["mc", "--builder", "cycle:6", "--rho", "0.3", "--trials", "5000", "--seed", "9"];
    assert_eq!(umrg(&args).stdout, umrg(&args).stdout);
}

#[test]
fn usage_and_budget_errors_exit_2() {
    assert_eq!(umrg(&["spectrum", "--g6", "zz"]).status.code(), Some(2));
    assert_eq!(umrg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(umrg(&["spectrum", "--builder", "nonsense:1"]).status.code(), Some(2));
    assert_eq!(umrg(&["enumerate", "--n", "8", "--e", "16", "--budget", "10"]).status.code(), Some(2));
    assert_eq!(umrg(&["verify", "k44", "--budget", "10"]).status.code(), Some(2));
}
