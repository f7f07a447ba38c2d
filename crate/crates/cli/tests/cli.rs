//! End-to-end checks of the command-line surface: file formats, exit
//! codes and output shapes.

use std::io::Write;
use std::process::{Command, Output};

fn scc_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scc-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

const K32_JSON: &str = r#"{"n":6,"edges":[[0,2],[0,3],[0,4],[0,5],[1,2],[1,3],[1,4],[1,5],[2,4],[2,5],[3,4],[3,5]]}"#;

#[test]
fn solve_reports_known_optimum() {
    let graph = write_temp(K32_JSON);
    let out = scc_lab(&[
        "solve",
        "--graph",
        graph.path().to_str().unwrap(),
        "--objective",
        "weight",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["optimum"], 12);
    assert_eq!(v["witness"]["mode"], "cover");
    assert!(v["nodes"].as_u64().unwrap() > 0);
}

#[test]
fn solve_count_partition_modes() {
    let graph = write_temp(r#"{"n":4,"edges":[[0,2],[0,3],[1,2],[1,3]]}"#);
    let out = scc_lab(&[
        "solve",
        "--graph",
        graph.path().to_str().unwrap(),
        "--objective",
        "count",
        "--mode",
        "partition",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["optimum"], 4);
}

#[test]
fn construct_then_verify_family_pipeline() {
    let out = scc_lab(&["construct", "--kind", "mols", "--d", "3"]);
    assert!(out.status.success());
    let family = write_temp(std::str::from_utf8(&out.stdout).unwrap());
    let verify = scc_lab(&["verify-family", "--family", family.path().to_str().unwrap()]);
    assert!(verify.status.success());
    let v = stdout_json(&verify);
    assert_eq!(v["valid"], true);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn construct_random_is_seed_deterministic() {
    let args = ["construct", "--kind", "random", "--n", "10", "--d", "2", "--t", "4", "--seed", "3"];
    let a = scc_lab(&args);
    let b = scc_lab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["d"], 2);
    assert_eq!(v["n"], 10);
}

#[test]
fn verify_cover_detects_multiply_covered() {
    let graph = write_temp(r#"{"n":3,"edges":[[0,1],[0,2],[1,2]]}"#);
    let cover = write_temp(r#"{"mode":"partition","cliques":[[0,1,2],[0,1]]}"#);
    let out = scc_lab(&[
        "verify-cover",
        "--graph",
        graph.path().to_str().unwrap(),
        "--cover",
        cover.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["multiply_covered"][0], serde_json::json!([0, 1]));
}

#[test]
fn bounds_values_and_csv() {
    let out = scc_lab(&["bounds", "--t", "4", "--d", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["lower_bound_log2"], 8.0);
    assert_eq!(v["katona_tarjan"], 32);

    let out = scc_lab(&["bounds", "--t", "4", "--d", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("t,d,n,"));
    assert!(text.lines().nth(1).unwrap().starts_with("4,2,8,8,"));
}

#[test]
fn chain_check_reports_verdicts() {
    let out = scc_lab(&["construct", "--kind", "mols", "--d", "2"]);
    let family = write_temp(std::str::from_utf8(&out.stdout).unwrap());
    let check = scc_lab(&["chain-check", "--family", family.path().to_str().unwrap()]);
    assert!(check.status.success());
    let v = stdout_json(&check);
    assert_eq!(v["all_ok"], true);
    assert_eq!(v["total_weight"], 12);
    assert_eq!(v["pair_sums"].as_array().unwrap().len(), 2);
}

#[test]
fn experiment_csv_has_fixed_columns() {
    let out = scc_lab(&[
        "experiment", "--d", "2", "--t", "2,3", "--seed", "7", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,d,exact_scc,greedy_weight,construction,construction_n,construction_weight,lower_bound_log2,lower_bound_ln,djo_upper,ratio,budget_exhausted"
    );
    assert!(lines.next().unwrap().starts_with("2,2,8,"));
    assert!(lines.next().unwrap().starts_with("3,2,12,"));
}

#[test]
fn experiment_mols_kind_matches_exact() {
    let out = scc_lab(&["experiment", "--d", "2", "--t", "3", "--kind", "mols"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v[0]["construction"], "mols");
    assert_eq!(v[0]["construction_weight"], 12);
    assert_eq!(v[0]["exact_scc"], 12);
}

#[test]
fn budget_env_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_scc-lab"))
        .args(["experiment", "--d", "2", "--t", "32", "--seed", "7"])
        .env("SCC_LAB_BUDGET", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v[0]["budget_exhausted"], true);
    assert_eq!(v[0]["construction_weight"], serde_json::Value::Null);

    let out = Command::new(env!("CARGO_BIN_EXE_scc-lab"))
        .args(["experiment", "--d", "2", "--t", "4"])
        .env("SCC_LAB_BUDGET", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    // unknown subcommand
    assert_eq!(scc_lab(&["frobnicate"]).status.code(), Some(1));
    // unknown flag
    assert_eq!(scc_lab(&["bounds", "--t", "4", "--d", "2", "--bogus"]).status.code(), Some(1));
    // missing file
    assert_eq!(
        scc_lab(&["solve", "--graph", "/nonexistent.json", "--objective", "weight"]).status.code(),
        Some(1)
    );
    // malformed graph file
    let bad = write_temp(r#"{"n":3,"edges":[[1,0]]}"#);
    assert_eq!(
        scc_lab(&["solve", "--graph", bad.path().to_str().unwrap(), "--objective", "weight"])
            .status
            .code(),
        Some(1)
    );
    // scale limit exceeded
    let graph = write_temp(K32_JSON);
    assert_eq!(
        scc_lab(&[
            "solve",
            "--graph",
            graph.path().to_str().unwrap(),
            "--objective",
            "weight",
            "--limit-n",
            "4"
        ])
        .status
        .code(),
        Some(2)
    );
    // csv is only for tabular output
    assert_eq!(
        scc_lab(&[
            "solve",
            "--graph",
            graph.path().to_str().unwrap(),
            "--objective",
            "weight",
            "--format",
            "csv"
        ])
        .status
        .code(),
        Some(1)
    );
    // non-prime latin-square order
    assert_eq!(scc_lab(&["construct", "--kind", "mols", "--d", "6"]).status.code(), Some(1));
    // chain-check needs at least two rows
    let single = write_temp(r#"{"n":2,"t":1,"d":2,"rows":[[[0],[1]]]}"#);
    assert_eq!(
        scc_lab(&["chain-check", "--family", single.path().to_str().unwrap()]).status.code(),
        Some(1)
    );
    // help exits 0
    assert_eq!(scc_lab(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_family_accepts_file_alias() {
    let out = scc_lab(&["construct", "--kind", "mols", "--d", "2"]);
    let family = write_temp(std::str::from_utf8(&out.stdout).unwrap());
    let verify = scc_lab(&["verify-family", "--file", family.path().to_str().unwrap()]);
    assert!(verify.status.success());
    assert_eq!(stdout_json(&verify)["valid"], true);
}

#[test]
fn verify_family_reports_violations() {
    let family = write_temp(r#"{"n":2,"t":2,"d":2,"rows":[[[0],[1]],[[1],[0]]]}"#);
    let out = scc_lab(&["verify-family", "--family", family.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["valid"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
}
