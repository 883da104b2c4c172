// SPDX-License-Identifier: Apache-2.0
//! The `hidden-edge` binary: subcommands, output formats and exit codes.

use serde_json::Value;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hidden-edge"));
    c.env_remove("HIDDEN_EDGE_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn list_names_every_algorithm_and_family() {
    let o = run(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in ["general_nonadaptive", "rand_rounds", "clique_det", "hard_star", "planted_star", "gnp"] {
        assert!(text.contains(id), "{id}");
    }
}

#[test]
fn clique_det_example_stays_within_300_queries() {
    let o = run(&[
        "run", "--algorithm", "clique_det", "--family", "clique", "--k", "5", "--n", "100", "--trials", "20",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = &v["per_n"][0];
    assert_eq!(row["n"], 100);
    assert_eq!(row["success_rate"], 1.0);
    assert!(row["queries_max"].as_u64().unwrap() <= 300);
    assert_eq!(row["budget_ok"], true);
    assert_eq!(v["config"]["algorithm"], "clique_det");
}

#[test]
fn general_plan_finds_planted_edges() {
    let o = run(&[
        "run", "--algorithm", "general_nonadaptive", "--family", "planted_single_edge", "--n", "64", "--trials",
        "200", "--seed", "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["per_n"][0]["success_rate"].as_f64().unwrap() >= 0.99);
    assert_eq!(v["per_n"][0]["wrong_pair_rate"], 0.0);
}

#[test]
fn csv_has_header_and_one_row_per_size() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let o = run(&[
        "run", "--algorithm", "binary_search", "--family", "gnp", "--n", "8,16,32", "--trials", "10", "--format",
        "csv", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,success_rate,wrong_pair_rate,queries_mean,queries_max,rounds_max,budget_ok");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("8,"));
    assert!(lines[3].starts_with("32,"));
}

#[test]
fn sweep_covers_the_product_of_sizes_and_c() {
    let o = run(&[
        "sweep", "--algorithm", "clique_rand", "--family", "clique", "--n", "16,32", "--c", "0.5,1", "--trials",
        "5", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("c,n,"));
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("0.5,16,"));
    assert!(lines[4].starts_with("1,32,"));
}

#[test]
fn mismatched_family_needs_force() {
    let args = ["run", "--algorithm", "clique_det", "--family", "gnp", "--n", "16", "--trials", "5"];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--force"));
    let mut forced = args.to_vec();
    forced.push("--force");
    let o = run(&forced);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    assert!(serde_json::from_str::<Value>(&stdout(&o)).is_ok());
}

#[test]
fn hard_errors_exit_with_2() {
    for args in [
        vec!["run", "--algorithm", "clique_det", "--family", "clique", "--n", "16", "--trials", "0"],
        vec!["run", "--algorithm", "nope", "--family", "clique", "--n", "16"],
        vec!["run", "--algorithm", "clique_det", "--family", "clique"],
        vec!["run", "--algorithm", "clique_det", "--family", "clique", "--n", "16", "--format", "xml"],
        vec!["run", "--algorithm", "rand_rounds", "--family", "gnp", "--n", "16", "--r", "0"],
        vec!["run", "--algorithm", "clique_rand", "--family", "clique", "--n", "16", "--c", "-1"],
        vec!["run", "--algorithm", "clique_det", "--family", "clique", "--n", "16", "--output", "/nonexistent/dir/x"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

/// Every built-in algorithm meets its budget by construction, so exit code 1
/// is only checked for consistency with the report here; the verdict itself
/// is covered by the summary tests.
#[test]
fn exit_code_tracks_budget_verdict() {
    for (alg, fam) in [("det_rounds", "complete"), ("rand_rounds", "gnp"), ("matching_det", "matching")] {
        let o = run(&["run", "--algorithm", alg, "--family", fam, "--n", "32", "--r", "1", "--trials", "3"]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let ok = v["per_n"][0]["budget_ok"].as_bool().unwrap();
        assert_eq!(o.status.code(), Some(if ok { 0 } else { 1 }), "{alg}");
    }
}

#[test]
fn thread_variable_is_validated() {
    let args = ["run", "--algorithm", "clique_det", "--family", "clique", "--n", "16", "--trials", "4"];
    let o = bin().args(args).env("HIDDEN_EDGE_THREADS", "0").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(args).env("HIDDEN_EDGE_THREADS", "many").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let one = bin().args(args).env("HIDDEN_EDGE_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("HIDDEN_EDGE_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn dump_lists_every_query_with_sorted_members() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dump.json");
    let o = run(&[
        "run", "--algorithm", "single_edge_explicit", "--family", "planted_single_edge", "--n", "16", "--trials",
        "3", "--dump", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let d: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let queries = d["queries"].as_array().unwrap();
    assert!(!queries.is_empty());
    for (i, q) in queries.iter().enumerate() {
        assert_eq!(q["query_id"].as_u64().unwrap(), i as u64);
        let m: Vec<u64> = q["members"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert!(q["tag"].is_string());
        assert!(q["answer"].is_boolean());
    }
    assert_eq!(d["outcome"], "found_edge");
}
