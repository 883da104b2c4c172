// SPDX-License-Identifier: Apache-2.0
//! The demo exports, exercised natively.

use hidden_edge_demo::{binary_search_trace, clique_rand_curve, single_edge_trace};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn binary_search_finds_the_edge() {
    let v = parse(binary_search_trace("8 1\n2 5\n"));
    assert_eq!(v["outcome"], "found_edge");
    assert_eq!(v["edge"], serde_json::json!([2, 5]));
    assert_eq!(v["correct"], true);
    assert!(v["rounds"].as_u64().unwrap() <= 3);
    let queries = v["queries"].as_array().unwrap();
    assert!(!queries.is_empty());
    assert!(queries.iter().all(|q| q["answer"].is_boolean()));
}

#[test]
fn binary_search_reports_empty_graphs() {
    let v = parse(binary_search_trace("5 0\n"));
    assert_eq!(v["outcome"], "no_edge_found");
    assert_eq!(v["correct"], true);
}

#[test]
fn malformed_graphs_are_errors() {
    for text in ["", "3 1\n0 0\n", "3 2\n0 1\n", "x y\n", "1 0\n"] {
        assert!(parse(binary_search_trace(text))["error"].is_string(), "{text:?}");
    }
}

#[test]
fn single_edge_decodes_every_pair_at_n_12() {
    for u in 0..12 {
        for w in 0..12 {
            if u == w {
                continue;
            }
            let v = parse(single_edge_trace(12, u, w));
            assert_eq!(v["edge"], serde_json::json!([u.min(w), u.max(w)]));
            assert_eq!(v["rounds"], 1);
        }
    }
    assert!(parse(single_edge_trace(12, 3, 3))["error"].is_string());
    assert!(parse(single_edge_trace(12, 3, 12))["error"].is_string());
}

#[test]
fn curve_is_deterministic_and_well_formed() {
    let a = clique_rand_curve(64, 6, vec![0.25, 1.0], 30, 4);
    assert_eq!(a, clique_rand_curve(64, 6, vec![0.25, 1.0], 30, 4));
    let v = parse(a);
    let points = v.as_array().unwrap();
    assert_eq!(points.len(), 2);
    assert!(points[1]["queries"].as_u64() >= points[0]["queries"].as_u64());
    assert!(points[1]["success_rate"].as_f64().unwrap() >= 0.9);
    assert!(parse(clique_rand_curve(64, 6, vec![-1.0], 3, 0))["error"].is_string());
    assert!(parse(clique_rand_curve(64, 6, vec![1.0], 0, 0))["error"].is_string());
}
