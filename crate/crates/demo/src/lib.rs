// SPDX-License-Identifier: Apache-2.0
//! Browser demo. Each export takes plain values and returns a JSON string so
//! the page needs no bindings beyond `JSON.parse`. Errors come back as
//! `{"error": "..."}`.

use hidden_edge::exhaustive::outcome_correct;
use hidden_edge::families::clique_rand_build;
use hidden_edge::multi_round::run_binary_search;
use hidden_edge::oracle::QueryRecord;
use hidden_edge::rng::StreamKey;
use hidden_edge::single_edge::build_explicit;
use hidden_edge::{generators, FindOutcome, HiddenGraph, OracleSession, VertexSet};
use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest graph the page accepts, to keep the browser responsive.
pub const MAX_N: usize = 4096;

#[derive(Serialize)]
pub struct Trace {
    pub n: usize,
    pub outcome: String,
    pub edge: Option<(usize, usize)>,
    pub correct: bool,
    pub rounds: u32,
    pub queries: Vec<QueryRecord>,
}

#[derive(Serialize)]
pub struct CurvePoint {
    pub c: f64,
    pub queries: usize,
    pub success_rate: f64,
}

fn to_json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => serde_json::json!({ "error": e }).to_string(),
    }
}

fn trace(g: &HiddenGraph, s: &OracleSession<'_>, out: FindOutcome) -> Trace {
    Trace {
        n: g.n(),
        outcome: out.name().to_string(),
        edge: out.edge().map(|e| (e.u(), e.v())),
        correct: outcome_correct(g, out),
        rounds: s.rounds_used(),
        queries: s.transcript().unwrap_or_default().to_vec(),
    }
}

fn parse_graph(text: &str) -> Result<HiddenGraph, String> {
    let g = HiddenGraph::read_text(text.as_bytes()).map_err(|e| e.to_string())?;
    if g.n() < 2 || g.n() > MAX_N {
        return Err(format!("n must lie in 2..={MAX_N}, got {}", g.n()));
    }
    Ok(g)
}

pub fn binary_search_trace_value(graph_text: &str) -> Result<Trace, String> {
    let g = parse_graph(graph_text)?;
    let mut s = OracleSession::new(&g).recording();
    let out = run_binary_search(&mut s).map_err(|e| e.to_string())?;
    Ok(trace(&g, &s, out))
}

/// Adaptive binary search on a graph in the `n m` / `u v` text format.
#[wasm_bindgen]
pub fn binary_search_trace(graph_text: &str) -> String {
    to_json(binary_search_trace_value(graph_text))
}

pub fn single_edge_trace_value(n: usize, u: usize, v: usize) -> Result<Trace, String> {
    if !(2..=MAX_N).contains(&n) || u >= n || v >= n || u == v {
        return Err(format!("need distinct u, v below n, with 2 <= n <= {MAX_N}"));
    }
    let g = HiddenGraph::from_edges(n, [(u.min(v), u.max(v))]).map_err(|e| e.to_string())?;
    let plan = build_explicit(&VertexSet::full(n)).map_err(|e| e.to_string())?;
    let mut s = OracleSession::new(&g).recording();
    let answers = s.submit_round(plan.round_plan().clone()).map_err(|e| e.to_string())?;
    let out = plan.decode(&answers).map_err(|e| e.to_string())?;
    Ok(trace(&g, &s, out))
}

/// One-round explicit decode of the single edge `{u, v}`.
#[wasm_bindgen]
pub fn single_edge_trace(n: usize, u: usize, v: usize) -> String {
    to_json(single_edge_trace_value(n, u, v))
}

pub fn clique_rand_curve_value(n: usize, k: usize, cs: &[f64], trials: u32, seed: u64) -> Result<Vec<CurvePoint>, String> {
    if !(2..=MAX_N).contains(&n) || k > n || trials == 0 {
        return Err(format!("need 2 <= n <= {MAX_N}, k <= n and trials >= 1"));
    }
    cs.iter()
        .map(|&c| {
            if !(c.is_finite() && c > 0.0) {
                return Err(format!("c must be positive, got {c}"));
            }
            let mut ok = 0u32;
            let mut queries = 0;
            for t in 0..trials {
                let key = StreamKey::new(seed, &format!("demo/{n}/{k}/{c}"), u64::from(t));
                let g = generators::clique(n, k, &mut key.derive("graph").rng());
                let plan = clique_rand_build(n, c, &mut key.derive("algorithm").rng());
                queries = plan.len();
                let out = plan.run(&mut OracleSession::new(&g)).map_err(|e| e.to_string())?;
                ok += u32::from(outcome_correct(&g, out));
            }
            Ok(CurvePoint {
                c,
                queries,
                success_rate: f64::from(ok) / f64::from(trials),
            })
        })
        .collect()
}

/// Success rate of the randomized clique finder against the error
/// exponent `c`, on planted cliques of size `k`.
#[wasm_bindgen]
pub fn clique_rand_curve(n: usize, k: usize, cs: Vec<f64>, trials: u32, seed: u64) -> String {
    to_json(clique_rand_curve_value(n, k, &cs, trials, seed))
}
