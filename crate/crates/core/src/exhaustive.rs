// SPDX-License-Identifier: Apache-2.0
//! Exhaustive verification helpers for small `n`.
//!
//! [`explore_transcripts`] checks a deterministic driver against every graph
//! on `n <= 64` vertices without enumerating graphs. It walks the tree of
//! answer patterns through a [`ScriptedOracle`]; at each leaf the graphs
//! consistent with the answers read are exactly the subgraphs `G ⊆ M` that
//! still satisfy every positive answer, where `M` is all pairs not inside a
//! negative query. An output edge is forced iff removing it from `M` breaks
//! some positive answer, and `NoEdgeFound` is forced iff `M` is empty.

use crate::graph::{Edge, HiddenGraph};
use crate::oracle::{EdgeOracle, FindOutcome, OracleSession};
use crate::set::{SetRef, VertexSet};
use std::cell::RefCell;

/// All graphs on `n` vertices in edge-mask order (bit `i` is the `i`-th pair
/// in lexicographic order).
pub fn graph_from_mask(n: usize, mask: u64) -> HiddenGraph {
    let mut e = Vec::new();
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask >> bit & 1 == 1 {
                e.push((a, b));
            }
            bit += 1;
        }
    }
    HiddenGraph::from_edges(n, e).expect("simple")
}

/// Answers distinct sets from a script in first-read order, then `false`.
/// Sets with fewer than two members are negative and not recorded.
pub struct ScriptedOracle {
    n: usize,
    script: Vec<bool>,
    read: RefCell<Vec<(u64, bool)>>,
}

impl ScriptedOracle {
    pub fn new(n: usize, script: Vec<bool>) -> Self {
        assert!(n <= 64, "scripted oracle supports n <= 64");
        ScriptedOracle {
            n,
            script,
            read: RefCell::new(Vec::new()),
        }
    }

    /// Distinct sets read so far with the answers given.
    pub fn transcript(&self) -> Vec<(u64, bool)> {
        self.read.borrow().clone()
    }
}

impl EdgeOracle for ScriptedOracle {
    fn n(&self) -> usize {
        self.n
    }

    fn is_query(&self, a: SetRef<'_>) -> bool {
        if a.len() < 2 {
            return false;
        }
        let mask = a.words().first().copied().unwrap_or(0);
        let mut read = self.read.borrow_mut();
        if let Some(&(_, ans)) = read.iter().find(|(m, _)| *m == mask) {
            return ans;
        }
        let ans = self.script.get(read.len()).copied().unwrap_or(false);
        read.push((mask, ans));
        ans
    }
}

/// `M`: adjacency masks of all pairs not inside a negative set.
fn maximal_graph(n: usize, transcript: &[(u64, bool)]) -> Vec<u64> {
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut m: Vec<u64> = (0..n).map(|v| all & !(1 << v)).collect();
    for &(s, ans) in transcript {
        if !ans {
            for (v, row) in m.iter_mut().enumerate() {
                if s >> v & 1 == 1 {
                    *row &= !s;
                }
            }
        }
    }
    m
}

fn satisfies_positives(m: &[u64], transcript: &[(u64, bool)]) -> bool {
    transcript
        .iter()
        .filter(|(_, ans)| *ans)
        .all(|&(s, _)| (0..m.len()).any(|v| s >> v & 1 == 1 && m[v] & s != 0))
}

fn mask_graph(m: &[u64]) -> HiddenGraph {
    let n = m.len();
    let edges = (0..n).flat_map(|a| (a + 1..n).filter(move |&b| m[a] >> b & 1 == 1).map(move |b| (a, b)));
    HiddenGraph::from_edges(n, edges).expect("simple")
}

/// A consistent graph on which `out` is wrong, if there is one.
fn refuting_graph(m: &[u64], transcript: &[(u64, bool)], out: FindOutcome) -> Option<HiddenGraph> {
    match out {
        FindOutcome::FoundEdge(e) => {
            let mut without = m.to_vec();
            without[e.u()] &= !(1 << e.v());
            without[e.v()] &= !(1 << e.u());
            satisfies_positives(&without, transcript).then(|| mask_graph(&without))
        }
        FindOutcome::NoEdgeFound => m.iter().any(|&r| r != 0).then(|| mask_graph(m)),
        FindOutcome::MoreThanOne | FindOutcome::Undetermined => Some(mask_graph(m)),
    }
}

#[derive(Clone, Debug, Default)]
pub struct TranscriptReport {
    /// Reachable leaves checked.
    pub leaves: usize,
    pub max_queries: u64,
    pub max_rounds: u32,
    /// Up to a few graphs on which the driver's output is wrong.
    pub counterexamples: Vec<(HiddenGraph, FindOutcome)>,
    /// Drivers that returned an error on some transcript.
    pub errors: Vec<String>,
}

impl TranscriptReport {
    pub fn is_exact(&self) -> bool {
        self.counterexamples.is_empty() && self.errors.is_empty()
    }
}

/// Runs `driver` over every reachable answer pattern. `driver` must be
/// deterministic and must only learn about the graph through the session.
pub fn explore_transcripts<F, E>(n: usize, round_limit: Option<u32>, mut driver: F) -> TranscriptReport
where
    F: FnMut(&mut OracleSession<'_>) -> Result<FindOutcome, E>,
    E: std::fmt::Display,
{
    let mut report = TranscriptReport::default();
    let mut stack: Vec<Vec<bool>> = vec![Vec::new()];
    while let Some(script) = stack.pop() {
        let oracle = ScriptedOracle::new(n, script.clone());
        let mut session = match round_limit {
            Some(r) => OracleSession::with_round_limit(&oracle, r),
            None => OracleSession::new(&oracle),
        };
        let out = driver(&mut session);
        let (queries, rounds) = (session.queries_used(), session.rounds_used());
        drop(session);
        let t = oracle.transcript();
        let prefix = &t[..script.len().min(t.len())];
        if !satisfies_positives(&maximal_graph(n, prefix), prefix) {
            continue;
        }
        for i in script.len()..t.len() {
            let mut child: Vec<bool> = t[..i].iter().map(|&(_, a)| a).collect();
            child.push(true);
            stack.push(child);
        }
        let m = maximal_graph(n, &t);
        if !satisfies_positives(&m, &t) {
            continue;
        }
        report.leaves += 1;
        report.max_queries = report.max_queries.max(queries);
        report.max_rounds = report.max_rounds.max(rounds);
        match out {
            Ok(out) => {
                if let Some(g) = refuting_graph(&m, &t, out) {
                    if report.counterexamples.len() < 4 {
                        report.counterexamples.push((g, out));
                    }
                }
            }
            Err(e) => {
                if report.errors.len() < 4 {
                    report.errors.push(e.to_string());
                }
            }
        }
    }
    report
}

/// Checks an outcome against the hidden graph: a found edge must be real,
/// `NoEdgeFound` must mean the graph is empty.
pub fn outcome_correct(g: &HiddenGraph, out: FindOutcome) -> bool {
    match out {
        FindOutcome::FoundEdge(e) => g.contains_edge(e),
        FindOutcome::NoEdgeFound => g.m() == 0,
        _ => false,
    }
}

/// `FoundEdge` naming a non-edge.
pub fn is_wrong_pair(g: &HiddenGraph, out: FindOutcome) -> bool {
    matches!(out, FindOutcome::FoundEdge(e) if !g.contains_edge(e))
}

/// Every subset of `[0, n)` as a set, `n <= 20`.
pub fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    assert!(n <= 20);
    (0..1u64 << n).map(move |m| VertexSet::from_members(n, (0..n).filter(|&v| m >> v & 1 == 1)))
}

/// All pairs `{a, b}` with `a < b < n`.
pub fn all_pairs(n: usize) -> impl Iterator<Item = Edge> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| Edge::new(a, b)))
}
