// SPDX-License-Identifier: Apache-2.0
//! Deterministic finder for overlapping-product graphs (stars included).

use crate::graph::Edge;
use crate::oracle::{Answers, FindOutcome, Layout, Planned, QueryTag, RoundPlan};

/// One level of the halving recursion over `[lo, hi)`, split at `mid`.
///
/// Query `start + (v - lo)` is `{v} ∪ [mid, hi)` for `v < mid` and
/// `{v} ∪ [lo, mid)` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpNode {
    pub lo: usize,
    pub mid: usize,
    pub hi: usize,
    pub start: usize,
    left: Option<usize>,
    right: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpLayout {
    pub nodes: Vec<OpNode>,
}

pub type OpPlan = Planned<OpLayout>;

fn fill_range(w: &mut [u64], lo: usize, hi: usize) {
    for x in lo..hi {
        w[x >> 6] |= 1 << (x & 63);
    }
}

fn build_node(round: &mut RoundPlan, nodes: &mut Vec<OpNode>, lo: usize, hi: usize) -> Option<usize> {
    if hi - lo < 2 {
        return None;
    }
    let mid = lo + (hi - lo).div_ceil(2);
    let id = nodes.len();
    nodes.push(OpNode {
        lo,
        mid,
        hi,
        start: round.len(),
        left: None,
        right: None,
    });
    round.begin(QueryTag::new("op").with("lo", lo as f64).with("hi", hi as f64));
    for v in lo..hi {
        let w = round.push_empty();
        w[v >> 6] |= 1 << (v & 63);
        if v < mid {
            fill_range(w, mid, hi);
        } else {
            fill_range(w, lo, mid);
        }
    }
    let left = build_node(round, nodes, lo, mid);
    let right = build_node(round, nodes, mid, hi);
    nodes[id].left = left;
    nodes[id].right = right;
    Some(id)
}

/// At most `n⌈log2 n⌉` queries.
pub fn op_build(n: usize) -> OpPlan {
    let mut round = RoundPlan::new(n);
    let mut nodes = Vec::new();
    build_node(&mut round, &mut nodes, 0, n);
    Planned {
        layout: OpLayout { nodes },
        round,
    }
}

impl OpLayout {
    fn decode_node<A: Answers + ?Sized>(&self, id: Option<usize>, answers: &A) -> FindOutcome {
        let Some(id) = id else {
            return FindOutcome::NoEdgeFound;
        };
        let node = &self.nodes[id];
        let l = self.decode_node(node.left, answers);
        if l.is_found() {
            return l;
        }
        let r = self.decode_node(node.right, answers);
        if r.is_found() {
            return r;
        }
        if l != FindOutcome::NoEdgeFound || r != FindOutcome::NoEdgeFound {
            return FindOutcome::Undetermined;
        }
        let pos = |v: usize| answers.get(node.start + v - node.lo);
        let a = (node.lo..node.mid).find(|&v| pos(v));
        let b = (node.mid..node.hi).find(|&v| pos(v));
        match (a, b) {
            (Some(a), Some(b)) => FindOutcome::FoundEdge(Edge::new(a, b)),
            (None, None) => FindOutcome::NoEdgeFound,
            _ => FindOutcome::Undetermined,
        }
    }
}

impl Layout for OpLayout {
    fn decode<A: Answers + ?Sized>(&self, _round: &RoundPlan, answers: &A) -> FindOutcome {
        self.decode_node((!self.nodes.is_empty()).then_some(0), answers)
    }
}
