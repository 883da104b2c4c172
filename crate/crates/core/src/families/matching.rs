// SPDX-License-Identifier: Apache-2.0
//! Finders for graphs that are a matching.

use super::clique::{build_ladder, LadderLayout};
use crate::oracle::{Answers, FindOutcome, Layout, Planned, QueryTag, RoundPlan};
use crate::set::VertexSet;
use crate::single_edge::{decode_block, emit_known_endpoint, known_endpoint_query_count, SingleEdgeBlock};
use rand::RngCore;
use std::f64::consts::E;

/// Level `[lo, hi)` of the recursion: every `v` in `[lo, mid)` gets a
/// known-endpoint block over `[mid, hi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchingNode {
    pub lo: usize,
    pub mid: usize,
    pub hi: usize,
    pub blocks: Vec<SingleEdgeBlock>,
    left: Option<usize>,
    right: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchingDetLayout {
    pub nodes: Vec<MatchingNode>,
}

pub type MatchingDetPlan = Planned<MatchingDetLayout>;

fn split(lo: usize, hi: usize) -> usize {
    lo + (hi - lo) / 2
}

fn build_node(round: &mut RoundPlan, nodes: &mut Vec<MatchingNode>, lo: usize, hi: usize) -> Option<usize> {
    if hi - lo < 2 {
        return None;
    }
    let n = round.universe();
    let mid = split(lo, hi);
    let target = VertexSet::range(n, mid, hi);
    let blocks = (lo..mid)
        .map(|v| {
            let tag = QueryTag::new("matching_det").with("v", v as f64).with("hi", hi as f64);
            emit_known_endpoint(round, &target, v, tag).expect("v outside target")
        })
        .collect();
    let id = nodes.len();
    nodes.push(MatchingNode {
        lo,
        mid,
        hi,
        blocks,
        left: None,
        right: None,
    });
    let left = build_node(round, nodes, lo, mid);
    let right = build_node(round, nodes, mid, hi);
    nodes[id].left = left;
    nodes[id].right = right;
    Some(id)
}

pub fn matching_det_build(n: usize) -> MatchingDetPlan {
    let mut round = RoundPlan::new(n);
    let mut nodes = Vec::new();
    build_node(&mut round, &mut nodes, 0, n);
    Planned {
        layout: MatchingDetLayout { nodes },
        round,
    }
}

/// Query count of [`matching_det_build`] without building it: the same split
/// recursion, charging each level `⌊n/2⌋` known-endpoint blocks over `⌈n/2⌉`.
pub fn matching_det_query_count(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let small = n / 2;
    let large = n - small;
    matching_det_query_count(small)
        + matching_det_query_count(large)
        + small * known_endpoint_query_count(large)
}

impl MatchingDetLayout {
    fn decode_node<A: Answers + ?Sized>(&self, id: Option<usize>, round: &RoundPlan, answers: &A) -> FindOutcome {
        let Some(id) = id else {
            return FindOutcome::NoEdgeFound;
        };
        let node = &self.nodes[id];
        let l = self.decode_node(node.left, round, answers);
        if l.is_found() {
            return l;
        }
        let r = self.decode_node(node.right, round, answers);
        if r.is_found() {
            return r;
        }
        // Cross decodes assume both halves are edge-free, which only the
        // halves' own NoEdgeFound establishes.
        if l != FindOutcome::NoEdgeFound || r != FindOutcome::NoEdgeFound {
            return FindOutcome::Undetermined;
        }
        let mut crowded = false;
        for b in &node.blocks {
            match decode_block(b, round, answers) {
                found @ FindOutcome::FoundEdge(_) => return found,
                FindOutcome::NoEdgeFound => {}
                _ => crowded = true,
            }
        }
        if crowded {
            FindOutcome::MoreThanOne
        } else {
            FindOutcome::NoEdgeFound
        }
    }
}

impl Layout for MatchingDetLayout {
    fn decode<A: Answers + ?Sized>(&self, round: &RoundPlan, answers: &A) -> FindOutcome {
        self.decode_node((!self.nodes.is_empty()).then_some(0), round, answers)
    }
}

pub type MatchingRandPlan = Planned<LadderLayout>;

/// Edge-count guesses `2, 4, …, 2^⌊log2 n⌋`.
pub fn matching_ladder(n: usize) -> Vec<f64> {
    let top = usize::BITS - 1 - n.max(1).leading_zeros();
    (1..=top).map(|i| (1u64 << i) as f64).collect()
}

pub fn matching_rand_samples_per_rung(n: usize, c: f64) -> usize {
    (2.0 * c * E * (n as f64).ln()).ceil() as usize
}

pub fn matching_rand_build<R: RngCore + ?Sized>(n: usize, c: f64, rng: &mut R) -> MatchingRandPlan {
    let per = matching_rand_samples_per_rung(n, c);
    build_ladder(n, "matching_rand", &matching_ladder(n), |d| 1.0 / d.sqrt(), per, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HiddenGraph;
    use crate::oracle::OracleSession;

    #[test]
    fn count_matches_plan() {
        for n in 0..=200 {
            assert_eq!(matching_det_build(n).len(), matching_det_query_count(n), "n = {n}");
        }
    }

    #[test]
    fn leaf_pairs_are_visible() {
        let g = HiddenGraph::from_edges(8, [(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
        let p = matching_det_build(8);
        let mut s = OracleSession::new(&g);
        let out = p.run(&mut s).unwrap();
        assert!(g.contains_edge(out.edge().unwrap()));
    }

    #[test]
    fn empty_graph() {
        let p = matching_det_build(10);
        assert_eq!(p.decode(&vec![false; p.len()]).unwrap(), FindOutcome::NoEdgeFound);
    }

    #[test]
    fn ladder_shape() {
        assert_eq!(matching_ladder(256).len(), 8);
        assert_eq!(matching_ladder(300).len(), 8);
        assert_eq!(matching_ladder(2), vec![2.0]);
    }
}
