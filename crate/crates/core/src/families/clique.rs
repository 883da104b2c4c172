// SPDX-License-Identifier: Apache-2.0
//! Finders for graphs that are a single clique on an unknown vertex set.
//!
//! The deterministic plan walks an aligned dyadic tree over `[0, n)`. A node
//! `[lo, hi)` with halves `L = [lo, lo + 2^(t-1))` and `R = [lo + 2^(t-1), hi)`
//! gets one query for the whole interval and `⌈log2 |L|⌉ + ⌈log2 |R|⌉` bit
//! queries of the form `{x ∈ L : bit i of x - lo is 1} ∪ R` (and the mirror
//! image for `R`). Under a clique, a positive node with two negative halves
//! holds exactly one clique vertex per half, and the bit queries spell both
//! out. The total stays below `3n`.

use crate::graph::Edge;
use crate::oracle::{Answers, FindOutcome, Layout, Planned, QueryTag, RoundPlan};
use crate::rng::sample_into;
use crate::set::VertexSet;
use crate::single_edge::{decode_block, emit_randomized, ceil_log2, Scheme, SingleEdgeBlock};
use rand::RngCore;
use std::collections::HashMap;
use std::f64::consts::E;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueNode {
    pub lo: usize,
    pub mid: usize,
    pub hi: usize,
    /// Index of the whole-interval query; the `L` bit queries follow, then the `R` ones.
    pub start: usize,
}

impl CliqueNode {
    fn left_bits(&self) -> usize {
        ceil_log2(self.mid - self.lo)
    }

    fn right_bits(&self) -> usize {
        ceil_log2(self.hi - self.mid)
    }

    pub fn query_count(&self) -> usize {
        1 + self.left_bits() + self.right_bits()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueDetLayout {
    pub n: usize,
    /// Pre-order.
    pub nodes: Vec<CliqueNode>,
    by_interval: HashMap<(usize, usize), usize>,
}

pub type CliqueDetPlan = Planned<CliqueDetLayout>;

fn set_bit(w: &mut [u64], x: usize) {
    w[x >> 6] |= 1 << (x & 63);
}

fn walk(n: usize, lo: usize, t: u32, round: &mut RoundPlan, nodes: &mut Vec<CliqueNode>) {
    if t == 0 || lo >= n {
        return;
    }
    let half = 1usize << (t - 1);
    let mid = lo + half;
    if mid >= n {
        // Right half is empty: this interval is the same as its left child.
        walk(n, lo, t - 1, round, nodes);
        return;
    }
    let hi = (lo + 2 * half).min(n);
    let node = CliqueNode {
        lo,
        mid,
        hi,
        start: round.len(),
    };
    round.begin(QueryTag::new("clique_det").with("lo", lo as f64).with("hi", hi as f64));
    let w = round.push_empty();
    (lo..hi).for_each(|x| set_bit(w, x));
    for i in 0..node.left_bits() {
        let w = round.push_empty();
        (lo..mid).filter(|x| (x - lo) >> i & 1 == 1).for_each(|x| set_bit(w, x));
        (mid..hi).for_each(|x| set_bit(w, x));
    }
    for i in 0..node.right_bits() {
        let w = round.push_empty();
        (mid..hi).filter(|x| (x - mid) >> i & 1 == 1).for_each(|x| set_bit(w, x));
        (lo..mid).for_each(|x| set_bit(w, x));
    }
    nodes.push(node);
    walk(n, lo, t - 1, round, nodes);
    walk(n, mid, t - 1, round, nodes);
}

pub fn clique_det_build(n: usize) -> CliqueDetPlan {
    let mut round = RoundPlan::new(n);
    let mut nodes = Vec::new();
    walk(n, 0, ceil_log2(n) as u32, &mut round, &mut nodes);
    let by_interval = nodes.iter().enumerate().map(|(i, x)| ((x.lo, x.hi), i)).collect();
    Planned {
        layout: CliqueDetLayout { n, nodes, by_interval },
        round,
    }
}

impl CliqueDetLayout {
    fn interval_positive<A: Answers + ?Sized>(&self, lo: usize, hi: usize, answers: &A) -> bool {
        if hi - lo < 2 {
            return false;
        }
        let i = self.by_interval[&(lo, hi)];
        answers.get(self.nodes[i].start)
    }

    fn read_offset<A: Answers + ?Sized>(&self, first: usize, bits: usize, answers: &A) -> usize {
        (0..bits).filter(|&i| answers.get(first + i)).map(|i| 1 << i).sum()
    }
}

impl Layout for CliqueDetLayout {
    fn decode<A: Answers + ?Sized>(&self, _round: &RoundPlan, answers: &A) -> FindOutcome {
        let Some(root) = self.nodes.first() else {
            return FindOutcome::NoEdgeFound;
        };
        if !answers.get(root.start) {
            return FindOutcome::NoEdgeFound;
        }
        for node in &self.nodes {
            if !answers.get(node.start)
                || self.interval_positive(node.lo, node.mid, answers)
                || self.interval_positive(node.mid, node.hi, answers)
            {
                continue;
            }
            let x = node.lo + self.read_offset(node.start + 1, node.left_bits(), answers);
            let y = node.mid
                + self.read_offset(node.start + 1 + node.left_bits(), node.right_bits(), answers);
            if x < node.mid && y < node.hi {
                return FindOutcome::FoundEdge(Edge::new(x, y));
            }
            return FindOutcome::Undetermined;
        }
        FindOutcome::Undetermined
    }
}

/// One sampled block of a randomized ladder plan.
#[derive(Clone, Debug, PartialEq)]
pub struct RungBlock {
    pub d: f64,
    /// Empty (`len == 0`) when the sample had fewer than two vertices.
    pub block: SingleEdgeBlock,
}

/// Samples `per_rung` sets from `T_{rate(d)}(V)` for every `d` on the ladder
/// and wraps each in a randomized single-edge block.
pub(crate) fn build_ladder<R: RngCore + ?Sized>(
    n: usize,
    scheme: &'static str,
    ladder: &[f64],
    rate: impl Fn(f64) -> f64,
    per_rung: usize,
    rng: &mut R,
) -> Planned<LadderLayout> {
    let mut round = RoundPlan::new(n);
    let full = VertexSet::full(n);
    let mut sample = VertexSet::empty(n);
    let mut blocks = Vec::new();
    for &d in ladder {
        for j in 0..per_rung {
            sample.clear();
            sample_into(full.as_ref(), rate(d), rng, sample.words_mut()).expect("rate in range");
            let block = if sample.len() < 2 {
                SingleEdgeBlock {
                    target: VertexSet::empty(n),
                    scheme: Scheme::Randomized,
                    start: round.len(),
                    len: 0,
                }
            } else {
                let tag = QueryTag::new(scheme).with("d", d).with("block", j as f64);
                emit_randomized(&mut round, &sample, tag, rng).expect("at least two members")
            };
            blocks.push(RungBlock { d, block });
        }
    }
    Planned {
        layout: LadderLayout { blocks },
        round,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LadderLayout {
    pub blocks: Vec<RungBlock>,
}

impl Layout for LadderLayout {
    fn decode<A: Answers + ?Sized>(&self, round: &RoundPlan, answers: &A) -> FindOutcome {
        for b in &self.blocks {
            if let found @ FindOutcome::FoundEdge(_) = decode_block(&b.block, round, answers) {
                return found;
            }
        }
        FindOutcome::NoEdgeFound
    }
}

pub type CliqueRandPlan = Planned<LadderLayout>;

/// Clique-size guesses `2, 4, …, 2^⌈log2 n⌉`.
pub fn clique_ladder(n: usize) -> Vec<f64> {
    (1..=ceil_log2(n)).map(|i| (1u64 << i) as f64).collect()
}

pub fn clique_rand_samples_per_rung(n: usize, c: f64) -> usize {
    (8.0 * c * E * (n as f64).ln()).ceil() as usize
}

pub fn clique_rand_build<R: RngCore + ?Sized>(n: usize, c: f64, rng: &mut R) -> CliqueRandPlan {
    let per = clique_rand_samples_per_rung(n, c);
    build_ladder(n, "clique_rand", &clique_ladder(n), |d| 1.0 / d, per, rng)
}
