// SPDX-License-Identifier: Apache-2.0
//! The one-round randomized edge finder for arbitrary graphs.
//!
//! Three families are sampled and submitted together:
//!
//! * `F1`: `⌈c(n+1) ln n⌉` uniform pairs, for dense graphs;
//! * `F2`: for every vertex `v` and degree guess `d ∈ D`, `⌈4ce² ln n⌉`
//!   known-endpoint blocks over samples of `T_{1/d}(V∖{v})`, each preceded
//!   by a guard query on the sample itself;
//! * `F3`: `⌈2ce² n ln n⌉` randomized single-edge blocks over samples of
//!   `T_{1/√n}(V)`.
//!
//! Decoding scans `F1`, then `F2`, then `F3`, and returns the first edge found.

use crate::graph::Edge;
use crate::oracle::{Answers, FindOutcome, Layout, Planned, QueryTag, RoundPlan};
use crate::rng::sample_into;
use crate::set::VertexSet;
use crate::single_edge::{decode_block, emit_known_endpoint, emit_randomized, SingleEdgeBlock};
use crate::VertexId;
use rand::{Rng, RngCore};
use std::f64::consts::E;

/// At or below this size the sampled budgets exceed `C(n, 2)`; query all pairs.
pub const EXHAUSTIVE_MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralPlanConfig {
    pub n: usize,
    pub c: f64,
    pub alpha: f64,
}

impl GeneralPlanConfig {
    pub fn new(n: usize, c: f64) -> Self {
        assert!(c > 0.0, "c must be positive");
        GeneralPlanConfig { n, c, alpha: 500.0 }
    }

    /// `c · alpha · n · log2³ n`.
    pub fn budget(&self) -> f64 {
        let lg = (self.n as f64).log2();
        self.c * self.alpha * self.n as f64 * lg * lg * lg
    }

    fn ln_n(&self) -> f64 {
        (self.n as f64).ln()
    }

    pub fn f1_size(&self) -> usize {
        (self.c * (self.n as f64 + 1.0) * self.ln_n()).ceil() as usize
    }

    pub fn f2_blocks_per_guess(&self) -> usize {
        (self.c * 4.0 * E * E * self.ln_n()).ceil() as usize
    }

    pub fn f3_blocks(&self) -> usize {
        (self.c * 2.0 * E * E * self.n as f64 * self.ln_n()).ceil() as usize
    }
}

/// Degree guesses `2^i · √n` for `i = 1..=⌊½ log2 n⌋`.
pub fn degree_estimates(n: usize) -> Vec<f64> {
    if n < 2 {
        return Vec::new();
    }
    let top = (0.5 * (n as f64).log2()).floor() as i32;
    let root = (n as f64).sqrt();
    (1..=top).map(|i| 2f64.powi(i) * root).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct F2Block {
    pub v: VertexId,
    pub d: f64,
    /// Index of the query on the bare sample, when it has two or more
    /// members. The known-endpoint decode is exact only if the sample is
    /// edge-free, so a positive guard voids the block.
    pub guard: Option<usize>,
    /// Empty (`len == 0`) when the sample came out empty.
    pub block: SingleEdgeBlock,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralLayout {
    pub config: GeneralPlanConfig,
    pub f1: Vec<Edge>,
    pub f2: Vec<F2Block>,
    pub f3: Vec<SingleEdgeBlock>,
}

pub type GeneralPlan = Planned<GeneralLayout>;

impl GeneralLayout {
    pub fn is_exhaustive(&self) -> bool {
        self.config.n <= EXHAUSTIVE_MAX_N
    }
}

impl Layout for GeneralLayout {
    fn decode<A: Answers + ?Sized>(&self, round: &RoundPlan, answers: &A) -> FindOutcome {
        if let Some(i) = (0..self.f1.len()).find(|&i| answers.get(i)) {
            return FindOutcome::FoundEdge(self.f1[i]);
        }
        for b in self.f2.iter().filter(|b| !b.guard.is_some_and(|g| answers.get(g))) {
            if let found @ FindOutcome::FoundEdge(_) = decode_block(&b.block, round, answers) {
                return found;
            }
        }
        for b in &self.f3 {
            if let found @ FindOutcome::FoundEdge(_) = decode_block(b, round, answers) {
                return found;
            }
        }
        FindOutcome::NoEdgeFound
    }
}

fn empty_block(n: usize, scheme: crate::single_edge::Scheme, start: usize) -> SingleEdgeBlock {
    SingleEdgeBlock {
        target: VertexSet::empty(n),
        scheme,
        start,
        len: 0,
    }
}

pub fn build_general_plan<R: RngCore + ?Sized>(cfg: GeneralPlanConfig, rng: &mut R) -> GeneralPlan {
    let n = cfg.n;
    assert!(n >= 2, "need at least two vertices");
    let mut round = RoundPlan::new(n);
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    let mut f3 = Vec::new();

    if n <= EXHAUSTIVE_MAX_N {
        round.begin(QueryTag::new("all_pairs"));
        for a in 0..n {
            for b in a + 1..n {
                f1.push(Edge::new(a, b));
                let w = round.push_empty();
                w[0] = (1 << a) | (1 << b);
            }
        }
        let layout = GeneralLayout { config: cfg, f1, f2, f3 };
        return Planned { layout, round };
    }

    round.begin(QueryTag::new("F1"));
    for _ in 0..cfg.f1_size() {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let w = round.push_empty();
        w[a >> 6] |= 1 << (a & 63);
        w[b >> 6] |= 1 << (b & 63);
        f1.push(Edge::new(a, b));
    }

    let full = VertexSet::full(n);
    let mut sample = VertexSet::empty(n);
    let per_guess = cfg.f2_blocks_per_guess();
    for v in 0..n {
        for &d in &degree_estimates(n) {
            for block in 0..per_guess {
                sample.clear();
                sample_into(full.as_ref(), 1.0 / d, rng, sample.words_mut()).expect("rate in range");
                sample.remove(v);
                let scheme = crate::single_edge::Scheme::KnownEndpoint(v);
                let tag = QueryTag::new("F2")
                    .with("v", v as f64)
                    .with("d", d)
                    .with("block", block as f64);
                let guard = (sample.len() >= 2).then(|| {
                    round.begin(tag.clone().with("guard", 1.0));
                    round.push(sample.as_ref());
                    round.len() - 1
                });
                let block = if sample.is_empty() {
                    empty_block(n, scheme, round.len())
                } else {
                    emit_known_endpoint(&mut round, &sample, v, tag).expect("v excluded")
                };
                f2.push(F2Block { v, d, guard, block });
            }
        }
    }

    let rate = 1.0 / (n as f64).sqrt();
    for block in 0..cfg.f3_blocks() {
        sample.clear();
        sample_into(full.as_ref(), rate, rng, sample.words_mut()).expect("rate in range");
        let b = if sample.len() < 2 {
            empty_block(n, crate::single_edge::Scheme::Randomized, round.len())
        } else {
            let tag = QueryTag::new("F3").with("block", block as f64);
            emit_randomized(&mut round, &sample, tag, rng).expect("at least two members")
        };
        f3.push(b);
    }

    let layout = GeneralLayout { config: cfg, f1, f2, f3 };
    Planned { layout, round }
}
