// SPDX-License-Identifier: Apache-2.0
//! Random members of the graph families used in experiments.

use crate::graph::{HiddenGraph, VertexId};
use rand::seq::index::sample;
use rand::Rng;

fn pick<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<VertexId> {
    let mut v = sample(rng, n, k.min(n)).into_vec();
    v.sort_unstable();
    v
}

pub fn complete(n: usize) -> HiddenGraph {
    HiddenGraph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).expect("simple")
}

pub fn single_edge<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HiddenGraph {
    let p = pick(n, 2, rng);
    HiddenGraph::from_edges(n, [(p[0], p[1])]).expect("simple")
}

/// A clique on `k` uniformly chosen vertices.
pub fn clique<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> HiddenGraph {
    clique_on(n, &pick(n, k, rng))
}

pub fn clique_on(n: usize, members: &[VertexId]) -> HiddenGraph {
    let mut e = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            e.push((a, b));
        }
    }
    HiddenGraph::from_edges(n, e).expect("simple")
}

/// `m` disjoint edges on uniformly chosen vertices.
pub fn matching<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> HiddenGraph {
    let mut v = sample(rng, n, (2 * m).min(n - n % 2)).into_vec();
    v.truncate(v.len() / 2 * 2);
    HiddenGraph::from_edges(n, v.chunks(2).map(|p| (p[0], p[1]))).expect("simple")
}

/// A star with uniform center and `degree` uniform leaves.
pub fn star<R: Rng + ?Sized>(n: usize, degree: usize, rng: &mut R) -> HiddenGraph {
    let center = rng.gen_range(0..n);
    let leaves = sample(rng, n - 1, degree.min(n - 1));
    HiddenGraph::from_edges(
        n,
        leaves.into_iter().map(|x| (center, if x >= center { x + 1 } else { x })),
    )
    .expect("simple")
}

/// Edges `{a, b}` for `a ∈ A`, `b ∈ B`, `a ≠ b`.
pub fn overlapping_product_on(n: usize, a: &[VertexId], b: &[VertexId]) -> HiddenGraph {
    let mut e: Vec<(usize, usize)> = Vec::new();
    for &x in a {
        for &y in b {
            if x != y {
                e.push((x.min(y), x.max(y)));
            }
        }
    }
    e.sort_unstable();
    e.dedup();
    HiddenGraph::from_edges(n, e).expect("simple")
}

/// Overlapping product with `|A| = ka`, `|B| = kb`, both uniform.
pub fn overlapping_product<R: Rng + ?Sized>(n: usize, ka: usize, kb: usize, rng: &mut R) -> HiddenGraph {
    let a = pick(n, ka, rng);
    let b = pick(n, kb, rng);
    overlapping_product_on(n, &a, &b)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> HiddenGraph {
    let mut e = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                e.push((a, b));
            }
        }
    }
    HiddenGraph::from_edges(n, e).expect("simple")
}
