// SPDX-License-Identifier: Apache-2.0
//! Adversaries that answer a fixed query family so that no output is safe.
//!
//! Both keep a candidate structure (an edge set, or a clique's vertex set)
//! and peel away whatever a query would otherwise pin down. Whatever a
//! strategy outputs afterwards, [`refute`](GeneralFooling::refute) returns a
//! graph consistent with every answer on which that output is wrong.

use crate::generators::clique_on;
use crate::graph::{Edge, HiddenGraph, VertexId};
use crate::oracle::FindOutcome;
use crate::set::VertexSet;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AdversaryError {
    #[error("query pushed after answers were issued")]
    AdaptiveUse,
    #[error("query universe {got} does not match n = {n}")]
    Universe { n: usize, got: usize },
    #[error("family of {size} queries exceeds the clique adversary limit {limit}")]
    FamilyTooLarge { size: usize, limit: usize },
}

/// Collects a non-adaptive family; answers exist only once it is frozen.
#[derive(Clone, Debug)]
pub struct FamilyBuilder {
    n: usize,
    family: Vec<VertexSet>,
    frozen: bool,
}

impl FamilyBuilder {
    pub fn new(n: usize) -> Self {
        FamilyBuilder {
            n,
            family: Vec::new(),
            frozen: false,
        }
    }

    pub fn push(&mut self, s: VertexSet) -> Result<(), AdversaryError> {
        if self.frozen {
            return Err(AdversaryError::AdaptiveUse);
        }
        if s.universe() != self.n {
            return Err(AdversaryError::Universe {
                n: self.n,
                got: s.universe(),
            });
        }
        self.family.push(s);
        Ok(())
    }

    /// Freezes the family and runs the general adversary on it.
    pub fn general(&mut self) -> GeneralFooling {
        self.frozen = true;
        general_fooling(self.n, &self.family).expect("universes checked on push")
    }

    /// Freezes the family and runs the clique adversary on it.
    pub fn clique(&mut self) -> Result<CliqueFooling, AdversaryError> {
        self.frozen = true;
        clique_fooling(self.n, &self.family)
    }
}

/// Final state of the general peeling adversary.
#[derive(Clone, Debug)]
pub struct GeneralFooling {
    pub n: usize,
    pub answers: Vec<bool>,
    /// Surviving edge set `E`.
    pub surviving: Vec<Edge>,
    /// `|E(S)|` per query at termination.
    pub residual_sizes: Vec<usize>,
    pub peel_steps: usize,
}

fn check_universe(n: usize, family: &[VertexSet]) -> Result<(), AdversaryError> {
    match family.iter().find(|s| s.universe() != n) {
        Some(s) => Err(AdversaryError::Universe {
            n,
            got: s.universe(),
        }),
        None => Ok(()),
    }
}

/// Start from the complete graph; while some query has exactly one residual
/// edge (lowest index first), delete that edge everywhere.
pub fn general_fooling(n: usize, family: &[VertexSet]) -> Result<GeneralFooling, AdversaryError> {
    check_universe(n, family)?;
    let mut alive = vec![VertexSet::full(n); n];
    for (v, row) in alive.iter_mut().enumerate() {
        row.remove(v);
    }
    let mut counts: Vec<usize> = family
        .iter()
        .map(|s| {
            let k = s.len();
            k * k.saturating_sub(1) / 2
        })
        .collect();
    let mut steps = 0;
    while let Some(i) = counts.iter().position(|&c| c == 1) {
        let s = &family[i];
        let e = s
            .iter()
            .find_map(|a| {
                let mut nb = alive[a].clone();
                nb.intersect_with(s.as_ref());
                nb.iter().find(|&b| b > a).map(|b| Edge::new(a, b))
            })
            .expect("residual has one edge");
        alive[e.u()].remove(e.v());
        alive[e.v()].remove(e.u());
        for (j, q) in family.iter().enumerate() {
            if q.contains(e.u()) && q.contains(e.v()) {
                counts[j] -= 1;
            }
        }
        steps += 1;
    }
    let surviving = (0..n)
        .flat_map(|a| {
            let row = &alive[a];
            row.iter().filter(move |&b| b > a).map(move |b| Edge::new(a, b)).collect::<Vec<_>>()
        })
        .collect();
    Ok(GeneralFooling {
        n,
        answers: counts.iter().map(|&c| c > 0).collect(),
        residual_sizes: counts,
        surviving,
        peel_steps: steps,
    })
}

impl GeneralFooling {
    /// `E` is nonempty, so no output is safe.
    pub fn foolable(&self) -> bool {
        !self.surviving.is_empty()
    }

    pub fn surviving_graph(&self) -> HiddenGraph {
        HiddenGraph::from_edges(self.n, self.surviving.iter().map(|e| (e.u(), e.v()))).expect("simple")
    }

    /// A graph consistent with the answers on which `output` is wrong:
    /// `E ∖ {e}` for an edge output, `E` itself otherwise.
    pub fn refute(&self, output: FindOutcome) -> HiddenGraph {
        match output {
            FindOutcome::FoundEdge(e) => HiddenGraph::from_edges(
                self.n,
                self.surviving.iter().filter(|&&x| x != e).map(|x| (x.u(), x.v())),
            )
            .expect("simple"),
            _ => self.surviving_graph(),
        }
    }
}

/// Final state of the clique adversary.
#[derive(Clone, Debug)]
pub struct CliqueFooling {
    pub n: usize,
    pub answers: Vec<bool>,
    /// Surviving vertex set `C`.
    pub surviving: VertexSet,
    /// `|S ∩ C|` per query at termination.
    pub residual_sizes: Vec<usize>,
}

/// Largest family the clique adversary accepts: `⌊n/2⌋ - 1`.
pub fn clique_family_limit(n: usize) -> usize {
    (n / 2).saturating_sub(1)
}

/// Start from `C = V`; while some query meets `C` in one or two vertices
/// (lowest index first), delete those vertices from `C`.
pub fn clique_fooling(n: usize, family: &[VertexSet]) -> Result<CliqueFooling, AdversaryError> {
    check_universe(n, family)?;
    let limit = clique_family_limit(n);
    if family.len() > limit {
        return Err(AdversaryError::FamilyTooLarge {
            size: family.len(),
            limit,
        });
    }
    let mut c = VertexSet::full(n);
    let residual = |c: &VertexSet, s: &VertexSet| {
        let mut r = s.clone();
        r.intersect_with(c.as_ref());
        r
    };
    while let Some(r) = family
        .iter()
        .map(|s| residual(&c, s))
        .find(|r| (1..=2).contains(&r.len()))
    {
        c.difference_with(r.as_ref());
    }
    let residual_sizes: Vec<usize> = family.iter().map(|s| residual(&c, s).len()).collect();
    Ok(CliqueFooling {
        n,
        answers: residual_sizes.iter().map(|&k| k > 0).collect(),
        residual_sizes,
        surviving: c,
    })
}

impl CliqueFooling {
    /// Clique on `C ∖ {v}` for an endpoint `v ∈ C` of an edge output, else the clique on `C`.
    pub fn refute(&self, output: FindOutcome) -> HiddenGraph {
        let mut members = self.surviving.clone();
        if let FindOutcome::FoundEdge(e) = output {
            if let Some(v) = [e.u(), e.v()].into_iter().find(|&v| members.contains(v)) {
                members.remove(v);
            }
        }
        clique_on(self.n, &members.iter().collect::<Vec<_>>())
    }
}

/// Uniform center, each other vertex a leaf with probability `1 / log2 n`.
pub fn hard_star_sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HiddenGraph {
    assert!(n >= 4, "hard star distribution needs n >= 4");
    let center: VertexId = rng.gen_range(0..n);
    let p = 1.0 / (n as f64).log2();
    let edges: Vec<(usize, usize)> = (0..n)
        .filter(|&u| u != center)
        .filter(|_| rng.gen_bool(p))
        .map(|u| (center, u))
        .collect();
    HiddenGraph::from_edges(n, edges).expect("simple")
}

/// Every output a strategy on `n` vertices could declare.
pub fn all_outputs(n: usize) -> impl Iterator<Item = FindOutcome> {
    crate::exhaustive::all_pairs(n).map(FindOutcome::FoundEdge).chain([
        FindOutcome::NoEdgeFound,
        FindOutcome::MoreThanOne,
        FindOutcome::Undetermined,
    ])
}

/// Why an adversary failed to defeat a family.
#[derive(Debug, Error, PartialEq)]
pub enum DefeatFailure {
    #[error(transparent)]
    Adversary(#[from] AdversaryError),
    #[error("no candidate survived peeling")]
    NotFoolable,
    #[error("query {query} ended with residual size {size}")]
    Residual { query: usize, size: usize },
    #[error("peeling ran {0} steps")]
    TooManySteps(usize),
    #[error("refutation of {output:?} disagrees with the answer to query {query}")]
    Inconsistent { output: FindOutcome, query: usize },
    #[error("refutation of {0:?} does not make it wrong")]
    NotRefuted(FindOutcome),
    #[error("refutation of {0:?} is not a clique")]
    NotClique(FindOutcome),
}

fn check_refutation(
    family: &[VertexSet],
    answers: &[bool],
    output: FindOutcome,
    g: &HiddenGraph,
) -> Result<(), DefeatFailure> {
    if let Some(query) = family.iter().zip(answers).position(|(s, &a)| g.is_query(s.as_ref()) != a) {
        return Err(DefeatFailure::Inconsistent { output, query });
    }
    if crate::exhaustive::outcome_correct(g, output) {
        return Err(DefeatFailure::NotRefuted(output));
    }
    Ok(())
}

/// Runs the general adversary on `family` and checks its final state and a
/// refutation of every possible output. Succeeds iff every deterministic
/// strategy asking `family` is defeated.
pub fn verify_general_defeat(n: usize, family: &[VertexSet]) -> Result<GeneralFooling, DefeatFailure> {
    let f = general_fooling(n, family)?;
    if !f.foolable() {
        return Err(DefeatFailure::NotFoolable);
    }
    if f.peel_steps > n * n.saturating_sub(1) / 2 {
        return Err(DefeatFailure::TooManySteps(f.peel_steps));
    }
    if let Some(query) = f.residual_sizes.iter().position(|&k| k == 1) {
        return Err(DefeatFailure::Residual { query, size: 1 });
    }
    for output in all_outputs(n) {
        check_refutation(family, &f.answers, output, &f.refute(output))?;
    }
    Ok(f)
}

/// As [`verify_general_defeat`] for the clique adversary; refutations must
/// also be cliques.
pub fn verify_clique_defeat(n: usize, family: &[VertexSet]) -> Result<CliqueFooling, DefeatFailure> {
    let f = clique_fooling(n, family)?;
    if f.surviving.len() < 2 {
        return Err(DefeatFailure::NotFoolable);
    }
    if let Some(query) = f.residual_sizes.iter().position(|&k| (1..=2).contains(&k)) {
        return Err(DefeatFailure::Residual {
            query,
            size: f.residual_sizes[query],
        });
    }
    for output in all_outputs(n) {
        let g = f.refute(output);
        if !crate::families::is_clique(&g) {
            return Err(DefeatFailure::NotClique(output));
        }
        check_refutation(family, &f.answers, output, &g)?;
    }
    Ok(f)
}
