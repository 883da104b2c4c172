// SPDX-License-Identifier: Apache-2.0
//! Adaptive drivers that trade rounds for queries.
//!
//! Both `r`-round drivers cut the working set into `k = ⌈2m^{1/r}⌉ + 4`
//! round-robin blocks, find a pair of blocks whose union holds an edge, and
//! recurse on that union with one round fewer. The deterministic driver asks
//! all `C(k, 2)` block-pair unions; the randomized one runs the one-round
//! general algorithm on the partition graph.

use crate::graph::{Edge, VertexId};
use crate::nonadaptive::{build_general_plan, GeneralPlanConfig};
use crate::oracle::{
    Answers, ContractError, FindOutcome, Layout, OracleError, OracleSession, QueryTag, RoundPlan,
};
use crate::set::VertexSet;
use rand::RngCore;

/// `k = ⌈2m^{1/r}⌉ + 4` blocks of at most `t = ⌊½ m^{1-1/r}⌋` (before rounding up).
pub fn partition_params(m: usize, r: u32) -> (usize, usize) {
    let m = m as f64;
    let r = r as f64;
    let k = (2.0 * m.powf(1.0 / r)).ceil() as usize + 4;
    let t = (0.5 * m.powf(1.0 - 1.0 / r)).floor() as usize;
    (k, t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub blocks: Vec<VertexSet>,
    pub k: usize,
    pub t: usize,
}

impl Partition {
    /// Round-robin over `working` (in order) into `k` blocks.
    pub fn round_robin(n: usize, working: &[VertexId], r: u32) -> Self {
        let (k, t) = partition_params(working.len(), r);
        let mut blocks = vec![VertexSet::empty(n); k.min(working.len())];
        let nb = blocks.len();
        for (i, &v) in working.iter().enumerate() {
            blocks[i % nb].insert(v);
        }
        Partition { blocks, k, t }
    }

    pub fn max_block(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).max().unwrap_or(0)
    }
}

fn binom2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

fn all_pairs_round(n: usize, working: &[VertexId], round_index: u32) -> (RoundPlan, Vec<Edge>) {
    let mut plan = RoundPlan::new(n).with_round_index(round_index);
    plan.begin(QueryTag::new("all_pairs"));
    let mut pairs = Vec::with_capacity(binom2(working.len()));
    for (i, &a) in working.iter().enumerate() {
        for &b in &working[i + 1..] {
            let w = plan.push_empty();
            w[a >> 6] |= 1 << (a & 63);
            w[b >> 6] |= 1 << (b & 63);
            pairs.push(Edge::new(a, b));
        }
    }
    (plan, pairs)
}

fn run_all_pairs(session: &mut OracleSession<'_>, working: &[VertexId]) -> Result<FindOutcome, OracleError> {
    if working.len() < 2 {
        return Ok(FindOutcome::NoEdgeFound);
    }
    let (plan, pairs) = all_pairs_round(session.n(), working, session.next_round_index());
    let ans = session.submit_round(plan)?;
    Ok(match (0..pairs.len()).find(|&i| ans.get(i)) {
        Some(i) => FindOutcome::FoundEdge(pairs[i]),
        None => FindOutcome::NoEdgeFound,
    })
}

fn enough_rounds_for_search(m: usize, r: u32) -> bool {
    m >= 2 && r as f64 >= (m as f64).log2()
}

/// Deterministic `r`-round search; at most `10 r n^{2/r}` queries.
pub fn run_det_rounds(session: &mut OracleSession<'_>, r: u32) -> Result<FindOutcome, OracleError> {
    assert!(r >= 1, "need at least one round");
    let working: Vec<VertexId> = (0..session.n()).collect();
    det_level(session, &working, r)
}

fn det_level(session: &mut OracleSession<'_>, working: &[VertexId], r: u32) -> Result<FindOutcome, OracleError> {
    let m = working.len();
    if m < 2 {
        return Ok(FindOutcome::NoEdgeFound);
    }
    if enough_rounds_for_search(m, r) {
        return binary_search_on(session, working);
    }
    let (k, _) = partition_params(m, r);
    if r == 1 || binom2(m) <= binom2(k) {
        return run_all_pairs(session, working);
    }
    let part = Partition::round_robin(session.n(), working, r);
    let kb = part.blocks.len();
    let mut plan = RoundPlan::new(session.n()).with_round_index(session.next_round_index());
    let mut pairs = Vec::with_capacity(binom2(kb));
    plan.begin(QueryTag::new("block_pairs").with("k", kb as f64));
    for i in 0..kb {
        for j in i + 1..kb {
            let mut u = part.blocks[i].clone();
            u.union_with(part.blocks[j].as_ref());
            plan.push(u.as_ref());
            pairs.push((i, j));
        }
    }
    let ans = session.submit_round(plan)?;
    let Some(q) = (0..pairs.len()).find(|&q| ans.get(q)) else {
        return Ok(FindOutcome::NoEdgeFound);
    };
    let (i, j) = pairs[q];
    let mut next: Vec<VertexId> = part.blocks[i].iter().chain(part.blocks[j].iter()).collect();
    next.sort_unstable();
    det_level(session, &next, r - 1)
}

/// Four-way splitting search: six queries per round, about `log2 n` rounds.
pub fn run_binary_search(session: &mut OracleSession<'_>) -> Result<FindOutcome, OracleError> {
    let working: Vec<VertexId> = (0..session.n()).collect();
    binary_search_on(session, &working)
}

/// Searches `working`, padded with dummy slots to a power of two. Dummies
/// never reach the oracle; a query left with fewer than two real vertices is
/// negative and is not sent.
fn binary_search_on(session: &mut OracleSession<'_>, working: &[VertexId]) -> Result<FindOutcome, OracleError> {
    let n = session.n();
    let real = working.len();
    if real < 2 {
        return Ok(FindOutcome::NoEdgeFound);
    }
    let size = real.next_power_of_two();
    let mut slots: Vec<usize> = (0..size).collect();
    loop {
        let parts: Vec<&[usize]> = if slots.len() > 4 {
            slots.chunks(slots.len() / 4).collect()
        } else {
            slots.chunks(1).collect()
        };
        let mut plan = RoundPlan::new(n).with_round_index(session.next_round_index());
        plan.begin(QueryTag::new("binary_search").with("size", slots.len() as f64));
        let mut asked = Vec::new();
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let mut u = VertexSet::empty(n);
                for &s in parts[i].iter().chain(parts[j]) {
                    if s < real {
                        u.insert(working[s]);
                    }
                }
                if u.len() >= 2 {
                    plan.push(u.as_ref());
                    asked.push((i, j));
                }
            }
        }
        if asked.is_empty() {
            return Ok(FindOutcome::NoEdgeFound);
        }
        let ans = session.submit_round(plan)?;
        let Some(q) = (0..asked.len()).find(|&q| ans.get(q)) else {
            return Ok(FindOutcome::NoEdgeFound);
        };
        let (i, j) = asked[q];
        if slots.len() <= 4 {
            return Ok(FindOutcome::FoundEdge(Edge::new(
                working[parts[i][0]],
                working[parts[j][0]],
            )));
        }
        slots = parts[i].iter().chain(parts[j]).copied().collect();
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RoundsError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Contract(#[from] ContractError),
}

/// Randomized `r`-round search with per-level error exponent `c`.
pub fn run_rand_rounds<R: RngCore + ?Sized>(
    session: &mut OracleSession<'_>,
    r: u32,
    c: f64,
    rng: &mut R,
) -> Result<FindOutcome, RoundsError> {
    assert!(r >= 1, "need at least one round");
    let n = session.n();
    if r == 1 {
        if n < 2 {
            return Ok(FindOutcome::NoEdgeFound);
        }
        let plan = build_general_plan(GeneralPlanConfig::new(n, c), rng);
        return Ok(plan.run(session)?);
    }
    let working: Vec<VertexId> = (0..n).collect();
    rand_level(session, &working, r, c, rng)
}

fn rand_level<R: RngCore + ?Sized>(
    session: &mut OracleSession<'_>,
    working: &[VertexId],
    r: u32,
    c: f64,
    rng: &mut R,
) -> Result<FindOutcome, RoundsError> {
    let m = working.len();
    if m < 2 {
        return Ok(FindOutcome::NoEdgeFound);
    }
    let n = session.n();
    let (k, _) = partition_params(m, r);
    if r == 1 || k >= m {
        // Singleton blocks: the partition graph is the induced subgraph.
        let blocks: Vec<VertexSet> = working.iter().map(|&v| VertexSet::from_members(n, [v])).collect();
        let out = general_on_blocks(session, &blocks, c, rng)?;
        return Ok(match out {
            FindOutcome::FoundEdge(e) => FindOutcome::FoundEdge(Edge::new(working[e.u()], working[e.v()])),
            other => other,
        });
    }
    let part = Partition::round_robin(n, working, r);
    match general_on_blocks(session, &part.blocks, c, rng)? {
        FindOutcome::FoundEdge(e) => {
            let mut next: Vec<VertexId> =
                part.blocks[e.u()].iter().chain(part.blocks[e.v()].iter()).collect();
            next.sort_unstable();
            rand_level(session, &next, r - 1, c, rng)
        }
        other => Ok(other),
    }
}

/// One round of the general algorithm on the partition graph of `blocks`.
/// A found edge names two block indices.
fn general_on_blocks<R: RngCore + ?Sized>(
    session: &mut OracleSession<'_>,
    blocks: &[VertexSet],
    c: f64,
    rng: &mut R,
) -> Result<FindOutcome, RoundsError> {
    let k = blocks.len();
    if k < 2 {
        return Ok(FindOutcome::NoEdgeFound);
    }
    let plan = build_general_plan(GeneralPlanConfig::new(k, c), rng);
    let round = plan.round.with_round_index(session.next_round_index());
    let ans = session.submit_contracted_round(round, blocks)?;
    Ok(plan.layout.decode(ans.plan(), &ans))
}
