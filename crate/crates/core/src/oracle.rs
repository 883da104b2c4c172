// SPDX-License-Identifier: Apache-2.0
//! Round plans, the counting oracle, and decoder outcomes.

use crate::graph::{Edge, HiddenGraph, VertexId};
use crate::set::{SetFamily, SetRef, VertexSet};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::cell::Cell;
use std::fmt;
use thiserror::Error;

/// What a decoder concluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FindOutcome {
    FoundEdge(Edge),
    NoEdgeFound,
    /// The answers are inconsistent with at most one edge.
    MoreThanOne,
    /// The answers fit several candidate edges.
    Undetermined,
}

impl FindOutcome {
    pub fn edge(&self) -> Option<Edge> {
        match self {
            FindOutcome::FoundEdge(e) => Some(*e),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, FindOutcome::FoundEdge(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            FindOutcome::FoundEdge(_) => "found_edge",
            FindOutcome::NoEdgeFound => "no_edge_found",
            FindOutcome::MoreThanOne => "more_than_one",
            FindOutcome::Undetermined => "undetermined",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("expected {expected} answers, got {got}")]
    Misaligned { expected: usize, got: usize },
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<(), DecodeError> {
    if expected == got {
        Ok(())
    } else {
        Err(DecodeError::Misaligned { expected, got })
    }
}

/// Read access to a vector of query answers.
pub trait Answers {
    fn len(&self) -> usize;
    fn get(&self, i: usize) -> bool;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Answers for [bool] {
    fn len(&self) -> usize {
        <[bool]>::len(self)
    }
    fn get(&self, i: usize) -> bool {
        self[i]
    }
}

impl Answers for Vec<bool> {
    fn len(&self) -> usize {
        self.as_slice().len()
    }
    fn get(&self, i: usize) -> bool {
        self[i]
    }
}

/// A contiguous window `[offset, offset + len)` of another answer source.
pub struct Window<'a, A: Answers + ?Sized> {
    inner: &'a A,
    offset: usize,
    len: usize,
}

impl<'a, A: Answers + ?Sized> Window<'a, A> {
    pub fn new(inner: &'a A, offset: usize, len: usize) -> Self {
        assert!(offset + len <= inner.len());
        Window { inner, offset, len }
    }
}

impl<A: Answers + ?Sized> Answers for Window<'_, A> {
    fn len(&self) -> usize {
        self.len
    }
    fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.inner.get(self.offset + i)
    }
}

/// Label for a run of queries produced by one sub-scheme, e.g. `F2[v=7,d=16,block=3]`.
#[derive(Clone, Debug, PartialEq)]
pub struct QueryTag {
    pub scheme: &'static str,
    pub params: SmallVec<[(&'static str, f64); 4]>,
}

impl QueryTag {
    pub fn new(scheme: &'static str) -> Self {
        QueryTag {
            scheme,
            params: SmallVec::new(),
        }
    }

    pub fn with(mut self, key: &'static str, value: impl Into<f64>) -> Self {
        self.params.push((key, value.into()));
        self
    }
}

impl fmt::Display for QueryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.scheme)?;
        if !self.params.is_empty() {
            f.write_str("[")?;
            for (i, (k, v)) in self.params.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                if v.fract() == 0.0 && v.abs() < 1e15 {
                    write!(f, "{k}={}", *v as i64)?;
                } else {
                    write!(f, "{k}={v:.3}")?;
                }
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// An ordered batch of queries, each labelled by the tag of the span it falls in.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundPlan {
    round_index: u32,
    sets: SetFamily,
    spans: Vec<(usize, QueryTag)>,
}

impl RoundPlan {
    pub fn new(n: usize) -> Self {
        RoundPlan {
            round_index: 1,
            sets: SetFamily::new(n),
            spans: Vec::new(),
        }
    }

    pub fn with_round_index(mut self, round_index: u32) -> Self {
        self.round_index = round_index;
        self
    }

    pub fn round_index(&self) -> u32 {
        self.round_index
    }

    pub fn universe(&self) -> usize {
        self.sets.universe()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Subsequent queries carry `tag` until the next call.
    pub fn begin(&mut self, tag: QueryTag) {
        let at = self.len();
        if let Some(last) = self.spans.last_mut() {
            if last.0 == at {
                last.1 = tag;
                return;
            }
        }
        self.spans.push((at, tag));
    }

    pub fn push(&mut self, s: SetRef<'_>) {
        self.sets.push(s);
    }

    pub fn push_empty(&mut self) -> &mut [u64] {
        self.sets.push_empty()
    }

    /// Appends `count` empty queries and returns their words back to back.
    pub fn push_empty_n(&mut self, count: usize) -> &mut [u64] {
        self.sets.push_empty_n(count)
    }

    pub fn get(&self, i: usize) -> SetRef<'_> {
        self.sets.get(i)
    }

    pub fn sets(&self) -> &SetFamily {
        &self.sets
    }

    /// The span tag and the offset of query `i` inside its span.
    pub fn tag(&self, i: usize) -> Option<(&QueryTag, usize)> {
        let k = self.spans.partition_point(|(start, _)| *start <= i);
        if k == 0 {
            return None;
        }
        let (start, tag) = &self.spans[k - 1];
        Some((tag, i - start))
    }

    pub fn tag_string(&self, i: usize) -> String {
        match self.tag(i) {
            Some((t, off)) => format!("{t}#{off}"),
            None => format!("#{i}"),
        }
    }

    /// Appends another plan's queries and tags.
    pub fn append(&mut self, other: &RoundPlan) {
        let base = self.len();
        self.sets.extend_from(&other.sets);
        for (start, tag) in &other.spans {
            let at = base + start;
            match self.spans.last_mut() {
                Some(last) if last.0 == at => last.1 = tag.clone(),
                _ => self.spans.push((at, tag.clone())),
            }
        }
    }
}

pub type QueryId = u64;

/// One row of a debugging dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub query_id: QueryId,
    pub members: Vec<VertexId>,
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub answer: Option<bool>,
}

impl RoundPlan {
    /// Plan rows without answers, ids numbered from `first_id`.
    pub fn records(&self, first_id: QueryId) -> Vec<QueryRecord> {
        (0..self.len())
            .map(|i| QueryRecord {
                query_id: first_id + i as u64,
                members: self.get(i).iter().collect(),
                tag: self.tag_string(i),
                answer: None,
            })
            .collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("session is closed")]
    Closed,
    #[error("round limit of {limit} reached")]
    RoundLimit { limit: u32 },
    #[error("expected round index {expected}, got {got}")]
    OutOfOrder { expected: u32, got: u32 },
    #[error("plan universe {plan} does not match graph size {graph}")]
    UniverseMismatch { plan: usize, graph: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SessionState {
    /// Accepting further rounds.
    Open,
    /// The round limit is used up; counters remain readable.
    Sealed,
    Closed,
}

/// Whatever answers IS queries. [`HiddenGraph`] is the real one; tests plug
/// in scripted oracles to walk every answer pattern of a driver.
pub trait EdgeOracle {
    fn n(&self) -> usize;

    fn is_query(&self, a: SetRef<'_>) -> bool;

    /// Adjacency rows of the contracted graph, `words_for(k)` words per
    /// block; the diagonal marks an edge inside one block. `owner[v]` is the
    /// block holding `v`, or `usize::MAX`.
    fn block_adjacency(&self, blocks: &[VertexSet], _owner: &[usize]) -> Vec<u64> {
        let k = blocks.len();
        let stride = crate::set::words_for(k);
        let mut adj = vec![0u64; k * stride];
        for a in 0..k {
            for b in a..k {
                let mut u = blocks[a].clone();
                u.union_with(blocks[b].as_ref());
                if self.is_query(u.as_ref()) {
                    adj[a * stride + (b >> 6)] |= 1 << (b & 63);
                    adj[b * stride + (a >> 6)] |= 1 << (a & 63);
                }
            }
        }
        adj
    }
}

impl EdgeOracle for HiddenGraph {
    fn n(&self) -> usize {
        HiddenGraph::n(self)
    }

    fn is_query(&self, a: SetRef<'_>) -> bool {
        HiddenGraph::is_query(self, a)
    }

    fn block_adjacency(&self, blocks: &[VertexSet], owner: &[usize]) -> Vec<u64> {
        let stride = crate::set::words_for(blocks.len());
        let mut adj = vec![0u64; blocks.len() * stride];
        for e in self.edges() {
            let (a, b) = (owner[e.u()], owner[e.v()]);
            if a != usize::MAX && b != usize::MAX {
                adj[a * stride + (b >> 6)] |= 1 << (b & 63);
                adj[b * stride + (a >> 6)] |= 1 << (a & 63);
            }
        }
        adj
    }
}

/// The only source of answers. Counts every submitted query and enforces
/// round order and an optional round limit.
pub struct OracleSession<'g> {
    graph: &'g dyn EdgeOracle,
    rounds_used: u32,
    queries_used: u64,
    round_limit: Option<u32>,
    closed: bool,
    log: Option<Vec<QueryRecord>>,
}

impl<'g> OracleSession<'g> {
    pub fn new(graph: &'g dyn EdgeOracle) -> Self {
        OracleSession {
            graph,
            rounds_used: 0,
            queries_used: 0,
            round_limit: None,
            closed: false,
            log: None,
        }
    }

    /// Keeps every counted query with its answer, for debugging dumps.
    /// Answers are evaluated eagerly, so this costs a full pass per round.
    pub fn recording(mut self) -> Self {
        self.log = Some(Vec::new());
        self
    }

    /// Counted queries so far, if recording.
    pub fn transcript(&self) -> Option<&[QueryRecord]> {
        self.log.as_deref()
    }

    pub fn with_round_limit(graph: &'g dyn EdgeOracle, limit: u32) -> Self {
        OracleSession {
            round_limit: Some(limit),
            ..Self::new(graph)
        }
    }

    /// Number of vertices; the only graph property an algorithm may see.
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn rounds_used(&self) -> u32 {
        self.rounds_used
    }

    pub fn queries_used(&self) -> u64 {
        self.queries_used
    }

    pub fn round_limit(&self) -> Option<u32> {
        self.round_limit
    }

    pub fn next_round_index(&self) -> u32 {
        self.rounds_used + 1
    }

    pub fn state(&self) -> SessionState {
        if self.closed {
            SessionState::Closed
        } else if self.round_limit.is_some_and(|l| self.rounds_used >= l) {
            SessionState::Sealed
        } else {
            SessionState::Open
        }
    }

    pub fn close(&mut self) {
        self.closed = true;
    }

    fn check_submittable(&self, round_index: u32) -> Result<(), OracleError> {
        match self.state() {
            SessionState::Closed => return Err(OracleError::Closed),
            SessionState::Sealed => {
                return Err(OracleError::RoundLimit {
                    limit: self.round_limit.unwrap_or(0),
                })
            }
            SessionState::Open => {}
        }
        if round_index != self.rounds_used + 1 {
            return Err(OracleError::OutOfOrder {
                expected: self.rounds_used + 1,
                got: round_index,
            });
        }
        Ok(())
    }

    /// Seals `plan` and returns its answers. Answers are evaluated on first
    /// read, but the whole round is counted here.
    pub fn submit_round(&mut self, plan: RoundPlan) -> Result<RoundAnswers<'g>, OracleError> {
        self.check_submittable(plan.round_index)?;
        if plan.universe() != self.graph.n() {
            return Err(OracleError::UniverseMismatch {
                plan: plan.universe(),
                graph: self.graph.n(),
            });
        }
        let first_id = self.queries_used;
        self.rounds_used += 1;
        self.queries_used += plan.len() as u64;
        if let Some(log) = &mut self.log {
            let mut rows = plan.records(first_id);
            for (i, r) in rows.iter_mut().enumerate() {
                r.answer = Some(self.graph.is_query(plan.get(i)));
            }
            log.extend(rows);
        }
        let memo = vec![Cell::new(UNKNOWN); plan.len()];
        Ok(RoundAnswers {
            graph: self.graph,
            plan,
            first_id,
            memo,
        })
    }
}

const UNKNOWN: u8 = 2;

/// Answers to one sealed round. Holds the plan it answers, which can no
/// longer be changed.
pub struct RoundAnswers<'g> {
    graph: &'g dyn EdgeOracle,
    plan: RoundPlan,
    first_id: QueryId,
    memo: Vec<Cell<u8>>,
}

impl RoundAnswers<'_> {
    pub fn plan(&self) -> &RoundPlan {
        &self.plan
    }

    pub fn first_query_id(&self) -> QueryId {
        self.first_id
    }

    pub fn to_vec(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// `(query_id, answer)` pairs in plan order.
    pub fn iter(&self) -> impl Iterator<Item = (QueryId, bool)> + '_ {
        (0..self.len()).map(move |i| (self.first_id + i as u64, self.get(i)))
    }

    pub fn records(&self) -> Vec<QueryRecord> {
        let mut rows = self.plan.records(self.first_id);
        for (i, r) in rows.iter_mut().enumerate() {
            r.answer = Some(self.get(i));
        }
        rows
    }
}

impl Answers for RoundAnswers<'_> {
    fn len(&self) -> usize {
        self.plan.len()
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        let c = &self.memo[i];
        match c.get() {
            UNKNOWN => {
                let a = self.graph.is_query(self.plan.get(i));
                c.set(a as u8);
                a
            }
            v => v == 1,
        }
    }
}

/// Union of the selected blocks: the vertex set a partition-graph query stands for.
pub fn contract_query(
    blocks: &[VertexSet],
    super_set: SetRef<'_>,
) -> Result<VertexSet, ContractError> {
    let n = blocks.first().map_or(0, |b| b.universe());
    let mut out = VertexSet::empty(n);
    for b in super_set.iter() {
        let block = blocks.get(b).ok_or(ContractError::BlockOutOfRange {
            index: b,
            blocks: blocks.len(),
        })?;
        out.union_with(block.as_ref());
    }
    Ok(out)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContractError {
    #[error("block index {index} out of range for {blocks} blocks")]
    BlockOutOfRange { index: usize, blocks: usize },
    #[error("blocks overlap at vertex {0}")]
    Overlap(VertexId),
    #[error("block universe {block} does not match graph size {graph}")]
    Universe { block: usize, graph: usize },
    #[error("plan universe {plan} does not match block count {blocks}")]
    PlanUniverse { plan: usize, blocks: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl<'g> OracleSession<'g> {
    /// Submits a round phrased over super-vertices `0..blocks.len()`.
    ///
    /// Local query `S` stands for the union of the blocks it names. When `S`
    /// names fewer than two blocks it is a partition-graph non-edge, so it is
    /// answered negative here and neither sent nor counted. Every other
    /// query is counted and answered exactly as the union would be.
    pub fn submit_contracted_round(
        &mut self,
        plan: RoundPlan,
        blocks: &[VertexSet],
    ) -> Result<ContractedAnswers<'g>, ContractError> {
        let n = self.graph.n();
        let k = blocks.len();
        if plan.universe() != k {
            return Err(ContractError::PlanUniverse {
                plan: plan.universe(),
                blocks: k,
            });
        }
        let mut owner = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            if b.universe() != n {
                return Err(ContractError::Universe {
                    block: b.universe(),
                    graph: n,
                });
            }
            for v in b.iter() {
                if owner[v] != usize::MAX {
                    return Err(ContractError::Overlap(v));
                }
                owner[v] = i;
            }
        }
        let sizes: Vec<u32> = plan.sets().iter().map(|q| q.len() as u32).collect();
        let counted = sizes.iter().filter(|&&s| s >= 2).count() as u64;
        let first_id = self.queries_used;
        self.check_submittable(plan.round_index)?;
        self.rounds_used += 1;
        self.queries_used += counted;

        let stride = crate::set::words_for(k);
        let adj = self.graph.block_adjacency(blocks, &owner);
        let memo = vec![Cell::new(UNKNOWN); plan.len()];
        let answers = ContractedAnswers {
            plan,
            blocks: blocks.to_vec(),
            adj,
            stride,
            sizes,
            first_id,
            memo,
            _graph: std::marker::PhantomData,
        };
        if let Some(log) = &mut self.log {
            log.extend(answers.records());
        }
        Ok(answers)
    }
}

/// Answers to a contracted round. Query ids number only the counted queries.
pub struct ContractedAnswers<'g> {
    plan: RoundPlan,
    blocks: Vec<VertexSet>,
    adj: Vec<u64>,
    stride: usize,
    sizes: Vec<u32>,
    first_id: QueryId,
    memo: Vec<Cell<u8>>,
    _graph: std::marker::PhantomData<&'g ()>,
}

impl ContractedAnswers<'_> {
    pub fn plan(&self) -> &RoundPlan {
        &self.plan
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    /// Whether local query `i` reached the oracle.
    pub fn was_sent(&self, i: usize) -> bool {
        self.sizes[i] >= 2
    }

    /// Rows for the sent queries, members given as original vertices.
    pub fn records(&self) -> Vec<QueryRecord> {
        let mut id = self.first_id;
        let mut rows = Vec::new();
        for i in 0..self.plan.len() {
            if !self.was_sent(i) {
                continue;
            }
            let union = contract_query(&self.blocks, self.plan.get(i)).expect("validated blocks");
            rows.push(QueryRecord {
                query_id: id,
                members: union.iter().collect(),
                tag: self.plan.tag_string(i),
                answer: Some(self.get(i)),
            });
            id += 1;
        }
        rows
    }
}

impl Answers for ContractedAnswers<'_> {
    fn len(&self) -> usize {
        self.plan.len()
    }

    fn get(&self, i: usize) -> bool {
        if self.sizes[i] < 2 {
            return false;
        }
        let c = &self.memo[i];
        match c.get() {
            UNKNOWN => {
                let q = self.plan.get(i);
                let qw = q.words();
                let a = q.iter().any(|b| {
                    self.adj[b * self.stride..(b + 1) * self.stride]
                        .iter()
                        .zip(qw)
                        .any(|(x, y)| x & y != 0)
                });
                c.set(a as u8);
                a
            }
            v => v == 1,
        }
    }
}

/// Decoding side of a single-round algorithm: knows how its round was laid out.
pub trait Layout {
    fn decode<A: Answers + ?Sized>(&self, round: &RoundPlan, answers: &A) -> FindOutcome;
}

/// A built single-round algorithm: its layout plus the round to submit.
#[derive(Clone, Debug, PartialEq)]
pub struct Planned<L> {
    pub layout: L,
    pub round: RoundPlan,
}

impl<L: Layout> Planned<L> {
    pub fn len(&self) -> usize {
        self.round.len()
    }

    pub fn is_empty(&self) -> bool {
        self.round.is_empty()
    }

    pub fn decode<A: Answers + ?Sized>(&self, answers: &A) -> Result<FindOutcome, DecodeError> {
        check_len(self.round.len(), answers.len())?;
        Ok(self.layout.decode(&self.round, answers))
    }

    /// Submits the round as the session's next one and decodes the answers.
    pub fn run(self, session: &mut OracleSession<'_>) -> Result<FindOutcome, OracleError> {
        let round = self.round.with_round_index(session.next_round_index());
        let answers = session.submit_round(round)?;
        Ok(self.layout.decode(answers.plan(), &answers))
    }
}
