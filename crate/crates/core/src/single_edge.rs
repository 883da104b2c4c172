// SPDX-License-Identifier: Apache-2.0
//! Finding the unique edge inside a set `S`.
//!
//! Three query schemes, each usable standalone or embedded as a block of a
//! larger round plan:
//!
//! * randomized: `Q(S)` plus `⌈24 ln |S|⌉` halves sampled from `T_{1/2}(S)`;
//! * explicit: `Q(S)` plus bit tests on GF(2^k) labels and on their inverses;
//! * known endpoint: bit tests on the rank of the unknown endpoint, each
//!   query also containing the known endpoint `v`.

use crate::gf2k::{degree_for, FieldElement};
use crate::graph::{Edge, VertexId};
use crate::oracle::{check_len, Answers, DecodeError, FindOutcome, QueryTag, RoundPlan};
use crate::set::VertexSet;
use rand::RngCore;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Randomized,
    Explicit,
    KnownEndpoint(VertexId),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SingleEdgeError {
    #[error("target has {got} vertices, need at least {need}")]
    TooSmall { need: usize, got: usize },
    #[error("known endpoint {0} lies inside the target")]
    EndpointInTarget(VertexId),
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

/// A single-edge sub-plan occupying queries `start..start + len` of some round plan.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleEdgeBlock {
    pub target: VertexSet,
    pub scheme: Scheme,
    pub start: usize,
    pub len: usize,
}

/// `⌈24 ln s⌉ + 1`.
pub fn randomized_query_count(s: usize) -> usize {
    (24.0 * (s as f64).ln()).ceil() as usize + 1
}

/// `4k + 1` with `k = ⌈log2(s + 1)⌉`.
pub fn explicit_query_count(s: usize) -> usize {
    4 * degree_for(s) as usize + 1
}

/// `2⌈log2 s⌉`, or a single pair query when `s = 1`.
pub fn known_endpoint_query_count(s: usize) -> usize {
    match s {
        0 => 0,
        1 => 1,
        _ => 2 * ceil_log2(s),
    }
}

pub(crate) fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// Appends a randomized block for `s` to `plan`.
pub fn emit_randomized<R: RngCore + ?Sized>(
    plan: &mut RoundPlan,
    s: &VertexSet,
    tag: QueryTag,
    rng: &mut R,
) -> Result<SingleEdgeBlock, SingleEdgeError> {
    let size = s.len();
    if size < 2 {
        return Err(SingleEdgeError::TooSmall { need: 2, got: size });
    }
    let t = randomized_query_count(size) - 1;
    let start = plan.len();
    plan.begin(tag);
    plan.push(s.as_ref());
    let sw = s.words();
    let stride = sw.len();
    let words = plan.push_empty_n(t);
    for q in words.chunks_exact_mut(stride) {
        for (o, &m) in q.iter_mut().zip(sw) {
            // Only draw randomness for words that intersect S.
            if m != 0 {
                *o = rng.next_u64() & m;
            }
        }
    }
    Ok(SingleEdgeBlock {
        target: s.clone(),
        scheme: Scheme::Randomized,
        start,
        len: t + 1,
    })
}

/// Labels `1..=|s|` in member order, as elements of GF(2^k).
pub fn explicit_labels(s: &VertexSet) -> Vec<(VertexId, FieldElement)> {
    let k = degree_for(s.len());
    s.iter()
        .enumerate()
        .map(|(r, v)| (v, FieldElement::new(k, r as u64 + 1).expect("label fits")))
        .collect()
}

/// Appends an explicit block for `s` to `plan`. Query order: `Q(s)`, then
/// `F_i^b` at `1 + 2i + b`, then `H_i^b` at `1 + 2k + 2i + b`.
pub fn emit_explicit(
    plan: &mut RoundPlan,
    s: &VertexSet,
    tag: QueryTag,
) -> Result<SingleEdgeBlock, SingleEdgeError> {
    let size = s.len();
    if size < 2 {
        return Err(SingleEdgeError::TooSmall { need: 2, got: size });
    }
    let k = degree_for(size) as usize;
    let start = plan.len();
    plan.begin(tag);
    plan.push(s.as_ref());
    let stride = s.words().len();
    let words = plan.push_empty_n(4 * k);
    for (v, label) in explicit_labels(s) {
        let x = label.bits();
        let y = label.inv().expect("labels are nonzero").bits();
        for i in 0..k {
            let f = 2 * i + (x >> i & 1) as usize;
            let h = 2 * k + 2 * i + (y >> i & 1) as usize;
            words[f * stride + (v >> 6)] |= 1 << (v & 63);
            words[h * stride + (v >> 6)] |= 1 << (v & 63);
        }
    }
    Ok(SingleEdgeBlock {
        target: s.clone(),
        scheme: Scheme::Explicit,
        start,
        len: 4 * k + 1,
    })
}

/// Appends a known-endpoint block. Query `2i + b` holds `v` and the members of
/// `s` whose rank has bit `i` equal to `b`.
pub fn emit_known_endpoint(
    plan: &mut RoundPlan,
    s: &VertexSet,
    v: VertexId,
    tag: QueryTag,
) -> Result<SingleEdgeBlock, SingleEdgeError> {
    let size = s.len();
    if size < 1 {
        return Err(SingleEdgeError::TooSmall { need: 1, got: 0 });
    }
    if s.contains(v) {
        return Err(SingleEdgeError::EndpointInTarget(v));
    }
    let start = plan.len();
    let len = known_endpoint_query_count(size);
    plan.begin(tag);
    let stride = s.words().len();
    let words = plan.push_empty_n(len);
    for q in words.chunks_exact_mut(stride) {
        q[v >> 6] |= 1 << (v & 63);
    }
    if size == 1 {
        let u = s.iter().next().expect("nonempty");
        words[u >> 6] |= 1 << (u & 63);
    } else {
        let bits = len / 2;
        for (r, u) in s.iter().enumerate() {
            for i in 0..bits {
                let q = 2 * i + (r >> i & 1);
                words[q * stride + (u >> 6)] |= 1 << (u & 63);
            }
        }
    }
    Ok(SingleEdgeBlock {
        target: s.clone(),
        scheme: Scheme::KnownEndpoint(v),
        start,
        len,
    })
}

/// Decodes a block against answers for the whole plan it lives in.
pub fn decode_block<A: Answers + ?Sized>(
    block: &SingleEdgeBlock,
    plan: &RoundPlan,
    answers: &A,
) -> FindOutcome {
    if block.len == 0 {
        return FindOutcome::NoEdgeFound;
    }
    match block.scheme {
        Scheme::Randomized => decode_randomized_block(block, plan, answers),
        Scheme::Explicit => decode_explicit_block(block, answers),
        Scheme::KnownEndpoint(v) => decode_known_endpoint_block(block, v, answers),
    }
}

fn decode_randomized_block<A: Answers + ?Sized>(
    block: &SingleEdgeBlock,
    plan: &RoundPlan,
    answers: &A,
) -> FindOutcome {
    let start = block.start;
    if !answers.get(start) {
        return FindOutcome::NoEdgeFound;
    }
    let mut inter = block.target.clone();
    let mut negatives = Vec::new();
    for j in start + 1..start + block.len {
        if answers.get(j) {
            inter.intersect_with(plan.get(j));
        } else {
            negatives.push(j);
        }
    }
    if inter.len() < 2 {
        return FindOutcome::MoreThanOne;
    }
    // A pair {a, b} ⊆ inter survives iff no negative sample holds both.
    let mut found: Option<Edge> = None;
    let mut forbidden = VertexSet::empty(inter.universe());
    for a in inter.iter() {
        forbidden.clear();
        for &j in &negatives {
            let q = plan.get(j);
            if q.contains(a) {
                forbidden.union_with(q);
            }
        }
        for b in inter.iter().filter(|&b| b > a) {
            if forbidden.contains(b) {
                continue;
            }
            if found.is_some() {
                return FindOutcome::Undetermined;
            }
            found = Some(Edge::new(a, b));
        }
    }
    match found {
        Some(e) => FindOutcome::FoundEdge(e),
        None => FindOutcome::MoreThanOne,
    }
}

/// Reads bit pairs `(p0, p1)` at `base + 2i + b` into a value; `None` if some
/// pair is both positive.
fn xor_bits<A: Answers + ?Sized>(answers: &A, base: usize, k: usize) -> Option<u64> {
    let mut x = 0u64;
    for i in 0..k {
        match (answers.get(base + 2 * i), answers.get(base + 2 * i + 1)) {
            (true, true) => return None,
            (false, false) => x |= 1 << i,
            _ => {}
        }
    }
    Some(x)
}

fn decode_explicit_block<A: Answers + ?Sized>(block: &SingleEdgeBlock, answers: &A) -> FindOutcome {
    let start = block.start;
    if !answers.get(start) {
        return FindOutcome::NoEdgeFound;
    }
    let size = block.target.len();
    let k = degree_for(size);
    let ku = k as usize;
    let (Some(a), Some(b)) = (
        xor_bits(answers, start + 1, ku),
        xor_bits(answers, start + 1 + 2 * ku, ku),
    ) else {
        return FindOutcome::MoreThanOne;
    };
    if a == 0 || b == 0 {
        return FindOutcome::MoreThanOne;
    }
    let fe = |x: u64| FieldElement::new(k, x).expect("in range");
    let (a, b) = (fe(a), fe(b));
    let uv = a.mul(b.inv().expect("nonzero")).expect("same degree");
    let mut pair = None;
    for x in 1..=size as u64 {
        let y = x ^ a.bits() as u64;
        if y <= x || y > size as u64 {
            continue;
        }
        if fe(x).mul(fe(y)).expect("same degree") == uv {
            pair = Some((x, y));
            break;
        }
    }
    let Some((x, y)) = pair else {
        return FindOutcome::MoreThanOne;
    };
    // Every answer must match what the single edge {x, y} would produce.
    let (xi, yi) = (
        fe(x).inv().expect("nonzero").bits() as u64,
        fe(y).inv().expect("nonzero").bits() as u64,
    );
    for i in 0..ku {
        for bit in 0..2u64 {
            let f = (x >> i & 1) == bit && (y >> i & 1) == bit;
            let h = (xi >> i & 1) == bit && (yi >> i & 1) == bit;
            let off = 2 * i + bit as usize;
            if answers.get(start + 1 + off) != f || answers.get(start + 1 + 2 * ku + off) != h {
                return FindOutcome::MoreThanOne;
            }
        }
    }
    let u = block.target.select(x as usize - 1).expect("label in range");
    let v = block.target.select(y as usize - 1).expect("label in range");
    FindOutcome::FoundEdge(Edge::new(u, v))
}

fn decode_known_endpoint_block<A: Answers + ?Sized>(
    block: &SingleEdgeBlock,
    v: VertexId,
    answers: &A,
) -> FindOutcome {
    let start = block.start;
    let size = block.target.len();
    if size == 1 {
        return if answers.get(start) {
            let u = block.target.iter().next().expect("nonempty");
            FindOutcome::FoundEdge(Edge::new(v, u))
        } else {
            FindOutcome::NoEdgeFound
        };
    }
    let bits = block.len / 2;
    let mut any = false;
    let mut neither = false;
    let mut index = 0usize;
    for i in 0..bits {
        match (answers.get(start + 2 * i), answers.get(start + 2 * i + 1)) {
            (true, true) => return FindOutcome::MoreThanOne,
            (false, false) => neither = true,
            (false, true) => {
                any = true;
                index |= 1 << i;
            }
            (true, false) => any = true,
        }
    }
    if !any {
        return FindOutcome::NoEdgeFound;
    }
    if neither {
        return FindOutcome::MoreThanOne;
    }
    match block.target.select(index) {
        Some(u) => FindOutcome::FoundEdge(Edge::new(v, u)),
        None => FindOutcome::MoreThanOne,
    }
}

impl crate::oracle::Layout for SingleEdgeBlock {
    fn decode<A: Answers + ?Sized>(&self, round: &RoundPlan, answers: &A) -> FindOutcome {
        decode_block(self, round, answers)
    }
}

/// A standalone single-edge plan: one block filling a whole round.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleEdgePlan {
    block: SingleEdgeBlock,
    plan: RoundPlan,
}

impl SingleEdgePlan {
    pub fn block(&self) -> &SingleEdgeBlock {
        &self.block
    }

    pub fn target(&self) -> &VertexSet {
        &self.block.target
    }

    pub fn scheme(&self) -> Scheme {
        self.block.scheme
    }

    pub fn round_plan(&self) -> &RoundPlan {
        &self.plan
    }

    pub fn into_round_plan(self) -> RoundPlan {
        self.plan
    }

    pub fn len(&self) -> usize {
        self.plan.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plan.is_empty()
    }

    /// Vertex labels, for the explicit scheme only.
    pub fn label_map(&self) -> Option<Vec<(VertexId, FieldElement)>> {
        (self.block.scheme == Scheme::Explicit).then(|| explicit_labels(&self.block.target))
    }

    pub fn decode<A: Answers + ?Sized>(&self, answers: &A) -> Result<FindOutcome, DecodeError> {
        check_len(self.plan.len(), answers.len())?;
        Ok(decode_block(&self.block, &self.plan, answers))
    }
}

pub fn build_randomized<R: RngCore + ?Sized>(
    s: &VertexSet,
    rng: &mut R,
) -> Result<SingleEdgePlan, SingleEdgeError> {
    let mut plan = RoundPlan::new(s.universe());
    let block = emit_randomized(&mut plan, s, QueryTag::new("single_edge_rand"), rng)?;
    Ok(SingleEdgePlan { block, plan })
}

pub fn build_explicit(s: &VertexSet) -> Result<SingleEdgePlan, SingleEdgeError> {
    let mut plan = RoundPlan::new(s.universe());
    let block = emit_explicit(&mut plan, s, QueryTag::new("single_edge"))?;
    Ok(SingleEdgePlan { block, plan })
}

pub fn build_known_endpoint(s: &VertexSet, v: VertexId) -> Result<SingleEdgePlan, SingleEdgeError> {
    let mut plan = RoundPlan::new(s.universe());
    let tag = QueryTag::new("single_edge_known").with("v", v as f64);
    let block = emit_known_endpoint(&mut plan, s, v, tag)?;
    Ok(SingleEdgePlan { block, plan })
}

pub fn decode_randomized<A: Answers + ?Sized>(
    plan: &SingleEdgePlan,
    answers: &A,
) -> Result<FindOutcome, DecodeError> {
    debug_assert_eq!(plan.scheme(), Scheme::Randomized);
    plan.decode(answers)
}

pub fn decode_explicit<A: Answers + ?Sized>(
    plan: &SingleEdgePlan,
    answers: &A,
) -> Result<FindOutcome, DecodeError> {
    debug_assert_eq!(plan.scheme(), Scheme::Explicit);
    plan.decode(answers)
}

pub fn decode_known_endpoint<A: Answers + ?Sized>(
    plan: &SingleEdgePlan,
    answers: &A,
) -> Result<FindOutcome, DecodeError> {
    debug_assert!(matches!(plan.scheme(), Scheme::KnownEndpoint(_)));
    plan.decode(answers)
}
