// SPDX-License-Identifier: Apache-2.0
//! Hidden graphs and the independent-set query.

use crate::set::{words_for, SetRef, VertexSet};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::{BufRead, Write};
use thiserror::Error;

pub type VertexId = usize;

/// An undirected edge, always stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    /// Panics on a self-loop.
    pub fn new(a: VertexId, b: VertexId) -> Self {
        assert_ne!(a, b, "self-loop {a}");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn u(&self) -> VertexId {
        self.u
    }

    pub fn v(&self) -> VertexId {
        self.v
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}")]
    Duplicate(Edge),
    #[error("endpoint {0} out of range for n = {1}")]
    OutOfRange(VertexId, usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header declares {declared} edges but {found} were read")]
    EdgeCount { declared: usize, found: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

impl GraphError {
    fn io(e: std::io::Error) -> Self {
        GraphError::Io(e.to_string())
    }
}

/// Simple undirected graph with an edge list and adjacency bitsets.
#[derive(Clone, PartialEq, Eq)]
pub struct HiddenGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<u64>,
}

impl HiddenGraph {
    pub fn empty(n: usize) -> Self {
        HiddenGraph {
            n,
            edges: Vec::new(),
            adj: vec![0; n * words_for(n)],
        }
    }

    /// Rejects self-loops, duplicates and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Self::empty(n);
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        g.edges.sort_unstable();
        Ok(g)
    }

    fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<(), GraphError> {
        if a >= self.n || b >= self.n {
            return Err(GraphError::OutOfRange(a.max(b), self.n));
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        let e = Edge::new(a, b);
        if self.has_edge(a, b) {
            return Err(GraphError::Duplicate(e));
        }
        let stride = words_for(self.n);
        self.adj[a * stride + (b >> 6)] |= 1 << (b & 63);
        self.adj[b * stride + (a >> 6)] |= 1 << (a & 63);
        self.edges.push(e);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a < self.n && b < self.n && self.neighbors(a).contains(b)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    pub fn neighbors(&self, v: VertexId) -> SetRef<'_> {
        let stride = words_for(self.n);
        SetRef::new(self.n, &self.adj[v * stride..(v + 1) * stride])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    /// True iff `a` contains both endpoints of some edge.
    ///
    /// Picks whichever is cheaper: scanning the edge list, or intersecting the
    /// adjacency rows of the members with `a`.
    pub fn is_query(&self, a: SetRef<'_>) -> bool {
        debug_assert_eq!(a.universe(), self.n);
        if self.edges.is_empty() {
            return false;
        }
        let stride = words_for(self.n);
        let k = a.len();
        if k < 2 {
            return false;
        }
        if self.edges.len() <= k * stride {
            self.edges
                .iter()
                .any(|e| a.contains(e.u) && a.contains(e.v))
        } else {
            let aw = a.words();
            a.iter().any(|v| {
                self.adj[v * stride..(v + 1) * stride]
                    .iter()
                    .zip(aw)
                    .any(|(x, y)| x & y != 0)
            })
        }
    }

    /// Edges with both endpoints in `a`.
    pub fn edges_within<'s>(&'s self, a: SetRef<'s>) -> impl Iterator<Item = Edge> + 's {
        self.edges
            .iter()
            .copied()
            .filter(move |e| a.contains(e.u) && a.contains(e.v))
    }

    /// Reads the text interchange format: `n m`, then `m` lines `u v`.
    pub fn read_text<R: BufRead>(r: R) -> Result<Self, GraphError> {
        let mut lines = r
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
        let (line, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let header = header.map_err(GraphError::io)?;
        let [n, m] = parse_pair(&header, line)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let l = l.map_err(GraphError::io)?;
            let [u, v] = parse_pair(&l, line)?;
            if u >= v {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("expected u < v, got {u} {v}"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::EdgeCount {
                declared: m,
                found: edges.len(),
            });
        }
        Self::from_edges(n, edges)
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.n, self.m())?;
        for e in &self.edges {
            writeln!(w, "{} {}", e.u, e.v)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        self.write_text(&mut out).expect("writing to a Vec cannot fail");
        String::from_utf8(out).expect("ascii")
    }
}

impl fmt::Debug for HiddenGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HiddenGraph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

fn parse_pair(s: &str, line: usize) -> Result<[usize; 2], GraphError> {
    let mut it = s.split_whitespace().map(|t| t.parse::<usize>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok([a, b]),
        _ => Err(GraphError::Parse {
            line,
            msg: format!("expected two non-negative integers, got {s:?}"),
        }),
    }
}

/// Convenience for building a set from a member list.
pub fn set_of(n: usize, members: &[VertexId]) -> VertexSet {
    VertexSet::from_members(n, members.iter().copied())
}
