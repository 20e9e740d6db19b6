//! Simple connected graphs, their pendant structure and the `(g, Δ)` class key.
//!
//! Vertices are dense labels `0..p`. Adjacency is stored as one `u64` bitset
//! per vertex, so a [`Graph`] holds at most 64 vertices; every graph the
//! enumerator produces is far below that.

mod canon;
mod dot;
mod graph6;

pub use canon::{canonical_code, canonical_form, canonical_labeling, CanonicalCode};
pub use dot::to_dot;
pub use graph6::{parse_graph6, to_graph6, Graph6Error};

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} is not reachable from vertex 0")]
    Disconnected(usize),
    #[error("edge {0}-{1} references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
}

/// A validated simple connected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

/// The pair `(g, g - p + r)` that partitions candidate cospectral graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassKey {
    pub g: usize,
    pub delta: usize,
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.g, self.delta)
    }
}

impl Graph {
    /// Validates raw vertex/edge data. Edges are normalized to `(min, max)`
    /// and sorted.
    pub fn new(p: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let g = Self::from_edges_unchecked_connectivity(p, edges)?;
        if let Some(v) = g.first_unreachable() {
            return Err(GraphError::Disconnected(v));
        }
        Ok(g)
    }

    /// Same checks as [`Graph::new`] except connectivity. Used for the
    /// intermediate (possibly disconnected) graphs of edge augmentation.
    pub(crate) fn from_edges_unchecked_connectivity(
        p: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        if p < 2 {
            return Err(GraphError::TooFewVertices(p));
        }
        if p > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(p));
        }
        let mut adj = vec![0u64; p];
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= p || v >= p {
                return Err(GraphError::VertexOutOfRange(u, v, p));
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            if adj[u] >> v & 1 == 1 {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        Ok(Graph { adj, edges: norm })
    }

    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        let mut edges = Vec::new();
        for (u, &row) in adj.iter().enumerate() {
            let mut rest = row >> (u + 1);
            let mut v = u + 1;
            while rest != 0 {
                if rest & 1 == 1 {
                    edges.push((u, v));
                }
                rest >>= 1;
                v += 1;
            }
        }
        Graph { adj, edges }
    }

    fn first_unreachable(&self) -> Option<usize> {
        let all = full_mask(self.p());
        let seen = reach(&self.adj, 1);
        if seen == all {
            None
        } else {
            Some((!seen & all).trailing_zeros() as usize)
        }
    }

    pub fn is_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    /// Vertex count `p`.
    pub fn p(&self) -> usize {
        self.adj.len()
    }

    /// Edge count `g`.
    pub fn g(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.p()).map(|v| self.degree(v)).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    pub(crate) fn adjacency_masks(&self) -> &[u64] {
        &self.adj
    }

    /// Degree-1 vertices, ascending. These carry the Dirichlet condition.
    pub fn pendant_vertices(&self) -> Vec<usize> {
        (0..self.p()).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn is_pendant(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    /// Non-pendant vertices, ascending.
    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.p()).filter(|&v| self.degree(v) != 1).collect()
    }

    pub fn class_key(&self) -> ClassKey {
        let r = self.pendant_vertices().len();
        ClassKey {
            g: self.g(),
            delta: self.g() + r - self.p(),
        }
    }

    pub fn is_tree(&self) -> bool {
        self.g() + 1 == self.p()
    }

    /// Applies `perm` so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.p(), "permutation length");
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges_unchecked_connectivity(self.p(), &edges)
            .expect("relabeling preserves simplicity")
    }

    /// Number of connected components, counting isolated vertices.
    #[cfg(test)]
    pub(crate) fn component_count(&self) -> usize {
        let mut left = full_mask(self.p());
        let mut count = 0;
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            left &= !reach(&self.adj, 1 << start);
            count += 1;
        }
        count
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(p={}, edges=[", self.p())?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}{v}")?;
        }
        write!(f, "])")
    }
}

pub(crate) fn full_mask(p: usize) -> u64 {
    if p == 64 {
        u64::MAX
    } else {
        (1u64 << p) - 1
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

fn reach(adj: &[u64], start: u64) -> u64 {
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

/// Small named graphs used throughout tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(p: usize) -> Graph {
        let edges: Vec<_> = (1..p).map(|v| (v - 1, v)).collect();
        Graph::new(p, &edges).expect("path")
    }

    pub fn cycle(p: usize) -> Graph {
        let mut edges: Vec<_> = (1..p).map(|v| (v - 1, v)).collect();
        edges.push((p - 1, 0));
        Graph::new(p, &edges).expect("cycle")
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::new(leaves + 1, &edges).expect("star")
    }

    pub fn complete(p: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..p {
            for v in u + 1..p {
                edges.push((u, v));
            }
        }
        Graph::new(p, &edges).expect("complete")
    }

    /// Triangle 0-1-2 with a pendant edge 0-3.
    pub fn paw() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).expect("paw")
    }

    /// Spider with legs of the given lengths joined at vertex 0.
    pub fn spider(legs: &[usize]) -> Graph {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::new(next, &edges).expect("spider")
    }
}
