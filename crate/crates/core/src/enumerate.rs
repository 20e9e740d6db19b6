//! Isomorph-free enumeration of connected simple graphs by edge count.
//!
//! Level `k` holds one canonical representative per isomorphism class of
//! connected graphs with `k` edges. Level `k + 1` is produced by adding an
//! edge between two non-adjacent vertices or hanging a new pendant vertex
//! off an existing one, then deduplicating on the canonical code. Every
//! connected graph with `k + 1` edges is reached: removing a cycle edge
//! leaves it connected, and a tree always has a pendant edge.

use crate::exec::Exec;
use crate::graphs::{canonical_form, CanonicalCode, ClassKey, Graph, MAX_VERTICES};
use std::collections::BTreeMap;
use thiserror::Error;

pub const DEFAULT_MAX_EDGES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("edge count {requested} exceeds the configured maximum {max}")]
    LimitExceeded { requested: usize, max: usize },
    #[error("edge count must be at least 1")]
    ZeroEdges,
}

#[derive(Debug, Clone)]
pub struct EnumeratedGraph {
    pub code: CanonicalCode,
    pub graph: Graph,
    pub class: ClassKey,
}

/// All connected graphs with `g` edges, sorted by `(p, code)`.
#[derive(Debug, Clone)]
pub struct EnumerationRun {
    pub g: usize,
    pub graphs: Vec<EnumeratedGraph>,
}

impl EnumerationRun {
    pub fn counts_by_class(&self) -> BTreeMap<ClassKey, usize> {
        let mut out = BTreeMap::new();
        for e in &self.graphs {
            *out.entry(e.class).or_insert(0) += 1;
        }
        out
    }

    pub fn in_class(&self, class: ClassKey) -> impl Iterator<Item = &EnumeratedGraph> {
        self.graphs.iter().filter(move |e| e.class == class)
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }
}

pub fn enumerate_connected(g: usize, exec: &Exec) -> Result<EnumerationRun, EnumerateError> {
    enumerate_connected_with_limit(g, DEFAULT_MAX_EDGES, exec)
}

pub fn enumerate_connected_with_limit(
    g: usize,
    max_edges: usize,
    exec: &Exec,
) -> Result<EnumerationRun, EnumerateError> {
    if g == 0 {
        return Err(EnumerateError::ZeroEdges);
    }
    if g > max_edges || g >= MAX_VERTICES {
        return Err(EnumerateError::LimitExceeded {
            requested: g,
            max: max_edges.min(MAX_VERTICES - 1),
        });
    }
    let k2 = Graph::new(2, &[(0, 1)]).expect("K2");
    let mut level: BTreeMap<CanonicalCode, Graph> = BTreeMap::new();
    let (code, canon) = canonical_form(&k2);
    level.insert(code, canon);
    for _ in 1..g {
        let parents: Vec<Graph> = level.into_values().collect();
        let children = exec.map(&parents, extensions);
        level = BTreeMap::new();
        for batch in children {
            for (code, graph) in batch {
                level.entry(code).or_insert(graph);
            }
        }
    }
    let graphs = level
        .into_iter()
        .map(|(code, graph)| EnumeratedGraph {
            class: graph.class_key(),
            code,
            graph,
        })
        .collect();
    Ok(EnumerationRun { g, graphs })
}

/// Class sizes for `g` edges.
pub fn count_by_class(g: usize, exec: &Exec) -> Result<BTreeMap<ClassKey, usize>, EnumerateError> {
    Ok(enumerate_connected(g, exec)?.counts_by_class())
}

/// Canonical forms of all one-edge extensions of `graph`, deduplicated.
fn extensions(graph: &Graph) -> Vec<(CanonicalCode, Graph)> {
    let adj = graph.adjacency_masks();
    let p = adj.len();
    let mut out: BTreeMap<CanonicalCode, Graph> = BTreeMap::new();
    let mut push = |masks: Vec<u64>| {
        let (code, canon) = canonical_form(&Graph::from_adjacency(masks));
        out.entry(code).or_insert(canon);
    };
    for u in 0..p {
        for v in u + 1..p {
            if adj[u] >> v & 1 == 0 {
                let mut masks = adj.to_vec();
                masks[u] |= 1 << v;
                masks[v] |= 1 << u;
                push(masks);
            }
        }
    }
    if p < MAX_VERTICES {
        for u in 0..p {
            let mut masks = adj.to_vec();
            masks[u] |= 1 << p;
            masks.push(1 << u);
            push(masks);
        }
    }
    out.into_iter().collect()
}
