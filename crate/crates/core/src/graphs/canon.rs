//! Canonical labeling by partition refinement and exhaustive search over the
//! individualization tree.
//!
//! The ordered partition is refined until equitable: every cell is split by
//! the vector of neighbour counts into the current cells, and sub-cells are
//! ordered by that vector. Because the ordering depends only on counts, the
//! refinement commutes with relabeling. When refinement stalls, each vertex
//! of the first non-trivial cell is individualized in turn. Every leaf gives
//! a vertex order; the canonical form is the order whose upper-triangle
//! adjacency string is lexicographically largest.
//!
//! Subtrees related by a known automorphism that fixes the individualized
//! prefix produce the same set of leaf strings and are skipped. Known
//! automorphisms are seeded with twin transpositions and extended whenever
//! two leaves produce equal strings.

use super::{to_graph6, Graph};
use std::fmt;

const MAX_STORED_AUTOMORPHISMS: usize = 128;

/// Canonical form of a graph. The bytes are the graph6 encoding of the
/// canonically relabeled graph, so equal codes mean isomorphic graphs and
/// byte order sorts first by vertex count.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.0)
    }
}

pub fn canonical_code(graph: &Graph) -> CanonicalCode {
    canonical_form(graph).0
}

/// The canonical code together with the canonically relabeled graph.
pub fn canonical_form(graph: &Graph) -> (CanonicalCode, Graph) {
    let canon = graph.relabel(&canonical_labeling(graph));
    (CanonicalCode(to_graph6(&canon)), canon)
}

/// Returns `perm` with `perm[v]` the canonical position of vertex `v`.
pub fn canonical_labeling(graph: &Graph) -> Vec<usize> {
    let adj = graph.adjacency_masks();
    let p = adj.len();
    let mut search = Search {
        adj,
        best: None,
        automorphisms: twin_transpositions(adj),
    };
    let mut cells = vec![(0..p).collect::<Vec<_>>()];
    refine(adj, &mut cells);
    search.descend(cells, &mut Vec::new());
    let (_, order) = search.best.expect("search reaches at least one leaf");
    let mut perm = vec![0; p];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    perm
}

/// Splits cells until every vertex in a cell has the same number of
/// neighbours in every cell.
fn refine(adj: &[u64], cells: &mut Vec<Vec<usize>>) {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = masks.iter().map(|m| (adj[v] & m).count_ones() as u8).collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let changed = next.len() > cells.len();
        *cells = next;
        if !changed {
            return;
        }
    }
}

fn twin_transpositions(adj: &[u64]) -> Vec<Vec<usize>> {
    let p = adj.len();
    let mut out = Vec::new();
    for u in 0..p {
        for v in u + 1..p {
            let strip = !(1u64 << u | 1u64 << v);
            if adj[u] & strip == adj[v] & strip {
                let mut perm: Vec<usize> = (0..p).collect();
                perm.swap(u, v);
                out.push(perm);
                if out.len() >= MAX_STORED_AUTOMORPHISMS / 2 {
                    return out;
                }
            }
        }
    }
    out
}

fn leaf_string(adj: &[u64], order: &[usize]) -> Vec<u64> {
    let p = order.len();
    let nbits = p * p.saturating_sub(1) / 2;
    let mut words = vec![0u64; nbits.div_ceil(64).max(1)];
    let mut k = 0;
    for j in 1..p {
        let row = adj[order[j]];
        for &oi in &order[..j] {
            if row >> oi & 1 == 1 {
                words[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    words
}

struct Search<'a> {
    adj: &'a [u64],
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>, path: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            self.visit_leaf(order);
            return;
        };
        let candidates = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !explored.is_empty() && self.same_orbit_as_any(v, &explored, path) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(candidates.iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.adj, &mut child);
            path.push(v);
            self.descend(child, path);
            path.pop();
        }
    }

    fn visit_leaf(&mut self, order: Vec<usize>) {
        let code = leaf_string(self.adj, &order);
        match &self.best {
            None => self.best = Some((code, order)),
            Some((best, best_order)) => match code.cmp(best) {
                std::cmp::Ordering::Greater => self.best = Some((code, order)),
                std::cmp::Ordering::Equal => {
                    if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS {
                        let mut gamma = vec![0; order.len()];
                        for (a, b) in best_order.iter().zip(&order) {
                            gamma[*a] = *b;
                        }
                        self.automorphisms.push(gamma);
                    }
                }
                std::cmp::Ordering::Less => {}
            },
        }
    }

    /// Whether `v` shares an orbit with an explored vertex under the group
    /// generated by known automorphisms that fix `path` pointwise.
    fn same_orbit_as_any(&self, v: usize, explored: &[usize], path: &[usize]) -> bool {
        let p = self.adj.len();
        let mut parent: Vec<usize> = (0..p).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if path.iter().any(|&w| gamma[w] != w) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }
}

/// Adjacency masks relabeled by `perm`, used by the brute-force checks.
#[cfg(test)]
pub(crate) fn permuted_masks(adj: &[u64], perm: &[usize]) -> Vec<u64> {
    let mut out = vec![0u64; adj.len()];
    for (u, &row) in adj.iter().enumerate() {
        for v in super::bits(row) {
            out[perm[u]] |= 1 << perm[v];
        }
    }
    out
}
