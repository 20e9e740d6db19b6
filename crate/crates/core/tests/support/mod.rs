//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use qgraph_cospec::graphs::{canonical_code, ClassKey, Graph};
use std::collections::{BTreeMap, BTreeSet};

/// Vertex pairs `(u, v)`, `u < v`, in a fixed order.
pub fn pair_list(p: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 1..p {
        for u in 0..v {
            out.push((u, v));
        }
    }
    out
}

fn connected(p: usize, adj: &[u64]) -> bool {
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == (1u64 << p) - 1
}

/// Calls `f` with the edge list of every labeled connected graph on `p`
/// vertices with `g` edges. With `sorted_degrees`, only labelings whose
/// degree sequence is non-increasing are visited; every isomorphism class
/// still has at least one such labeling.
pub fn for_each_labeled_connected(
    p: usize,
    g: usize,
    sorted_degrees: bool,
    mut f: impl FnMut(&[(usize, usize)]),
) {
    let pairs = pair_list(p);
    let m = pairs.len();
    if g > m || g == 0 {
        return;
    }
    let limit = 1u64 << m;
    let mut subset = (1u64 << g) - 1;
    let mut edges = Vec::with_capacity(g);
    while subset < limit {
        let mut deg = [0u8; 64];
        let mut adj = [0u64; 64];
        edges.clear();
        let mut s = subset;
        while s != 0 {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            let (u, v) = pairs[i];
            deg[u] += 1;
            deg[v] += 1;
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            edges.push((u, v));
        }
        let ok = (!sorted_degrees || deg[..p].windows(2).all(|w| w[0] >= w[1]))
            && deg[..p].iter().all(|&d| d > 0)
            && connected(p, &adj[..p]);
        if ok {
            f(&edges);
        }
        // Gosper's hack: next subset of the same size
        let c = subset & subset.wrapping_neg();
        let r = subset + c;
        subset = (((r ^ subset) >> 2) / c) | r;
    }
}

/// Canonical codes of all connected graphs with `g` edges, by class,
/// found by bucketing labeled graphs.
pub fn brute_force_classes(g: usize) -> BTreeMap<ClassKey, BTreeSet<String>> {
    let mut out: BTreeMap<ClassKey, BTreeSet<String>> = BTreeMap::new();
    for p in 2..=g + 1 {
        if p * (p - 1) / 2 < g {
            continue;
        }
        for_each_labeled_connected(p, g, true, |edges| {
            let graph = Graph::new(p, edges).unwrap();
            out.entry(graph.class_key())
                .or_default()
                .insert(canonical_code(&graph).to_string());
        });
    }
    out
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Maps a vertex pair to its bit position in [`pair_list`] order.
pub fn pair_index(p: usize) -> Vec<Vec<usize>> {
    let mut index = vec![vec![0usize; p]; p];
    for (i, (u, v)) in pair_list(p).into_iter().enumerate() {
        index[u][v] = i;
        index[v][u] = i;
    }
    index
}

/// Upper-triangle adjacency bits of `graph` under `perm`, as one integer.
pub fn relabeled_bits(graph: &Graph, perm: &[usize], index: &[Vec<usize>]) -> u32 {
    graph
        .edges()
        .iter()
        .fold(0u32, |bits, &(u, v)| bits | 1 << index[perm[u]][perm[v]])
}

/// Brute-force canonical form: the largest relabeled bit string.
pub fn brute_canonical(graph: &Graph, perms: &[Vec<usize>]) -> u32 {
    let index = pair_index(graph.p());
    perms.iter().map(|perm| relabeled_bits(graph, perm, &index)).max().unwrap()
}

pub fn automorphism_count(graph: &Graph, perms: &[Vec<usize>]) -> usize {
    let index = pair_index(graph.p());
    let id: Vec<usize> = (0..graph.p()).collect();
    let own = relabeled_bits(graph, &id, &index);
    perms
        .iter()
        .filter(|perm| relabeled_bits(graph, perm, &index) == own)
        .count()
}
