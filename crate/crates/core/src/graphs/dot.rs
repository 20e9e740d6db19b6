use super::Graph;
use std::fmt::Write;

/// Undirected DOT rendering. Pendant vertices are drawn as boxes so the
/// Dirichlet vertices stand out.
pub fn to_dot(graph: &Graph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", name.replace('"', "\\\"")).unwrap();
    for v in 0..graph.p() {
        let shape = if graph.is_pendant(v) { "box" } else { "circle" };
        writeln!(out, "  {v} [shape={shape}];").unwrap();
    }
    for &(u, v) in graph.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
