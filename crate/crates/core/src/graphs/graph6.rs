//! graph6 codec: size header `N(n)` followed by the upper triangle of the
//! adjacency matrix, column by column, packed into 6-bit chunks offset by 63.

use super::{Graph, GraphError, MAX_VERTICES};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    BadChar { offset: usize, byte: u8 },
    #[error("expected {expected} data bytes for {n} vertices, found {found}")]
    TruncatedBits { n: usize, expected: usize, found: usize },
    #[error("size header does not match data: {0}")]
    SizeMismatch(String),
    #[error(transparent)]
    Invalid(#[from] GraphError),
}

pub fn to_graph6(graph: &Graph) -> String {
    let n = graph.p();
    let mut out = Vec::new();
    push_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | graph.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

fn push_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Parses one graph6 line. A leading `>>graph6<<` header and trailing
/// whitespace are accepted. The result is validated as a simple connected
/// graph.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let line = text.trim_end_matches(['\n', '\r', ' ', '\t']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadChar { offset, byte });
        }
    }
    let (n, body) = read_size(bytes)?;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::TruncatedBits {
            n,
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::SizeMismatch(format!(
            "{} trailing bytes after {expected} data bytes for n={n}",
            body.len() - expected
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let chunk = body[k / 6] - 63;
            if chunk >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, &edges)?)
}

fn read_size(bytes: &[u8]) -> Result<(usize, &[u8]), Graph6Error> {
    let decode = |chunk: &[u8]| chunk.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    match bytes {
        [] => Err(Graph6Error::SizeMismatch("empty line".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Graph6Error::SizeMismatch("truncated 8-byte size header".into()));
            }
            Ok((decode(&rest[..6]), &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::SizeMismatch("truncated 4-byte size header".into()));
            }
            Ok((decode(&rest[..3]), &rest[3..]))
        }
        [first, rest @ ..] => Ok(((first - 63) as usize, rest)),
    }
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    /// Bit-by-bit decoder written against the format description, used as an
    /// independent check of `parse_graph6`.
    fn reference_decode(s: &str) -> (usize, Vec<(usize, usize)>) {
        let b = s.as_bytes();
        let n = (b[0] - 63) as usize;
        let mut bitstream = Vec::new();
        for &c in &b[1..] {
            let v = c - 63;
            for k in (0..6).rev() {
                bitstream.push(v >> k & 1);
            }
        }
        let mut edges = Vec::new();
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if bitstream[idx] == 1 {
                    edges.push((i, j));
                }
                idx += 1;
            }
        }
        (n, edges)
    }

    #[test]
    fn k4_decodes() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g.p(), 4);
        assert_eq!(g.g(), 6);
        let (n, edges) = reference_decode("C~");
        assert_eq!(n, 4);
        assert_eq!(edges.len(), 6);
        assert_eq!(to_graph6(&complete(4)), "C~");
    }

    #[test]
    fn p2_encodes() {
        assert_eq!(to_graph6(&path(2)), "A_");
        assert_eq!(parse_graph6("A_\n").unwrap(), path(2));
    }

    #[test]
    fn empty_pair_is_disconnected() {
        assert_eq!(
            parse_graph6("A?"),
            Err(Graph6Error::Invalid(GraphError::Disconnected(1)))
        );
    }

    #[test]
    fn petgraph_fixture() {
        // "DQc": five vertices, edges 0-2 0-4 1-3 3-4.
        let (n, mut edges) = reference_decode("DQc");
        edges.sort();
        assert_eq!(n, 5);
        assert_eq!(edges, vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
        let g = Graph::new(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_graph6("C~ x"),
            Err(Graph6Error::BadChar { offset: 2, .. })
        ));
        assert!(matches!(
            parse_graph6("E~"),
            Err(Graph6Error::TruncatedBits { n: 6, expected: 3, found: 1 })
        ));
        assert!(matches!(parse_graph6("C~~"), Err(Graph6Error::SizeMismatch(_))));
        assert!(matches!(parse_graph6(""), Err(Graph6Error::SizeMismatch(_))));
        assert!(matches!(parse_graph6("~?"), Err(Graph6Error::SizeMismatch(_))));
    }

    #[test]
    fn long_size_header() {
        let mut out = Vec::new();
        push_size(63, &mut out);
        assert_eq!(out, vec![126, 63, 63 + 0, 63 + 63]);
        let (n, _) = read_size(&out).unwrap();
        assert_eq!(n, 63);
    }

    #[test]
    fn header_prefix_accepted() {
        assert_eq!(parse_graph6(">>graph6<<A_").unwrap(), path(2));
    }

    #[test]
    fn roundtrip_named() {
        for g in [path(7), cycle(9), star(10), paw(), spider(&[3, 2, 1])] {
            let text = to_graph6(&g);
            assert_eq!(parse_graph6(&text).unwrap(), g);
            let (n, mut edges) = reference_decode(&text);
            edges.sort();
            assert_eq!(n, g.p());
            assert_eq!(edges, g.edges());
        }
    }
}
