//! graph6 encoding: the upper triangle of the adjacency matrix read column by
//! column, packed into 6-bit groups offset by 63.

use crate::{Error, Graph, Result, MAX_NODES};

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

/// Upper-triangle bits in graph6 order: `(0,1), (0,2), (1,2), (0,3), ...`.
pub(crate) fn upper_triangle_bits(g: &Graph) -> impl Iterator<Item = bool> + '_ {
    let n = g.node_count();
    (1..n).flat_map(move |j| (0..j).map(move |i| g.has_edge(i, j)))
}

pub(crate) fn pack_bits<I: Iterator<Item = bool>>(n: usize, bits: I) -> String {
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push(n as u8 + OFFSET);
    let mut acc = 0u8;
    let mut filled = 0;
    for bit in bits {
        acc = acc << 1 | bit as u8;
        filled += 1;
        if filled == 6 {
            out.push(acc + OFFSET);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Serialises `g` to graph6.
pub fn to_graph6(g: &Graph) -> String {
    pack_bits(g.node_count(), upper_triangle_bits(g))
}

/// Parses one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn from_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let (&first, body) = bytes.split_first().ok_or_else(|| Error::Graph6("empty input".into()))?;
    if !(OFFSET..=126).contains(&first) {
        return Err(Error::Graph6(format!("invalid size byte {first}")));
    }
    if first == 126 {
        return Err(Error::Graph6(format!("graphs above 62 nodes not supported (cap {MAX_NODES})")));
    }
    let n = (first - OFFSET) as usize;
    if n > MAX_NODES {
        return Err(Error::TooManyNodes(n));
    }
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut bits = Vec::with_capacity(expected * 6);
    for &b in body {
        if !(OFFSET..=126).contains(&b) {
            return Err(Error::Graph6(format!("invalid data byte {b}")));
        }
        let v = b - OFFSET;
        bits.extend((0..6).rev().map(|s| v >> s & 1 == 1));
    }
    if bits[bit_count..].iter().any(|&b| b) {
        return Err(Error::Graph6("non-zero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

/// Parses newline-delimited graph6, skipping blank lines.
pub fn parse_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(from_graph6).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn known_encodings() {
        // petgraph's reference case: 5 nodes, edges 0-2, 0-4, 1-3, 3-4
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&builders::complete(4).unwrap()), "C~");
        assert_eq!(to_graph6(&builders::petersen()), "IheA@GUAo");
        assert_eq!(to_graph6(&Graph::new(0, []).unwrap()), "?");
        assert_eq!(to_graph6(&Graph::new(1, []).unwrap()), "@");
    }

    #[test]
    fn parse_known() {
        let g = from_graph6(">>graph6<<DQc\n").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(from_graph6("?").unwrap().node_count(), 0);
    }

    #[test]
    fn malformed_inputs() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("DQ").is_err());
        assert!(from_graph6("DQcc").is_err());
        assert!(from_graph6("D Qc").is_err());
        assert!(from_graph6("Dk").is_err() || from_graph6("DQd").is_err());
        // n = 33 is beyond the node cap
        assert!(matches!(from_graph6("`"), Err(Error::TooManyNodes(33)) | Err(Error::Graph6(_))));
    }

    #[test]
    fn round_trip_k32() {
        let g = builders::complete(32).unwrap();
        assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }
}
