//! graph6 text encoding, bit-exact with the published format.
//!
//! Layout: one byte `N(n) = n + 63` for the order (this crate only accepts
//! orders up to [`MAX_VERTICES`]), then the upper triangle of the adjacency
//! matrix in column-major order (`x_{0,1}, x_{0,2}, x_{1,2}, x_{0,3}, ...`),
//! packed big-endian into 6-bit groups, each offset by 63. Trailing pad bits
//! must be zero. The optional `>>graph6<<` header is accepted on decode.

use crate::graph::{Graph, MAX_VERTICES};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("order {order} exceeds the {MAX_VERTICES}-vertex cap")]
    OrderTooLarge { order: usize },
    #[error("byte {byte:#x} at position {pos} outside the graph6 range 63..=126")]
    InvalidByte { byte: u8, pos: usize },
    #[error("expected {expected} data bytes for order {order}, found {found}")]
    WrongLength { order: usize, expected: usize, found: usize },
    #[error("nonzero padding bits")]
    BadPadding,
}

fn data_len(order: usize) -> usize {
    let bits = order * order.saturating_sub(1) / 2;
    bits.div_ceil(6)
}

/// Encodes a labeled graph as a graph6 line (without trailing newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + 63);
    let mut acc: u8 = 0;
    let mut filled = 0;
    for col in 1..n {
        for row in 0..col {
            acc = (acc << 1) | u8::from(g.has_edge(row, col));
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes a graph6 line. Rejects malformed headers, out-of-range bytes,
/// wrong lengths, nonzero padding, and orders beyond the vertex cap.
pub fn decode_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.strip_prefix(HEADER).unwrap_or(text).trim_end_matches(['\n', '\r']);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte { byte: b, pos });
        }
    }
    // 126 opens the multi-byte order forms, which only encode n > 62.
    if bytes[0] == 126 {
        return Err(Graph6Error::OrderTooLarge { order: 63 });
    }
    let order = (bytes[0] - 63) as usize;
    if order > MAX_VERTICES {
        return Err(Graph6Error::OrderTooLarge { order });
    }
    let expected = data_len(order);
    let data = &bytes[1..];
    if data.len() != expected {
        return Err(Graph6Error::WrongLength { order, expected, found: data.len() });
    }
    let mut g = Graph::empty(order).expect("order within cap");
    let mut idx = 0usize;
    for col in 1..order {
        for row in 0..col {
            let byte = data[idx / 6] - 63;
            let bit = (byte >> (5 - idx % 6)) & 1;
            if bit != 0 {
                g = g.add_edge(row, col).expect("indices in range");
            }
            idx += 1;
        }
    }
    // every bit past the triangle must be zero
    while idx < data.len() * 6 {
        let byte = data[idx / 6] - 63;
        if (byte >> (5 - idx % 6)) & 1 != 0 {
            return Err(Graph6Error::BadPadding);
        }
        idx += 1;
    }
    Ok(g)
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&encode_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Graph, D::Error> {
        let s = String::deserialize(deserializer)?;
        decode_graph6(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Girth;

    #[test]
    fn k2_is_a_underscore() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(encode_graph6(&k2), "A_");
    }

    #[test]
    fn known_five_vertex_encoding() {
        // edges (0,2),(0,4),(1,3),(3,4) encode to "DQc"
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
    }

    #[test]
    fn c5_roundtrip_preserves_structure() {
        let c5 = Graph::cycle(5).unwrap();
        let text = encode_graph6(&c5);
        assert_eq!(text, "Dhc");
        let back = decode_graph6(&text).unwrap();
        assert_eq!(back.girth(), Girth::Length(5));
        assert_eq!(back.edge_count(), 5);
        assert_eq!(back, c5);
    }

    #[test]
    fn empty_graphs() {
        let g0 = Graph::empty(0).unwrap();
        assert_eq!(encode_graph6(&g0), "?");
        assert_eq!(decode_graph6("?").unwrap(), g0);
        let g1 = Graph::empty(1).unwrap();
        assert_eq!(decode_graph6(&encode_graph6(&g1)).unwrap(), g1);
    }

    #[test]
    fn header_is_accepted() {
        let c4 = Graph::cycle(4).unwrap();
        let with_header = format!(">>graph6<<{}", encode_graph6(&c4));
        assert_eq!(decode_graph6(&with_header).unwrap(), c4);
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(matches!(decode_graph6(""), Err(Graph6Error::Empty)));
        // 7 vertices need 4 data bytes, "F?qb" has only 3
        assert!(matches!(decode_graph6("F?qb"), Err(Graph6Error::WrongLength { .. })));
        assert!(matches!(decode_graph6("A_!"), Err(Graph6Error::InvalidByte { .. })
            | Err(Graph6Error::WrongLength { .. })));
        // order over the cap: 50 vertices
        let big = String::from_utf8(vec![50 + 63]).unwrap();
        assert!(matches!(decode_graph6(&big), Err(Graph6Error::OrderTooLarge { order: 50 })));
        assert!(matches!(decode_graph6("~~~"), Err(Graph6Error::OrderTooLarge { .. })));
        // K2 with a stray padding bit: data byte `` (0b100000 -> '_' is valid),
        // flip a pad bit: 0b110000 + 63 = 'o'
        assert!(matches!(decode_graph6("Ao"), Err(Graph6Error::BadPadding)));
    }

    #[test]
    fn roundtrip_random_labeled_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x6f6f);
        for _ in 0..200 {
            let n = rng.random_range(0..12usize);
            let mut g = Graph::empty(n).unwrap();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.4) {
                        g = g.add_edge(u, v).unwrap();
                    }
                }
            }
            assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
        }
    }
}
