//! graph6 text encoding: `N(n)` header followed by the upper triangle of the
//! adjacency matrix, column by column, packed big-endian into 6-bit groups
//! offset by 63.

use crate::graph::{Graph, GraphError, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn encode_order(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(((acc << (6 - nbits)) + 63) as char);
    }
    out
}

pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(GraphError::Empty);
    }
    let mut values = Vec::with_capacity(bytes.len());
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(GraphError::InvalidByte(b, i));
        }
        values.push(b - 63);
    }

    let (n, body) = if values[0] != 63 {
        (values[0] as usize, &values[1..])
    } else if values.len() >= 2 && values[1] == 63 {
        // 8-byte form, only for n >= 258048
        if values.len() < 8 {
            return Err(GraphError::BadHeader);
        }
        let n = values[2..8]
            .iter()
            .fold(0usize, |acc, &v| (acc << 6) | v as usize);
        (n, &values[8..])
    } else {
        if values.len() < 4 {
            return Err(GraphError::BadHeader);
        }
        let n = values[1..4]
            .iter()
            .fold(0usize, |acc, &v| (acc << 6) | v as usize);
        if n <= 62 {
            return Err(GraphError::BadHeader);
        }
        (n, &values[4..])
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(GraphError::LengthMismatch {
            expected,
            found: body.len(),
        });
    }
    let pad = expected * 6 - nbits;
    if pad > 0 && body[expected - 1] & ((1 << pad) - 1) != 0 {
        return Err(GraphError::TrailingBits);
    }

    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if body[k / 6] >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Parses one graph per non-blank line.
pub fn parse_lines(text: &str) -> Result<Vec<Graph>, GraphError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(from_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_records() {
        assert_eq!(to_graph6(&Graph::new(1)), "@");
        assert_eq!(to_graph6(&Graph::new(0)), "?");
        assert_eq!(to_graph6(&Graph::cycle(4)), "Cl");
        assert_eq!(to_graph6(&Graph::complete(5)), "D~{");
    }

    #[test]
    fn round_trip_d_record() {
        let g = from_graph6("D?{").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(to_graph6(&g), "D?{");
    }

    #[test]
    fn complete_graph_decodes() {
        let g = from_graph6("D~{").unwrap();
        assert_eq!(g.edge_count(), 10);
        assert!((0..5).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn large_order_header() {
        let mut g = Graph::new(64);
        g.add_edge(0, 63);
        g.add_edge(10, 11);
        let s = to_graph6(&g);
        assert!(s.starts_with("~?@?"));
        assert_eq!(from_graph6(&s).unwrap(), g);
        assert_eq!(from_graph6(&format!("{HEADER}{s}\n")).unwrap(), g);
    }

    #[test]
    fn malformed_records() {
        assert_eq!(from_graph6(""), Err(GraphError::Empty));
        assert_eq!(from_graph6("D?"), Err(GraphError::LengthMismatch { expected: 2, found: 1 }));
        // ten bits for n = 5, so the last byte carries two padding bits
        assert_eq!(from_graph6("D?@"), Err(GraphError::TrailingBits));
        assert_eq!(from_graph6("C l"), Err(GraphError::InvalidByte(b' ', 1)));
        assert!(matches!(from_graph6("~?@@"), Err(GraphError::TooManyVertices(65))));
        assert_eq!(from_graph6("~??"), Err(GraphError::BadHeader));
    }
}
