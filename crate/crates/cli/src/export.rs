//! Graph exporters: standard graph6 (with an internal decoder used for
//! round-trip checks) and undirected DOT. Both emit identical bytes for
//! identical inputs.

use std::fmt;

use cleangraph_core::graph::{Graph, Label};

/// Encodes a graph in the standard graph6 format: the order as one byte
/// (n + 63) for n <= 62 or '~' plus three 6-bit bytes up to 258047, then
/// the upper-triangle bits x(i, j) for columns j = 1..n-1 and rows i < j,
/// packed big-endian into 6-bit groups, zero-padded, each group offset by
/// 63. Vertex order is the graph's canonical order.
pub fn export_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= 258_047, "graph6 medium form tops out at 258047 vertices");
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    let mut acc = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Graph6Error {
    Empty,
    InvalidByte { offset: usize, byte: u8 },
    Truncated { expected: usize, got: usize },
    TrailingBytes { expected: usize, got: usize },
}

impl fmt::Display for Graph6Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph6Error::Empty => write!(f, "empty graph6 string"),
            Graph6Error::InvalidByte { offset, byte } => {
                write!(f, "invalid graph6 byte {byte:#04x} at offset {offset}")
            }
            Graph6Error::Truncated { expected, got } => {
                write!(f, "graph6 string too short: expected {expected} bytes, got {got}")
            }
            Graph6Error::TrailingBytes { expected, got } => {
                write!(f, "graph6 string too long: expected {expected} bytes, got {got}")
            }
        }
    }
}

impl std::error::Error for Graph6Error {}

/// Decodes a graph6 string produced by [`export_graph6`]; vertices come
/// back labeled by position.
pub fn decode_graph6(s: &str) -> Result<Graph, Graph6Error> {
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte { offset, byte: b });
        }
    }
    let (n, header) = if bytes[0] == 126 {
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated {
                expected: 4,
                got: bytes.len(),
            });
        }
        let n = ((bytes[1] as usize - 63) << 12)
            | ((bytes[2] as usize - 63) << 6)
            | (bytes[3] as usize - 63);
        (n, 4)
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = header + bit_count.div_ceil(6);
    if bytes.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            got: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(Graph6Error::TrailingBytes {
            expected,
            got: bytes.len(),
        });
    }
    let mut g = Graph::with_order(n);
    let mut bit_index = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[header + bit_index / 6] - 63;
            let bit = (byte >> (5 - bit_index % 6)) & 1;
            if bit == 1 {
                g.add_edge(i, j);
            }
            bit_index += 1;
        }
    }
    Ok(g)
}

fn dot_name(label: &Label) -> String {
    let text = label.to_string();
    let mut quoted = String::with_capacity(text.len() + 2);
    quoted.push('"');
    for c in text.chars() {
        if c == '"' || c == '\\' {
            quoted.push('\\');
        }
        quoted.push(c);
    }
    quoted.push('"');
    quoted
}

/// Renders undirected DOT: every vertex on its own line in canonical
/// order, then the edges, each listed once and sorted lexicographically.
pub fn export_dot(g: &Graph) -> String {
    let mut names: Vec<String> = g.labels().iter().map(dot_name).collect();
    // Duplicate labels would merge DOT nodes; suffix them by position.
    {
        let mut sorted = names.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            for (v, name) in names.iter_mut().enumerate() {
                let inner: String = name[1..name.len() - 1].to_string();
                *name = format!("\"{inner}#{v}\"");
            }
        }
    }
    let mut out = String::from("graph {\n");
    for name in &names {
        out.push_str("  ");
        out.push_str(name);
        out.push_str(";\n");
    }
    let mut edge_lines: Vec<String> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = if names[u] <= names[v] {
                (&names[u], &names[v])
            } else {
                (&names[v], &names[u])
            };
            format!("  {a} -- {b};\n")
        })
        .collect();
    edge_lines.sort();
    for line in edge_lines {
        out.push_str(&line);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cleangraph_core::graph::{complete_graph, copies, Graph};

    #[test]
    fn graph6_golden_values() {
        assert_eq!(export_graph6(&complete_graph(3)), "Bw");
        assert_eq!(export_graph6(&complete_graph(1)), "@");
        assert_eq!(export_graph6(&Graph::with_order(2)), "A?");
        assert_eq!(export_graph6(&Graph::with_order(0)), "?");
        // K6 is a classic reference string
        assert_eq!(export_graph6(&complete_graph(6)), "E~~w");
    }

    #[test]
    fn graph6_round_trip_small() {
        for g in [
            complete_graph(5),
            copies(3, &complete_graph(2)),
            Graph::with_order(7),
        ] {
            let decoded = decode_graph6(&export_graph6(&g)).unwrap();
            assert_eq!(decoded.order(), g.order());
            for u in 0..g.order() {
                for v in 0..g.order() {
                    assert_eq!(decoded.has_edge(u, v), g.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn graph6_extended_order_form() {
        let g = Graph::with_order(63);
        let s = export_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        let decoded = decode_graph6(&s).unwrap();
        assert_eq!(decoded.order(), 63);
    }

    #[test]
    fn graph6_decode_rejects_malformed() {
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("Bw ").is_err()); // space is not a graph6 byte
        assert!(decode_graph6("B").is_err()); // missing edge bytes
        assert!(decode_graph6("Bww").is_err()); // too many
    }

    #[test]
    fn dot_output_shape() {
        let mut g = Graph::with_order(2);
        g.add_edge(0, 1);
        assert_eq!(export_dot(&g), "graph {\n  \"0\";\n  \"1\";\n  \"0\" -- \"1\";\n}\n");
        assert_eq!(export_dot(&Graph::with_order(0)), "graph {\n}\n");
    }

    #[test]
    fn dot_is_deterministic() {
        let g = copies(2, &complete_graph(3));
        assert_eq!(export_dot(&g), export_dot(&g.clone()));
    }
}
