//! graph6 encoding (short form only, `n ≤ 62`).
//!
//! The header is the byte `n + 63`. The body packs the upper triangle of the
//! adjacency matrix column by column (`x(0,1), x(0,2), x(1,2), x(0,3), …`)
//! into 6-bit groups, most significant bit first, each written as
//! `value + 63`. Padding bits in the last group are zero.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub const GRAPH6_MAX_N: usize = 62;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("unsupported or malformed length header byte {0:#04x}")]
    Header(u8),
    #[error("byte {byte:#04x} at offset {offset} outside the graph6 range")]
    BadChar { byte: u8, offset: usize },
    #[error("body has {found} bytes, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("nonzero padding bits")]
    Padding,
    #[error("graph has {0} vertices; short-form graph6 supports at most {GRAPH6_MAX_N}")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    let (&head, body) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if !(63..=63 + GRAPH6_MAX_N as u8).contains(&head) {
        return Err(Graph6Error::Header(head));
    }
    let n = (head - 63) as usize;
    let expected = body_len(n);
    if body.len() != expected {
        return Err(Graph6Error::Length {
            expected,
            found: body.len(),
        });
    }
    let mut groups = Vec::with_capacity(body.len());
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadChar {
                byte: b,
                offset: i + 1,
            });
        }
        groups.push(b - 63);
    }
    let bit = |k: usize| (groups[k / 6] >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if (k..groups.len() * 6).any(bit) {
        return Err(Graph6Error::Padding);
    }
    Ok(Graph::from_edge_list(n, edges)?)
}

pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut groups = vec![0u8; body_len(n)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                groups[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(1 + groups.len());
    out.push((n as u8 + 63) as char);
    out.extend(groups.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

/// Parses a newline-separated stream, skipping blank lines. Each item carries
/// its 1-based line number.
pub fn parse_stream(text: &str) -> impl Iterator<Item = (usize, Result<Graph, Graph6Error>)> + '_ {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, parse_graph6(l.trim())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, random_gnp};
    use proptest::prelude::*;

    #[test]
    fn hand_decoded_examples() {
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1).unwrap());
        assert_eq!(parse_graph6("A_").unwrap(), complete(2).unwrap());
        assert_eq!(to_graph6(&complete(2).unwrap()).unwrap(), "A_");
        assert_eq!(to_graph6(&Graph::empty(0).unwrap()).unwrap(), "?");
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(to_graph6(&g).unwrap(), "D?{");
    }

    #[test]
    fn malformed_lines() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert!(matches!(parse_graph6("~"), Err(Graph6Error::Header(_))));
        assert!(matches!(parse_graph6("A"), Err(Graph6Error::Length { .. })));
        // K2 has one significant bit; `` ` `` sets a padding bit.
        assert_eq!(parse_graph6("A`"), Err(Graph6Error::Padding));
        assert!(matches!(
            parse_graph6("A\u{7f}"),
            Err(Graph6Error::BadChar { offset: 1, .. })
        ));
    }

    #[test]
    fn too_large() {
        let g = Graph::empty(63).unwrap();
        assert_eq!(to_graph6(&g), Err(Graph6Error::TooLarge(63)));
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..=62, p in 0.0f64..1.0, seed: u64) {
            let g = random_gnp(n, p, seed).unwrap();
            let s = to_graph6(&g).unwrap();
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }
}
