//! graph6 interchange: printable 6-bit packing of the upper adjacency triangle.
//!
//! Bits are taken column by column, `(0,1), (0,2), (1,2), (0,3), ...`, grouped
//! big-endian into sextets and offset by 63. The vertex count uses one, four or
//! eight bytes depending on its size.

use crate::error::{Result, SpexError};
use crate::graph::Graph;

/// Largest order expressible in the eight-byte size header.
pub const MAX_ORDER: usize = (1 << 36) - 1;

const HEADER: &[u8] = b">>graph6<<";

fn err(msg: impl Into<String>) -> SpexError {
    SpexError::Graph6(msg.into())
}

fn encode_size(n: usize, out: &mut Vec<u8>) -> Result<()> {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else if n <= MAX_ORDER {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        return Err(err(format!("order {n} exceeds graph6 limit {MAX_ORDER}")));
    }
    Ok(())
}

fn sextet(b: u8) -> Result<usize> {
    if (63..=126).contains(&b) {
        Ok((b - 63) as usize)
    } else {
        Err(err(format!(
            "byte 0x{b:02x} outside printable range 63..=126"
        )))
    }
}

/// Returns (n, number of header bytes consumed).
fn decode_size(bytes: &[u8]) -> Result<(usize, usize)> {
    let first = *bytes.first().ok_or_else(|| err("empty input"))?;
    if first != 126 {
        return Ok((sextet(first)?, 1));
    }
    let (start, len) = if bytes.get(1) == Some(&126) {
        (2, 6)
    } else {
        (1, 3)
    };
    let digits = bytes
        .get(start..start + len)
        .ok_or_else(|| err("truncated size header"))?;
    let mut n = 0usize;
    for &b in digits {
        n = (n << 6) | sextet(b)?;
    }
    Ok((n, start + len))
}

/// Encodes `g` as a graph6 string without a trailing newline.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    let mut out = Vec::new();
    encode_size(n, &mut out)?;
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

/// Decodes a single graph6 record.
///
/// An optional `>>graph6<<` header and trailing line terminator are accepted.
/// sparse6 and digraph6 records are rejected.
pub fn parse_graph6(text: &[u8]) -> Result<Graph> {
    let mut bytes = text;
    while let Some((&last, rest)) = bytes.split_last() {
        if last == b'\n' || last == b'\r' {
            bytes = rest;
        } else {
            break;
        }
    }
    if let Some(rest) = bytes.strip_prefix(HEADER) {
        bytes = rest;
    }
    match bytes.first() {
        Some(b':') => return Err(err("sparse6 input is not supported; convert to graph6")),
        Some(b'&') => return Err(err("digraph6 input is not supported")),
        _ => {}
    }
    let (n, consumed) = decode_size(bytes)?;
    let body = &bytes[consumed..];
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(err(format!(
            "truncated body: expected {expected} bytes, found {}",
            body.len()
        )));
    }
    if body.len() > expected {
        return Err(err(format!(
            "trailing garbage: {} unexpected bytes",
            body.len() - expected
        )));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let x = sextet(body[k / 6])?;
            if (x >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = sextet(body[expected - 1])?;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(err("nonzero padding bits"));
        }
    }
    for &b in body {
        sextet(b)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn k2_and_singleton() {
        let k2 = parse_graph6(b"A_").unwrap();
        assert_eq!((k2.n(), k2.edge_count()), (2, 1));
        assert_eq!(to_graph6(&k2).unwrap(), "A_");
        assert_eq!(to_graph6(&Graph::new(1)).unwrap(), "@");
        assert_eq!(to_graph6(&Graph::new(0)).unwrap(), "?");
        assert_eq!(parse_graph6(b"?").unwrap().n(), 0);
    }

    #[test]
    fn petgraph_reference_string() {
        // a-c, a-e, b-d, d-e on five vertices
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g).unwrap(), "DQc");
    }

    #[test]
    fn header_and_newline_tolerated() {
        assert_eq!(parse_graph6(b">>graph6<<A_\n").unwrap().edge_count(), 1);
        assert_eq!(parse_graph6(b"A_\r\n").unwrap().edge_count(), 1);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_graph6(b"").is_err());
        assert!(parse_graph6(b"D").is_err()); // truncated
        assert!(parse_graph6(b"A_?").is_err()); // trailing
        assert!(parse_graph6(b"A ").is_err()); // out of range
        assert!(parse_graph6(b"A`").is_err()); // padding bit set
        assert!(parse_graph6(b"~?").is_err()); // truncated size
        let e = parse_graph6(b":An").unwrap_err();
        assert!(e.to_string().contains("sparse6"));
    }

    #[test]
    fn large_header_forms() {
        let g = Graph::new(63);
        let s = to_graph6(&g).unwrap();
        assert_eq!(&s[..4], "~??~");
        assert_eq!(parse_graph6(s.as_bytes()).unwrap().n(), 63);
        let mut big = Graph::new(100);
        big.add_edge(0, 99).unwrap();
        let s = to_graph6(&big).unwrap();
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), big);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..=62).prop_flat_map(|n| {
            let m = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
                let mut g = Graph::new(n);
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            g.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn round_trip(g in arb_graph()) {
            let s = to_graph6(&g).unwrap();
            let back = parse_graph6(s.as_bytes()).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(to_graph6(&back).unwrap(), s);
        }
    }
}
