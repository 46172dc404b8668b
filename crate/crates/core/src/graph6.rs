//! graph6 encoding and decoding.
//!
//! Layout: an order prefix (`n + 63` for `n <= 62`, otherwise `126` followed by
//! three 6-bit big-endian groups), then the upper triangle `x(0,1), x(0,2),
//! x(1,2), x(0,3), ...` column by column, packed six bits per byte, most
//! significant bit first, zero padded, each group stored as `value + 63`.

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

pub const HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("byte {byte:#04x} at position {position} is outside the printable range 63..=126")]
    BadByte { position: usize, byte: u8 },
    #[error("graph order {n} (declared at position {position}) is not supported; need 1..=64")]
    UnsupportedOrder { position: usize, n: usize },
    #[error("record truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing garbage starting at position {position}")]
    Trailing { position: usize },
    #[error("nonzero padding bits in final byte at position {position}")]
    Padding { position: usize },
}

/// Parses one graph6 record. Surrounding whitespace and an optional
/// `>>graph6<<` header are ignored. Positions in errors are byte offsets
/// into the record after the header.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let body = line.trim();
    let body = body.strip_prefix(HEADER).unwrap_or(body).as_bytes();
    if body.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (position, &byte) in body.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadByte { position, byte });
        }
    }

    let (n, header_len) = if body[0] != 126 {
        ((body[0] - 63) as usize, 1)
    } else {
        if body.len() < 2 || body[1] == 126 {
            // 36-bit orders are far beyond the supported range.
            return Err(Graph6Error::UnsupportedOrder {
                position: 0,
                n: usize::MAX,
            });
        }
        if body.len() < 4 {
            return Err(Graph6Error::Truncated {
                expected: 4,
                found: body.len(),
            });
        }
        let n = body[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    };
    if n == 0 || n > MAX_ORDER {
        return Err(Graph6Error::UnsupportedOrder { position: 0, n });
    }

    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let data = &body[header_len..];
    if data.len() < nbytes {
        return Err(Graph6Error::Truncated {
            expected: header_len + nbytes,
            found: body.len(),
        });
    }
    if data.len() > nbytes {
        return Err(Graph6Error::Trailing {
            position: header_len + nbytes,
        });
    }

    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = data[nbytes - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(Graph6Error::Padding {
                position: header_len + nbytes - 1,
            });
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// Encodes a graph as a graph6 record (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    String::from_utf8(to_graph6_bytes(g)).expect("graph6 is ASCII")
}

pub fn to_graph6_bytes(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let nbits = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(4 + nbits.div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let rows = g.rows();
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for row in &rows[..j] {
            acc = (acc << 1) | ((row >> j) & 1) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::cycle;

    /// Hand-decoding of a body: returns the upper-triangle bit string.
    fn bit_string(body: &str) -> String {
        body.bytes().map(|b| format!("{:06b}", b - 63)).collect()
    }

    #[test]
    fn single_vertex() {
        let g = parse_graph6("@").unwrap();
        assert_eq!((g.order(), g.size()), (1, 0));
        assert_eq!(to_graph6(&Graph::empty(1).unwrap()), "@");
    }

    #[test]
    fn star_record_decodes_by_hand() {
        // '?' -> 000000, '{' -> 111100: x04 x14 x24 x34 set.
        assert_eq!(bit_string("?{"), "000000111100");
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.size(), 4);
        let edges: Vec<_> = g.edges().map(|e| (e.a, e.b)).collect();
        assert_eq!(edges, vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
    }

    #[test]
    fn five_cycle_record() {
        // 'U' -> 010110, 'W' -> 011000: x02 x03 x13 x14 x24.
        assert_eq!(bit_string("UW"), "010110011000");
        let g = parse_graph6("DUW").unwrap();
        assert_eq!(g.size(), 5);
        assert!(g.degrees().iter().all(|&d| d == 2));
        assert!(g.is_connected());
        let c5 = Graph::from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(g, c5);
        assert_eq!(to_graph6(&c5), "DUW");
    }

    #[test]
    fn known_vector_from_other_encoder() {
        // Edges 02, 04, 13, 34 encode to "DQc".
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
    }

    #[test]
    fn header_and_whitespace() {
        let g = parse_graph6(">>graph6<<DUW\n").unwrap();
        assert!(crate::are_isomorphic(&g, &cycle(5)));
        assert_eq!(parse_graph6("  DUW \r\n").unwrap(), g);
    }

    #[test]
    fn large_order_prefix() {
        for n in [62, 63, 64] {
            let g = cycle(n);
            let s = to_graph6(&g);
            if n >= 63 {
                assert_eq!(s.as_bytes()[0], 126);
                assert_eq!(s.as_bytes()[1..4], [63, 63 + (n >> 6) as u8, 63 + (n & 63) as u8]);
            }
            assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(
            parse_graph6("D?{?"),
            Err(Graph6Error::Trailing { position: 3 })
        );
        assert_eq!(
            parse_graph6("D?"),
            Err(Graph6Error::Truncated { expected: 3, found: 2 })
        );
        assert_eq!(
            parse_graph6("D? "),
            Err(Graph6Error::Truncated { expected: 3, found: 2 })
        );
        assert_eq!(
            parse_graph6("D?\x7f"),
            Err(Graph6Error::BadByte { position: 2, byte: 0x7f })
        );
        assert_eq!(
            parse_graph6("?"),
            Err(Graph6Error::UnsupportedOrder { position: 0, n: 0 })
        );
        let s = "~?@@"; // 18-bit order 65
        assert_eq!(
            parse_graph6(s),
            Err(Graph6Error::UnsupportedOrder { position: 0, n: 65 })
        );
        // n = 3 has three bits; low padding bits must be zero.
        assert_eq!(parse_graph6("Bw"), Ok(Graph::complete(3).unwrap()));
        assert_eq!(parse_graph6("Bx"), Err(Graph6Error::Padding { position: 1 }));
    }
}
