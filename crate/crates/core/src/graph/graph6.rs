//! graph6 codec.
//!
//! Only the shortest order header is accepted and padding bits must be zero,
//! so parsing and writing are exact inverses on canonical strings.

use thiserror::Error;

use super::Graph;

/// Largest order representable by the 8-byte header form.
pub const MAX_ORDER: usize = 68_719_476_735;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("malformed graph6 header at byte {offset}")]
    MalformedHeader { offset: usize },
    #[error("byte {offset} is outside the printable graph6 range")]
    InvalidByte { offset: usize },
    #[error("graph6 data truncated at byte {offset}")]
    Truncated { offset: usize },
    #[error("unexpected trailing bytes starting at byte {offset}")]
    TrailingBits { offset: usize },
    #[error("nonzero padding bits in byte {offset}")]
    NonCanonicalPadding { offset: usize },
    #[error("{format} input is not supported (byte {offset}); expected graph6")]
    UnsupportedFormat { format: &'static str, offset: usize },
    #[error("order {0} exceeds the graph6 limit")]
    OrderTooLarge(usize),
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    match bytes.get(offset) {
        None => Err(Graph6Error::Truncated { offset }),
        Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
        Some(_) => Err(Graph6Error::InvalidByte { offset }),
    }
}

/// Returns `(n, header_len)`.
fn read_order(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let first = *bytes.first().ok_or(Graph6Error::MalformedHeader { offset: 0 })?;
    if first != 126 {
        return Ok((sextet(bytes, 0)? as usize, 1));
    }
    let (words, start) = if bytes.get(1) == Some(&126) { (6, 2) } else { (3, 1) };
    let mut n = 0u64;
    for i in 0..words {
        n = n << 6 | sextet(bytes, start + i)?;
    }
    let n = n as usize;
    let shortest = match n {
        0..=62 => 1,
        63..=258_047 => 4,
        _ => 8,
    };
    if shortest != start + words {
        return Err(Graph6Error::MalformedHeader { offset: 0 });
    }
    Ok((n, start + words))
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let line = text.trim_end_matches(['\n', '\r']);
    let skip = if line.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = &line.as_bytes()[skip..];
    match bytes.first() {
        Some(b':') => {
            return Err(Graph6Error::UnsupportedFormat {
                format: "sparse6",
                offset: skip,
            })
        }
        Some(b';') => {
            return Err(Graph6Error::UnsupportedFormat {
                format: "incremental sparse6",
                offset: skip,
            })
        }
        Some(b'&') => {
            return Err(Graph6Error::UnsupportedFormat {
                format: "digraph6",
                offset: skip,
            })
        }
        _ => {}
    }
    let shift = |e: Graph6Error| match e {
        Graph6Error::MalformedHeader { offset } => Graph6Error::MalformedHeader { offset: offset + skip },
        Graph6Error::InvalidByte { offset } => Graph6Error::InvalidByte { offset: offset + skip },
        Graph6Error::Truncated { offset } => Graph6Error::Truncated { offset: offset + skip },
        Graph6Error::TrailingBits { offset } => Graph6Error::TrailingBits { offset: offset + skip },
        Graph6Error::NonCanonicalPadding { offset } => {
            Graph6Error::NonCanonicalPadding { offset: offset + skip }
        }
        other => other,
    };
    decode(bytes).map_err(shift)
}

fn decode(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    let (n, start) = read_order(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let data_len = bits.div_ceil(6);
    if bytes.len() > start + data_len {
        return Err(Graph6Error::TrailingBits {
            offset: start + data_len,
        });
    }
    let mut adj = vec![Vec::new(); n];
    let mut k = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let offset = start + k / 6;
            let word = sextet(bytes, offset)?;
            if word >> (5 - k % 6) & 1 == 1 {
                adj[i].push(j);
                adj[j].push(i);
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    if bits % 6 != 0 {
        let offset = start + data_len - 1;
        let pad = 6 - bits % 6;
        if sextet(bytes, offset)? & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonCanonicalPadding { offset });
        }
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    Ok(Graph::from_adjacency_unchecked(adj))
}

pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    let mut out: Vec<u8> = Vec::new();
    let header = |out: &mut Vec<u8>, words: usize| {
        for i in (0..words).rev() {
            out.push((n >> (6 * i) & 63) as u8 + 63);
        }
    };
    match n {
        0..=62 => out.push(n as u8 + 63),
        63..=258_047 => {
            out.push(126);
            header(&mut out, 3);
        }
        _ => {
            out.extend([126, 126]);
            header(&mut out, 6);
        }
    }
    let mut word = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            word = word << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(word + 63);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent hand decoding: header byte is n + 63; each following byte
    // carries six bits (value - 63, most significant first) of the upper
    // triangle read column by column.
    fn hand_decode(s: &str) -> (usize, Vec<(usize, usize)>) {
        let b = s.as_bytes();
        let n = (b[0] - 63) as usize;
        let mut bits = Vec::new();
        for &c in &b[1..] {
            let v = c - 63;
            for k in (0..6).rev() {
                bits.push(v >> k & 1);
            }
        }
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bits[k] == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        (n, edges)
    }

    #[test]
    fn k2_and_k1() {
        assert_eq!(hand_decode("A_"), (2, vec![(0, 1)]));
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!(k2, Graph::path(2));
        assert_eq!(write_graph6(&Graph::path(2)).unwrap(), "A_");
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
        assert_eq!(write_graph6(&Graph::empty(1)).unwrap(), "@");
        assert_eq!(write_graph6(&Graph::empty(0)).unwrap(), "?");
    }

    #[test]
    fn matches_hand_decoding() {
        for s in ["DQc", "Ch", "Bw", "E?Bw"] {
            let (n, edges) = hand_decode(s);
            let g = parse_graph6(s).unwrap();
            assert_eq!(g, Graph::from_edges(n, &edges).unwrap());
            assert_eq!(write_graph6(&g).unwrap(), s);
        }
    }

    #[test]
    fn large_header_forms() {
        let g = Graph::path(100);
        let s = write_graph6(&g).unwrap();
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63 + 36]);
        assert_eq!(parse_graph6(&s).unwrap(), g);
        // 300000 = 1·64^3 + 9·64^2 + 15·64 + 32; only the header is given,
        // so decoding reads the order and then stops at the first body byte
        let header = [126u8, 126, 63, 63, 64, 72, 78, 95];
        let s = String::from_utf8(header.to_vec()).unwrap();
        assert_eq!(parse_graph6(&s), Err(Graph6Error::Truncated { offset: 8 }));
    }

    #[test]
    fn errors_name_offsets() {
        assert_eq!(
            parse_graph6(""),
            Err(Graph6Error::MalformedHeader { offset: 0 })
        );
        assert_eq!(
            parse_graph6("A_?"),
            Err(Graph6Error::TrailingBits { offset: 2 })
        );
        // K2 with a padding bit set
        assert_eq!(
            parse_graph6("A`"),
            Err(Graph6Error::NonCanonicalPadding { offset: 1 })
        );
        assert_eq!(parse_graph6("C"), Err(Graph6Error::Truncated { offset: 1 }));
        assert_eq!(parse_graph6("A "), Err(Graph6Error::InvalidByte { offset: 1 }));
        // non-shortest header for n = 2
        assert_eq!(
            parse_graph6("~??A_"),
            Err(Graph6Error::MalformedHeader { offset: 0 })
        );
        assert!(matches!(
            parse_graph6(":Fa@x^"),
            Err(Graph6Error::UnsupportedFormat { format: "sparse6", .. })
        ));
    }

    #[test]
    fn optional_header_and_newline() {
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap(), Graph::path(2));
        assert_eq!(
            parse_graph6(">>graph6<<A_?"),
            Err(Graph6Error::TrailingBits { offset: 12 })
        );
    }
}
