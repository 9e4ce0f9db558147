//! graph6 codec: size header then the upper triangle, column by column
//! (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed big-endian into 6-bit
//! chunks offset by 63.

use crate::error::FormatError;
use crate::graph::Graph;

/// Largest order representable with the 4-byte size header.
pub const MAX_GRAPH6_N: usize = 258_047;

const BIAS: u8 = 63;
const LONG_MARK: u8 = 126;

/// Decodes a graph6 string. An optional `>>graph6<<` header and
/// surrounding whitespace are accepted; padding bits are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(BIAS..=LONG_MARK).contains(&byte) {
            return Err(FormatError::Graph6Byte { byte, offset });
        }
    }

    let (n, body) = if bytes[0] != LONG_MARK {
        ((bytes[0] - BIAS) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == LONG_MARK {
        if bytes.len() < 8 {
            return Err(FormatError::Graph6Length {
                n: 0,
                expected: 8,
                found: bytes.len(),
            });
        }
        (chunks_to_usize(&bytes[2..8]), &bytes[8..])
    } else {
        if bytes.len() < 4 {
            return Err(FormatError::Graph6Length {
                n: 0,
                expected: 4,
                found: bytes.len(),
            });
        }
        (chunks_to_usize(&bytes[1..4]), &bytes[4..])
    };

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::Graph6Length {
            n,
            expected,
            found: body.len(),
        });
    }

    let mut g = Graph::new(n);
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let chunk = body[k / 6] - BIAS;
            if chunk & (0x20 >> (k % 6)) != 0 {
                g.add_edge(u, v)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

fn chunks_to_usize(chunks: &[u8]) -> usize {
    chunks
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize)
}

/// Encodes `g` in graph6 without header or trailing newline.
pub fn encode_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.n();
    if n > MAX_GRAPH6_N {
        return Err(FormatError::Graph6TooLarge { n });
    }
    let mut out: Vec<u8> = Vec::with_capacity(4 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(LONG_MARK);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut chunk = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            chunk = (chunk << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk + BIAS);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + BIAS);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
