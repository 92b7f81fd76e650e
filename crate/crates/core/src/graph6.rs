//! graph6 interchange format: one printable ASCII line per graph.
//!
//! Layout: a size header, then the upper triangle of the adjacency matrix in
//! column order (`(0,1), (0,2), (1,2), (0,3), ...`), packed six bits per byte
//! most significant bit first, each byte offset by 63 into `'?'..='~'`.
//! Orders up to 62 use a single header byte; 63 and 64 use the four-byte
//! extended header. A stream may begin with the optional `>>graph6<<` marker.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

/// Optional stream header tolerated (and stripped) by the decoder.
pub const STREAM_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("byte {byte:#04x} at position {pos} is outside the graph6 alphabet")]
    InvalidChar { pos: usize, byte: u8 },
    #[error("graph6 line encodes zero vertices")]
    ZeroVertices,
    #[error("graph6 order {n} exceeds the {MAX_VERTICES}-vertex capacity")]
    TooLarge { n: usize },
    #[error("graph6 size header is truncated")]
    TruncatedHeader,
    #[error("graph6 body has {got} bytes, expected {expected}")]
    BodyLength { expected: usize, got: usize },
    #[error("graph6 padding bits are not zero")]
    NonzeroPadding,
}

fn body_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Encodes adjacency rows without materializing a `Graph`. The rows must
/// already satisfy the graph invariants.
pub(crate) fn encode_rows(n: usize, rows: &[u64]) -> Vec<u8> {
    debug_assert!(n >= 1 && n <= MAX_VERTICES && rows.len() == n);
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    let mut group = 0u8;
    let mut used = 0u8;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if rows[i] & (1 << j) != 0 {
                group |= 1;
            }
            used += 1;
            if used == 6 {
                out.push(63 + group);
                group = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push(63 + (group << (6 - used)));
    }
    out
}

/// Encodes a graph as a graph6 line (no trailing newline).
pub fn encode(g: &Graph) -> String {
    let bytes = encode_rows(g.n(), g.rows());
    // encode_rows emits only bytes in '?'..='~'.
    String::from_utf8(bytes).expect("graph6 output is ASCII")
}

/// Decodes one graph6 line. A leading `>>graph6<<` marker is stripped;
/// surrounding whitespace is not tolerated.
pub fn decode(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.strip_prefix(STREAM_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidChar { pos, byte: b });
        }
    }
    let (n, header_len) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // Eight-byte header: orders from 258048 up, far past capacity.
            return Err(Graph6Error::TooLarge { n: 258048 });
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedHeader);
        }
        let n = (((bytes[1] - 63) as usize) << 12)
            | (((bytes[2] - 63) as usize) << 6)
            | ((bytes[3] - 63) as usize);
        (n, 4)
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    if n == 0 {
        return Err(Graph6Error::ZeroVertices);
    }
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge { n });
    }
    let body = &bytes[header_len..];
    let expected = body_len(n);
    if body.len() != expected {
        return Err(Graph6Error::BodyLength {
            expected,
            got: body.len(),
        });
    }
    let mut rows = vec![0u64; n];
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = (body[bit / 6] - 63) as u16;
            if byte & (1 << (5 - bit % 6)) != 0 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    if bit % 6 != 0 {
        let pad = (body[bit / 6] - 63) as u16;
        let mask = (1u16 << (6 - bit % 6)) - 1;
        if pad & mask != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(Graph::from_rows_unchecked(n, &rows))
}
