//! graph6 and edge-list formats.
//!
//! graph6 reference: <https://users.cecs.anu.edu.au/~bdm/data/formats.txt>. Only the short
//! form (n <= 62) is supported.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub const GRAPH6_HEADER: &str = ">>graph6<<";
pub const GRAPH6_MAX_N: usize = 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {0:#04x} at position {1} is outside the graph6 range 63..=126")]
    BadByte(u8, usize),
    #[error("malformed length prefix: {0}")]
    LengthPrefix(String),
    #[error("graph6 bit region has {found} characters, expected {expected}")]
    BitRegion { expected: usize, found: usize },
    #[error("graph6 padding bits are not zero")]
    Padding,
    #[error("{0} vertices exceed the short graph6 form (max {GRAPH6_MAX_N})")]
    TooLarge(usize),
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parses a single graph6 line. A leading `>>graph6<<` header and trailing whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(FormatError::BadByte(b, i));
        }
    }
    if bytes[0] == 126 {
        return Err(FormatError::LengthPrefix(
            "long-form vertex counts (n > 62) are not supported".into(),
        ));
    }
    let n = (bytes[0] - 63) as usize;
    let body = &bytes[1..];
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::BitRegion {
            expected,
            found: body.len(),
        });
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(FormatError::Padding);
    }
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
    Ok(Graph::new(n, edges)?)
}

/// Encodes a graph in short-form graph6 (no header).
pub fn to_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.vertex_count();
    if n > GRAPH6_MAX_N {
        return Err(FormatError::TooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(1 + bits.div_ceil(6));
    out.push(63 + n as u8);
    let mut word = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            word = word << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(63 + word);
                word = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push(63 + (word << (6 - k % 6)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses every non-empty line of a graph6 stream.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, FormatError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

/// Parses the edge-list format: `u v` per line, optional `n <count>` header, `#` comments.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen_edge = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| FormatError::EdgeList { line: line_no, msg };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(err(format!("expected two tokens, found {}", tokens.len())));
        }
        if tokens[0] == "n" {
            if seen_edge || declared.is_some() {
                return Err(err("the `n <count>` header must come first".into()));
            }
            declared = Some(parse_index(tokens[1]).map_err(err)?);
            continue;
        }
        let u = parse_index(tokens[0]).map_err(err)?;
        let v = parse_index(tokens[1]).map_err(err)?;
        if u == v {
            return Err(err(format!("loop {u} {u}")));
        }
        seen_edge = true;
        edges.push((u, v));
    }
    let n = match declared {
        Some(n) => n,
        None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    Ok(Graph::new(n, edges)?)
}

fn parse_index(token: &str) -> Result<usize, String> {
    if token.starts_with('-') && token[1..].parse::<u64>().is_ok() {
        return Err(format!("negative vertex index {token}"));
    }
    token
        .parse::<usize>()
        .map_err(|_| format!("not a non-negative integer: {token:?}"))
}

/// Serializes as an edge list with an explicit `n` header.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.vertex_count());
    for e in g.edges() {
        s.push_str(&format!("{} {}\n", e.0, e.1));
    }
    s
}

/// Reads a graph file in either format. Lines with two whitespace-separated tokens mean an
/// edge list; otherwise each line is a graph6 string.
pub fn parse_graphs_auto(text: &str) -> Result<Vec<Graph>, FormatError> {
    let looks_like_edge_list = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .any(|l| l.split_whitespace().count() > 1);
    if looks_like_edge_list {
        Ok(vec![parse_edge_list(text)?])
    } else {
        parse_graph6_lines(text)
    }
}
