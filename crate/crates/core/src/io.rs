//! Edge-list text and graph6 readers and writers.
//!
//! graph6 follows McKay's bit-packed format exactly: order prefix, then the
//! upper triangle of the adjacency matrix in column order, six bits per byte
//! offset by 63.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order either reader accepts.
pub const MAX_ORDER: usize = 1 << 26;

const GRAPH6_HEADER: &[u8] = b">>graph6<<";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl GraphFormat {
    /// Sniffs the format from a file extension; anything unknown is an edge list.
    pub fn from_path(path: &Path) -> GraphFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => GraphFormat::Graph6,
            _ => GraphFormat::EdgeList,
        }
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(GraphFormat::EdgeList),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(Error::OutOfRange(format!("unknown graph format {other:?}"))),
        }
    }
}

impl fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphFormat::EdgeList => "edge-list",
            GraphFormat::Graph6 => "graph6",
        })
    }
}

pub fn read_graph(bytes: &[u8], format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => read_edge_list(bytes),
        GraphFormat::Graph6 => read_graph6(bytes),
    }
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> Vec<u8> {
    match format {
        GraphFormat::EdgeList => write_edge_list(g).into_bytes(),
        GraphFormat::Graph6 => {
            let mut out = write_graph6(g).into_bytes();
            out.push(b'\n');
            out
        }
    }
}

/// Parses `u v` lines. A line holding a single index declares that vertex,
/// which is how isolated vertices (and the one-vertex graph) are written.
pub fn read_edge_list(bytes: &[u8]) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut order = 0usize;
    let mut line_start = 0usize;
    for line in bytes.split(|&b| b == b'\n') {
        let content = match line.iter().position(|&b| b == b'#') {
            Some(p) => &line[..p],
            None => line,
        };
        let mut tokens = Vec::with_capacity(2);
        let mut i = 0;
        while i < content.len() {
            if content[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            while i < content.len() && !content[i].is_ascii_whitespace() {
                i += 1;
            }
            tokens.push((line_start + start, &content[start..i]));
        }
        let indices = tokens
            .iter()
            .map(|&(offset, tok)| parse_index(offset, tok))
            .collect::<Result<Vec<_>>>()?;
        match indices.as_slice() {
            [] => {}
            [v] => order = order.max(v + 1),
            [u, v] => {
                order = order.max(u + 1).max(v + 1);
                edges.push((*u, *v));
            }
            _ => {
                return Err(Error::Parse {
                    offset: tokens[2].0,
                    message: "expected at most two vertex indices per line".into(),
                })
            }
        }
        line_start += line.len() + 1;
    }
    Graph::from_edges(order, edges)
}

fn parse_index(offset: usize, tok: &[u8]) -> Result<usize> {
    let text = std::str::from_utf8(tok).map_err(|_| Error::Parse {
        offset,
        message: "invalid UTF-8".into(),
    })?;
    let v: usize = text.parse().map_err(|_| Error::Parse {
        offset,
        message: format!("invalid vertex index {text:?}"),
    })?;
    if v >= MAX_ORDER {
        return Err(Error::VertexOutOfRange {
            index: v,
            order: MAX_ORDER,
        });
    }
    Ok(v)
}

/// Edges in lexicographic order, then isolated vertices one per line.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    for v in (0..g.order()).filter(|&v| g.degree(v) == 0) {
        out.push_str(&format!("{v}\n"));
    }
    out
}

/// Decodes a single graph6 record. Surrounding whitespace and the optional
/// `>>graph6<<` header are ignored.
pub fn read_graph6(bytes: &[u8]) -> Result<Graph> {
    let mut start = 0;
    if bytes.starts_with(GRAPH6_HEADER) {
        start = GRAPH6_HEADER.len();
    }
    while start < bytes.len() && bytes[start].is_ascii_whitespace() {
        start += 1;
    }
    let mut end = bytes.len();
    while end > start && bytes[end - 1].is_ascii_whitespace() {
        end -= 1;
    }
    decode_graph6(&bytes[start..end], start)
}

/// Decodes every non-empty line of a graph6 stream.
pub fn read_graph6_lines(bytes: &[u8]) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in bytes.split(|&b| b == b'\n') {
        let mut body = line;
        let mut base = offset;
        if body.starts_with(GRAPH6_HEADER) {
            body = &body[GRAPH6_HEADER.len()..];
            base += GRAPH6_HEADER.len();
        }
        let trimmed = body.trim_ascii_end();
        if !trimmed.is_empty() {
            out.push(decode_graph6(trimmed, base)?);
        }
        offset += line.len() + 1;
    }
    Ok(out)
}

fn decode_graph6(data: &[u8], base: usize) -> Result<Graph> {
    let err = |i: usize, message: &str| Error::Parse {
        offset: base + i,
        message: message.into(),
    };
    if let Some(i) = data.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(err(i, "byte outside the graph6 range 63..=126"));
    }
    let (n, mut pos) = match data {
        [] => return Err(err(0, "empty graph6 record")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(err(data.len(), "truncated order field"));
            }
            (sextets(&rest[..6]), 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err(data.len(), "truncated order field"));
            }
            (sextets(&rest[..3]), 4)
        }
        [first, ..] => ((first - 63) as u64, 1),
    };
    if n >= MAX_ORDER as u64 {
        return Err(Error::VertexOutOfRange {
            index: n as usize,
            order: MAX_ORDER,
        });
    }
    let n = n as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if data.len() - pos != needed {
        return Err(err(
            data.len().min(pos + needed),
            &format!(
                "expected {needed} adjacency bytes, found {}",
                data.len() - pos
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = data[pos + bit / 6] - 63;
            if byte & (0x20 >> (bit % 6)) != 0 {
                edges.push((u, v));
            }
            bit += 1;
            if bit == bits {
                break 'outer;
            }
        }
    }
    pos += needed;
    if !bits.is_multiple_of(6) {
        let last = data[pos - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(pos - 1, "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

fn sextets(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(0u64, |acc, &b| (acc << 6) | (b - 63) as u64)
}

/// Encodes `g` as a graph6 string without header or newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n as u64 >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        let nbrs = g.neighbors(v);
        for u in 0..v {
            acc <<= 1;
            if nbrs.binary_search(&u).is_ok() {
                acc |= 1;
            }
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}
