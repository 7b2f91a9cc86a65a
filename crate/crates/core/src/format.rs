//! Plain-text file formats.
//!
//! Hypergraph files:
//!
//! ```text
//! # comment
//! p hyper <n> <m>
//! e <v1> <v2> ... <vk>
//! ```
//!
//! The header is optional; without it `n` is one more than the largest vertex
//! id. With it, every vertex must be `< n` and the file must hold exactly `m`
//! edge lines. Coloring files hold one `<vertex> <color>` line per vertex,
//! vertices `0, 1, 2, ..` in order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError, VertexColoring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| err(line, format!("invalid {what} `{tok}`")))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();

    for (lineno, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(err(lineno, "duplicate header"));
                }
                if !edges.is_empty() {
                    return Err(err(lineno, "header must precede edges"));
                }
                if toks.next() != Some("hyper") {
                    return Err(err(lineno, "expected `p hyper <n> <m>`"));
                }
                let rest: Vec<&str> = toks.collect();
                if rest.len() != 2 {
                    return Err(err(lineno, "expected `p hyper <n> <m>`"));
                }
                let n = parse_usize(rest[0], lineno, "vertex count")?;
                let m = parse_usize(rest[1], lineno, "edge count")?;
                header = Some((n, m, lineno));
            }
            Some("e") => {
                let mut edge = Vec::new();
                for tok in toks {
                    let v = parse_usize(tok, lineno, "vertex id")?;
                    if let Some((n, _, _)) = header {
                        if v >= n {
                            return Err(err(lineno, format!("vertex {v} out of range for n = {n}")));
                        }
                    }
                    edge.push(v);
                }
                let mut distinct = edge.clone();
                distinct.sort_unstable();
                distinct.dedup();
                if distinct.len() < 2 {
                    return Err(err(
                        lineno,
                        format!(
                            "edge has {} distinct vertices; hyperedges must have at least 2",
                            distinct.len()
                        ),
                    ));
                }
                edges.push(edge);
                edge_lines.push(lineno);
            }
            Some(other) => return Err(err(lineno, format!("unknown line type `{other}`"))),
            None => unreachable!("blank lines are filtered"),
        }
    }

    let n = match header {
        Some((n, m, lineno)) => {
            if edges.len() != m {
                return Err(err(lineno, format!("header declares {m} edges, found {}", edges.len())));
            }
            n
        }
        None => edges.iter().flatten().max().map_or(0, |&v| v + 1),
    };
    Hypergraph::new(n, &edges).map_err(|e| match e {
        HypergraphError::EdgeTooSmall { edge, .. } | HypergraphError::VertexOutOfRange { edge, .. } => {
            err(edge_lines[edge], e.to_string())
        }
    })
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p hyper {} {}", h.n(), h.m());
    for edge in h.edges() {
        out.push('e');
        for v in edge {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_coloring(text: &str) -> Result<VertexColoring, ParseError> {
    let mut colors = Vec::new();
    for (lineno, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(err(lineno, "expected `<vertex_id> <color_index>`"));
        }
        let v = parse_usize(toks[0], lineno, "vertex id")?;
        let c = parse_usize(toks[1], lineno, "color index")?;
        if v != colors.len() {
            return Err(err(
                lineno,
                format!("expected vertex {} (one line per vertex, sorted by id), found {v}", colors.len()),
            ));
        }
        colors.push(c);
    }
    Ok(VertexColoring::new(colors))
}

pub fn write_coloring(c: &VertexColoring) -> String {
    let mut out = String::new();
    for (v, col) in c.colors().iter().enumerate() {
        let _ = writeln!(out, "{v} {col}");
    }
    out
}
