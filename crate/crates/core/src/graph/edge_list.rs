//! Plain-text edge lists:
//!
//! ```text
//! # comment
//! p 5
//! e 0 1
//! e 1 2
//! ```
//!
//! Tokens are whitespace separated, vertices 0-based, line endings LF or
//! CRLF. Duplicate edges are merged; self-loops are rejected.

use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str, label: &str) -> Result<Graph> {
    let mut vertex_count: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let mut tokens = line.split_whitespace();
        let number = |tok: Option<&str>, what: &str| -> Result<usize> {
            let tok = tok.ok_or_else(|| err(format!("missing {what}")))?;
            tok.parse::<usize>()
                .map_err(|_| err(format!("{what} {tok:?} is not a nonnegative integer")))
        };
        match tokens.next() {
            Some("p") => {
                if vertex_count.is_some() {
                    return Err(err("duplicate 'p' line".into()));
                }
                let n = number(tokens.next(), "vertex count")?;
                if n == 0 {
                    return Err(err("vertex count must be >= 1".into()));
                }
                vertex_count = Some((n, line_no));
            }
            Some("e") => {
                let Some((n, _)) = vertex_count else {
                    return Err(err("'e' line before 'p' line".into()));
                };
                let u = number(tokens.next(), "endpoint")?;
                let v = number(tokens.next(), "endpoint")?;
                if u >= n || v >= n {
                    return Err(err(format!(
                        "edge ({u}, {v}) out of range for {n} vertices"
                    )));
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                edges.push((u, v));
            }
            Some(other) => return Err(err(format!("unknown record type {other:?}"))),
            None => unreachable!("blank lines skipped"),
        }
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unexpected token {extra:?}"),
            });
        }
    }
    let (n, _) = vertex_count.ok_or(Error::Parse {
        line: 0,
        message: "missing 'p <vertex_count>' line".into(),
    })?;
    Graph::from_edges(n, edges, label)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_edge_list(&text, &format!("file:{}", path.display()))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# {}\np {}\n", g.label(), g.vertex_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}
