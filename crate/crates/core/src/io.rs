//! Plain-text instance formats.
//!
//! Graph: line 1 is `n m`, followed by `m` lines `u v` with `1 <= u,v <= n`,
//! `u != v`, no duplicate edges in either orientation.
//!
//! Permutation: line 1 is `perm n`, line 2 holds the `n` values separated by
//! single spaces.
//!
//! Serialization is canonical (edges sorted with `u < v`), so generate →
//! parse → write round-trips byte-identically.

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::perm::{PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected {expected}")]
    Malformed { line: usize, expected: &'static str },
    #[error("line {line}: {source}")]
    BadEdge {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("{0}")]
    BadPermutation(#[from] PermError),
    #[error("empty input")]
    Empty,
}

fn parse_uint(tok: &str, line: usize, expected: &'static str) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| ParseError::Malformed { line, expected })
}

/// Parses the edge-list format.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(ParseError::Empty)?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(ParseError::Malformed {
            line: 1,
            expected: "header `n m`",
        });
    }
    let n = parse_uint(toks[0], 1, "header `n m`")?;
    let m = parse_uint(toks[1], 1, "header `n m`")?;

    let mut edges = Vec::with_capacity(m);
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            return Err(ParseError::Malformed {
                line,
                expected: "edge line `u v`",
            });
        }
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(ParseError::Malformed {
                line,
                expected: "edge line `u v`",
            });
        }
        let u = parse_uint(toks[0], line, "edge line `u v`")?;
        let v = parse_uint(toks[1], line, "edge line `u v`")?;
        edges.push(((u, v), line));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    // Pre-check every edge so the offending line number is reported.
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut acc: Vec<(usize, usize)> = Vec::with_capacity(m);
    for ((u, v), line) in edges {
        let source = if u == 0 || u > n {
            Some(GraphError::VertexOutOfRange { v: u, n })
        } else if v == 0 || v > n {
            Some(GraphError::VertexOutOfRange { v, n })
        } else if u == v {
            Some(GraphError::SelfLoop { u })
        } else if !seen.insert((u.min(v), u.max(v))) {
            Some(GraphError::DuplicateEdge { u, v })
        } else {
            None
        };
        if let Some(source) = source {
            return Err(ParseError::BadEdge { line, source });
        }
        acc.push((u, v));
    }
    Ok(Graph::from_edges(n, &acc).expect("validated above"))
}

/// Canonical edge-list serialization.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u, v));
    }
    out
}

/// Parses the permutation format.
pub fn parse_permutation(text: &str) -> Result<Permutation, ParseError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(ParseError::Empty)?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "perm" {
        return Err(ParseError::Malformed {
            line: 1,
            expected: "header `perm n`",
        });
    }
    let n = parse_uint(toks[1], 1, "header `perm n`")?;
    let values_line = lines.next().ok_or(ParseError::Malformed {
        line: 2,
        expected: "a line of n values",
    })?;
    let mut values = Vec::with_capacity(n);
    for tok in values_line.split_whitespace() {
        values.push(parse_uint(tok, 2, "a line of n values")?);
    }
    if values.len() != n {
        return Err(ParseError::Malformed {
            line: 2,
            expected: "a line of n values",
        });
    }
    Ok(Permutation::new(values)?)
}

/// Canonical permutation serialization.
pub fn write_permutation(p: &Permutation) -> String {
    let vals: Vec<String> = p.values().iter().map(|v| v.to_string()).collect();
    format!("perm {}\n{}\n", p.n(), vals.join(" "))
}

/// Either instance kind, detected from the header.
pub enum Instance {
    Graph(Graph),
    Permutation(Permutation),
}

/// Detects the format from the first token and parses accordingly.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let first = text.split_whitespace().next().ok_or(ParseError::Empty)?;
    if first == "perm" {
        Ok(Instance::Permutation(parse_permutation(text)?))
    } else {
        Ok(Instance::Graph(parse_graph(text)?))
    }
}
