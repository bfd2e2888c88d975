//! Edge-list and DIMACS graph files.
//!
//! Edge list: `#` comment lines, a header `n m`, then `m` lines `u v`
//! with 0-indexed ids. DIMACS: `c` comment lines, `p edge n m`, then
//! `e u v` lines with 1-indexed ids.

use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("{what} {tok:?} is not a non-negative integer")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with('c'));
    match first {
        Some(l) if l.starts_with('p') => parse_dimacs(text),
        _ => parse_edge_list(text),
    }
}

pub fn read_graph_file(path: impl AsRef<Path>) -> Result<Graph> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_graph(&text)
}

fn check_edge(u: usize, v: usize, n: usize, line: usize) -> Result<()> {
    for x in [u, v] {
        if x >= n {
            return Err(parse_err(line, format!("vertex {x} out of range (n = {n})")));
        }
    }
    if u == v {
        return Err(parse_err(line, format!("self-loop at vertex {u}")));
    }
    Ok(())
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let mut toks = l.split_whitespace();
        let a = parse_num(toks.next(), line, "first field")?;
        let b = parse_num(toks.next(), line, "second field")?;
        if toks.next().is_some() {
            return Err(parse_err(line, "expected exactly two fields"));
        }
        match header {
            None => header = Some((a, b)),
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(parse_err(line, format!("more than the declared {m} edges")));
                }
                check_edge(a, b, n, line)?;
                edges.push((a, b));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(last_line.max(1), "missing `n m` header"))?;
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, &edges)
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') || l.starts_with('#') {
            continue;
        }
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => return Err(parse_err(line, format!("unsupported format {other:?}"))),
                }
                n = Some(parse_num(toks.next(), line, "vertex count")?);
                parse_num(toks.next(), line, "edge count")?;
            }
            Some("e") => {
                let n = n.ok_or_else(|| parse_err(line, "edge before problem line"))?;
                let u = parse_num(toks.next(), line, "endpoint")?;
                let v = parse_num(toks.next(), line, "endpoint")?;
                if u == 0 || v == 0 {
                    return Err(parse_err(line, "DIMACS vertex ids are 1-indexed"));
                }
                check_edge(u - 1, v - 1, n, line)?;
                edges.push((u - 1, v - 1));
            }
            Some(tok) => return Err(parse_err(line, format!("unknown line type {tok:?}"))),
            None => {}
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "missing problem line"))?;
    Graph::new(n, &edges)
}

/// Canonical edge-list text: header then edges `u < v` in lexicographic order.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}
