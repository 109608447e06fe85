//! Plain-text graph files: `#` comment lines, a `n m` header, then `m` lines `u v` with `u < v`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_uint(tok: &str, line: usize) -> Result<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(line, format!("expected a decimal integer, got {tok:?}")));
    }
    tok.parse().map_err(|_| parse_err(line, format!("integer too large: {tok}")))
}

fn split_pair(text: &str, line: usize) -> Result<(usize, usize)> {
    let mut it = text.split(' ');
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((parse_uint(a, line)?, parse_uint(b, line)?)),
        _ => Err(parse_err(line, format!("expected two integers separated by one space, got {text:?}"))),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (hline, header) = loop {
        match lines.next() {
            Some((_, l)) if l.starts_with('#') => continue,
            Some(x) => break x,
            None => return Err(parse_err(0, "missing header line")),
        }
    };
    let (n, m) = split_pair(header, hline)?;
    let mut g = Graph::empty(n);
    let mut seen = HashSet::new();
    let mut count = 0;
    for (ln, l) in lines {
        if count == m {
            return Err(parse_err(ln, "more edge lines than the header declares"));
        }
        let (u, v) = split_pair(l, ln)?;
        if u == v {
            return Err(parse_err(ln, format!("self-loop at {u}")));
        }
        if u > v {
            return Err(parse_err(ln, format!("edge {u} {v} must list the smaller id first")));
        }
        if v >= n {
            return Err(parse_err(ln, format!("vertex {v} out of range for n={n}")));
        }
        if !seen.insert((u, v)) {
            return Err(parse_err(ln, format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v);
        count += 1;
    }
    if count != m {
        return Err(parse_err(0, format!("header declares {m} edges, found {count}")));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
