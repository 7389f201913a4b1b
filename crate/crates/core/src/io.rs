//! Text interchange formats.
//!
//! Colored edge list:
//!
//! ```text
//! # comment
//! n m
//! u v color      (m lines, u < v)
//! ```
//!
//! Digraph list: `n a` followed by `a` lines `u v` for the arc `u -> v`.
//!
//! JSON: `{"n": 3, "edges": [[0, 1, 0], [0, 2, 1], [1, 2, 2]]}`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColorId, EdgeColoredGraph, OrientedGraph};

/// Fixed DOT palette, cycled over colors in increasing id order.
pub const DOT_PALETTE: [&str; 12] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45", "#9a6324", "#800000",
    "#469990", "#000075",
];

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const N: usize>(line_no: usize, line: &str, what: &str) -> Result<[u64; N]> {
    let mut out = [0u64; N];
    let mut fields = line.split_whitespace();
    for slot in out.iter_mut() {
        let field = fields.next().ok_or_else(|| parse_err(line_no, format!("expected {N} fields for {what}")))?;
        *slot = field.parse().map_err(|_| parse_err(line_no, format!("'{field}' is not a non-negative integer")))?;
    }
    if fields.next().is_some() {
        return Err(parse_err(line_no, format!("expected {N} fields for {what}")));
    }
    Ok(out)
}

fn to_usize(line: usize, x: u64) -> Result<usize> {
    usize::try_from(x).map_err(|_| parse_err(line, format!("{x} is too large")))
}

/// Parses the colored edge-list format. Strict: the edge count must match
/// the header, endpoints must satisfy `u < v < n`, and pairs may not repeat.
pub fn parse_edgelist(text: &str) -> Result<EdgeColoredGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header 'n m'"))?;
    let [n, m] = parse_fields::<2>(hline, header, "header 'n m'")?;
    let n = to_usize(hline, n)?;
    let m = to_usize(hline, m)?;
    let mut edges = Vec::with_capacity(m.min(1 << 20));
    let mut seen = HashMap::new();
    let mut last_line = hline;
    for (line_no, line) in lines {
        last_line = line_no;
        if edges.len() == m {
            return Err(parse_err(line_no, format!("more than m = {m} edge lines")));
        }
        let [u, v, c] = parse_fields::<3>(line_no, line, "edge 'u v color'")?;
        let (u, v) = (to_usize(line_no, u)?, to_usize(line_no, v)?);
        let color = u32::try_from(c).map_err(|_| parse_err(line_no, format!("color {c} is too large")))?;
        if u >= n || v >= n {
            return Err(parse_err(line_no, format!("vertex {} out of range for n = {n}", u.max(v))));
        }
        if u >= v {
            return Err(parse_err(line_no, format!("expected u < v, got {u} {v}")));
        }
        if let Some(first) = seen.insert((u, v), line_no) {
            return Err(parse_err(line_no, format!("duplicate edge {{{u}, {v}}} (first on line {first})")));
        }
        edges.push((u, v, ColorId(color)));
    }
    if edges.len() != m {
        return Err(parse_err(last_line, format!("header declares m = {m} but found {} edges", edges.len())));
    }
    EdgeColoredGraph::build(n, edges).map_err(|e| parse_err(hline, e.to_string()))
}

/// Writes the canonical edge-list form: header then edges in sorted order.
pub fn write_edgelist(g: &EdgeColoredGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for &(u, v, c) in g.edges() {
        writeln!(out, "{u} {v} {c}").unwrap();
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize, u32)>,
}

/// Parses the JSON form with the same validation as the edge list.
pub fn parse_json(text: &str) -> Result<EdgeColoredGraph> {
    let doc: GraphJson = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    let mut seen = HashMap::new();
    for (i, &(u, v, _)) in doc.edges.iter().enumerate() {
        if u >= doc.n || v >= doc.n {
            return Err(parse_err(1, format!("edge {i}: vertex {} out of range for n = {}", u.max(v), doc.n)));
        }
        if u >= v {
            return Err(parse_err(1, format!("edge {i}: expected u < v, got {u} {v}")));
        }
        if seen.insert((u, v), i).is_some() {
            return Err(parse_err(1, format!("edge {i}: duplicate edge {{{u}, {v}}}")));
        }
    }
    EdgeColoredGraph::build(doc.n, doc.edges.into_iter().map(|(u, v, c)| (u, v, ColorId(c))))
        .map_err(|e| parse_err(1, e.to_string()))
}

/// Compact JSON form, newline terminated.
pub fn write_json(g: &EdgeColoredGraph) -> String {
    let doc = GraphJson { n: g.n(), edges: g.edges().iter().map(|&(u, v, c)| (u, v, c.0)).collect() };
    let mut s = serde_json::to_string(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Parses either format, choosing JSON when the input starts with `{`.
pub fn parse_graph(text: &str) -> Result<EdgeColoredGraph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edgelist(text)
    }
}

/// Graphviz export. Colors are drawn from [`DOT_PALETTE`] by rank in
/// increasing color id order; every edge is labeled with its color id.
pub fn write_dot(g: &EdgeColoredGraph) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for &(u, v, c) in g.edges() {
        let rank = g.palette().binary_search(&c).expect("color in palette");
        let hex = DOT_PALETTE[rank % DOT_PALETTE.len()];
        writeln!(out, "  {u} -- {v} [color=\"{hex}\", label=\"{c}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Parses the digraph format; digons are rejected.
pub fn parse_digraph(text: &str) -> Result<OrientedGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header 'n a'"))?;
    let [n, a] = parse_fields::<2>(hline, header, "header 'n a'")?;
    let n = to_usize(hline, n)?;
    let a = to_usize(hline, a)?;
    let mut arcs = Vec::with_capacity(a.min(1 << 20));
    let mut seen = HashMap::new();
    let mut last_line = hline;
    for (line_no, line) in lines {
        last_line = line_no;
        if arcs.len() == a {
            return Err(parse_err(line_no, format!("more than a = {a} arc lines")));
        }
        let [u, v] = parse_fields::<2>(line_no, line, "arc 'u v'")?;
        let (u, v) = (to_usize(line_no, u)?, to_usize(line_no, v)?);
        if u >= n || v >= n {
            return Err(parse_err(line_no, format!("vertex {} out of range for n = {n}", u.max(v))));
        }
        if u == v {
            return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
        }
        if let Some(first) = seen.get(&(v, u)) {
            return Err(parse_err(line_no, format!("arc {u}->{v} forms a digon with line {first}")));
        }
        if let Some(first) = seen.insert((u, v), line_no) {
            return Err(parse_err(line_no, format!("duplicate arc {u}->{v} (first on line {first})")));
        }
        arcs.push((u, v));
    }
    if arcs.len() != a {
        return Err(parse_err(last_line, format!("header declares a = {a} but found {} arcs", arcs.len())));
    }
    OrientedGraph::build(n, arcs).map_err(|e| parse_err(hline, e.to_string()))
}

pub fn write_digraph(d: &OrientedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", d.n(), d.a()).unwrap();
    for &(u, v) in d.arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const K3: &str = "# rainbow triangle\n3 3\n0 1 0\n0 2 1\n1 2 2\n";

    #[test]
    fn edgelist_parse_and_write() {
        let g = parse_edgelist(K3).unwrap();
        assert_eq!((g.n(), g.m(), g.c()), (3, 3, 3));
        assert_eq!(write_edgelist(&g), "3 3\n0 1 0\n0 2 1\n1 2 2\n");
    }

    #[test]
    fn edgelist_errors_carry_line_numbers() {
        let wrong_m = parse_edgelist("3 2\n0 1 0\n").unwrap_err();
        assert!(matches!(wrong_m, Error::Parse { line: 2, .. }), "{wrong_m}");
        let too_many = parse_edgelist("3 1\n0 1 0\n1 2 0\n").unwrap_err();
        assert!(matches!(too_many, Error::Parse { line: 3, .. }));
        let range = parse_edgelist("3 1\n\n0 3 0\n").unwrap_err();
        assert!(matches!(range, Error::Parse { line: 3, .. }));
        let dup = parse_edgelist("3 2\n0 1 0\n0 1 1\n").unwrap_err();
        assert!(matches!(dup, Error::Parse { line: 3, .. }));
        let order = parse_edgelist("3 1\n1 0 0\n").unwrap_err();
        assert!(matches!(order, Error::Parse { line: 2, .. }));
        let junk = parse_edgelist("3 1\n0 1 x\n").unwrap_err();
        assert!(matches!(junk, Error::Parse { line: 2, .. }));
        assert!(parse_edgelist("").is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let g = parse_edgelist(K3).unwrap();
        let js = write_json(&g);
        assert_eq!(js, "{\"n\":3,\"edges\":[[0,1,0],[0,2,1],[1,2,2]]}\n");
        assert_eq!(parse_json(&js).unwrap(), g);
        assert_eq!(parse_graph(&js).unwrap(), g);
        assert!(parse_json(r#"{"n":2,"edges":[[0,1,0],[0,1,1]]}"#).is_err());
        assert!(parse_json(r#"{"n":2,"edges":[[0,2,0]]}"#).is_err());
    }

    #[test]
    fn dot_uses_distinct_palette_entries() {
        let g = parse_edgelist(K3).unwrap();
        let dot = write_dot(&g);
        for hex in &DOT_PALETTE[..3] {
            assert!(dot.contains(hex), "{dot}");
        }
        assert!(dot.contains("0 -- 1 [color=\"#e6194b\", label=\"0\"]"));
    }

    #[test]
    fn digraph_parse() {
        let d = parse_digraph("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(d.a(), 3);
        assert_eq!(write_digraph(&d), "3 3\n0 1\n1 2\n2 0\n");
        let digon = parse_digraph("2 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(digon, Error::Parse { line: 3, .. }));
    }
}
