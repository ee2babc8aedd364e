//! Line-oriented graph file format.
//!
//! ```text
//! graph <name>
//! v <id> [<color> ...]      # or v <lo>..<hi> [<color> ...]
//! e <id> <id>
//! annot <id> ...
//! bnd <id> ...
//! ```

use super::{BoundariedGraph, Graph};
use crate::error::{Error, Result};
use crate::vset::VertexSet;
use std::collections::{BTreeMap, BTreeSet};

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

fn parse_id(tok: &str, line: usize) -> Result<u32> {
    tok.parse::<u32>()
        .or_else(|_| perr(line, format!("expected vertex id, found '{tok}'")))
}

/// Parses a graph file. Files without a `bnd` line yield an empty boundary.
pub fn parse_graph(text: &str) -> Result<BoundariedGraph> {
    let mut name: Option<String> = None;
    let mut verts: BTreeMap<u32, BTreeSet<String>> = BTreeMap::new();
    let mut edges: Vec<(u32, u32, usize)> = Vec::new();
    let mut annot: Option<(Vec<u32>, usize)> = None;
    let mut bnd: Option<(Vec<u32>, usize)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "graph" => {
                if name.is_some() {
                    return perr(line, "duplicate graph header");
                }
                if toks.len() > 2 {
                    return perr(line, "graph header takes one name");
                }
                name = Some(toks.get(1).copied().unwrap_or("").to_string());
            }
            "v" => {
                if toks.len() < 2 {
                    return perr(line, "vertex line needs an id");
                }
                let ids: Vec<u32> = if let Some((lo, hi)) = toks[1].split_once("..") {
                    let (lo, hi) = (parse_id(lo, line)?, parse_id(hi, line)?);
                    if lo > hi {
                        return perr(line, "empty vertex range");
                    }
                    (lo..=hi).collect()
                } else {
                    vec![parse_id(toks[1], line)?]
                };
                for c in &toks[2..] {
                    if !is_color_name(c) {
                        return perr(line, format!("invalid color name '{c}'"));
                    }
                }
                for id in ids {
                    if verts.contains_key(&id) {
                        return perr(line, format!("duplicate vertex {id}"));
                    }
                    verts.insert(id, toks[2..].iter().map(|s| s.to_string()).collect());
                }
            }
            "e" => {
                if toks.len() != 3 {
                    return perr(line, "edge line needs exactly two ids");
                }
                let (a, b) = (parse_id(toks[1], line)?, parse_id(toks[2], line)?);
                if a == b {
                    return perr(line, format!("self-loop on vertex {a}"));
                }
                edges.push((a, b, line));
            }
            "annot" => {
                if annot.is_some() {
                    return perr(line, "duplicate annot line");
                }
                let ids = toks[1..]
                    .iter()
                    .map(|t| parse_id(t, line))
                    .collect::<Result<Vec<_>>>()?;
                annot = Some((ids, line));
            }
            "bnd" => {
                if bnd.is_some() {
                    return perr(line, "duplicate bnd line");
                }
                let ids = toks[1..]
                    .iter()
                    .map(|t| parse_id(t, line))
                    .collect::<Result<Vec<_>>>()?;
                bnd = Some((ids, line));
            }
            other => return perr(line, format!("unknown directive '{other}'")),
        }
    }

    let labels: Vec<u32> = verts.keys().copied().collect();
    let mut g = Graph::with_labels(labels)?;
    g.set_name(name.unwrap_or_default());
    let lookup = |g: &Graph, id: u32, line: usize| -> Result<usize> {
        g.index_of(id).ok_or(Error::Parse {
            line,
            msg: format!("undeclared vertex {id}"),
        })
    };
    let mut seen_edges = BTreeSet::new();
    for &(a, b, line) in &edges {
        let (u, v) = (lookup(&g, a, line)?, lookup(&g, b, line)?);
        if !seen_edges.insert((u.min(v), u.max(v))) {
            return perr(line, format!("duplicate edge {a} {b}"));
        }
        g.add_edge(u, v);
    }
    let mut colors: BTreeMap<String, VertexSet> = BTreeMap::new();
    for (idx, cs) in verts.values().enumerate() {
        for c in cs {
            colors.entry(c.clone()).or_default().insert(idx);
        }
    }
    for (c, s) in colors {
        g.set_color(c, s);
    }
    let mut x = VertexSet::EMPTY;
    if let Some((ids, line)) = annot {
        for id in ids {
            x.insert(lookup(&g, id, line)?);
        }
    }
    let mut boundary = Vec::new();
    if let Some((ids, line)) = bnd {
        for id in ids {
            let v = lookup(&g, id, line)?;
            if boundary.contains(&v) {
                return perr(line, format!("duplicate boundary id {id}"));
            }
            boundary.push(v);
        }
    }
    BoundariedGraph::new(g, x, boundary)
}

fn is_color_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Prints the normalized file form: one `v` line per vertex with its colors
/// sorted, edges in lexicographic order, then `annot` and `bnd` when nonempty.
pub fn print_graph(bg: &BoundariedGraph) -> String {
    let g = &bg.graph;
    let mut out = String::new();
    out.push_str("graph");
    if !g.name().is_empty() {
        out.push(' ');
        out.push_str(g.name());
    }
    out.push('\n');
    for v in 0..g.n() {
        out.push_str(&format!("v {}", g.label(v)));
        for (c, s) in g.colors() {
            if s.contains(v) {
                out.push(' ');
                out.push_str(c);
            }
        }
        out.push('\n');
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", g.label(u), g.label(v)));
    }
    if !bg.annot.is_empty() {
        out.push_str("annot");
        for v in bg.annot.iter() {
            out.push_str(&format!(" {}", g.label(v)));
        }
        out.push('\n');
    }
    if !bg.boundary.is_empty() {
        out.push_str("bnd");
        for &v in &bg.boundary {
            out.push_str(&format!(" {}", g.label(v)));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_c4_with_range() {
        let bg = parse_graph("graph c4\nv 0..3\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n").unwrap();
        assert_eq!(bg.graph.n(), 4);
        assert_eq!(bg.graph.edge_count(), 4);
        assert!(bg.boundary.is_empty());
    }

    #[test]
    fn parses_annotation() {
        let bg = parse_graph("graph c4\nv 0..3\ne 0 1\ne 1 2\ne 2 3\ne 3 0\nannot 0 2\n").unwrap();
        assert_eq!(bg.annot.to_vec(), vec![0, 2]);
    }

    #[test]
    fn undeclared_vertex_is_reported_with_line() {
        let err = parse_graph("graph g\nv 0..3\ne 0 5\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                msg: "undeclared vertex 5".into()
            }
        );
        assert!(err.to_string().contains("undeclared vertex 5"));
    }

    #[test]
    fn duplicate_boundary_rejected() {
        let err = parse_graph("v 0..2\nbnd 0 1 0\n").unwrap_err();
        assert!(err.to_string().contains("duplicate boundary id 0"));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse_graph("graph g\n\n# c\nv x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
    }

    #[test]
    fn round_trip_normalized() {
        let text = "graph t # comment\nv 3 red\nv 7 blue red\nv 9\ne 3 9\ne 7 3\nannot 9\nbnd 7 3\n";
        let bg = parse_graph(text).unwrap();
        let printed = print_graph(&bg);
        assert_eq!(print_graph(&parse_graph(&printed).unwrap()), printed);
        assert_eq!(parse_graph(&printed).unwrap(), bg);
        assert_eq!(bg.boundary, vec![1, 0]);
        assert_eq!(bg.graph.color("red").to_vec(), vec![0, 1]);
    }
}
