//! Decomposition file format.
//!
//! ```text
//! decomp <name>
//! node <nid> : <vid> ...
//! root <nid>
//! child <parent-nid> <child-nid>
//! ```

use super::TreeDecomposition;
use crate::error::{semantic, Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;
use std::collections::HashMap;

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

/// Parses a decomposition of `g`; vertex ids are graph labels.
pub fn parse_decomposition(text: &str, g: &Graph) -> Result<(String, TreeDecomposition)> {
    let mut name = String::new();
    let mut names: Vec<String> = Vec::new();
    let mut bags: Vec<VertexSet> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut root: Option<(String, usize)> = None;
    let mut links: Vec<(String, String, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "decomp" => name = toks.get(1).copied().unwrap_or("").to_string(),
            "node" => {
                if toks.len() < 3 || toks[2] != ":" {
                    return perr(line, "expected 'node <nid> : <vid> ...'");
                }
                let nid = toks[1].to_string();
                if index.contains_key(&nid) {
                    return perr(line, format!("duplicate node {nid}"));
                }
                let mut bag = VertexSet::EMPTY;
                for t in &toks[3..] {
                    let id: u32 = t
                        .parse()
                        .or_else(|_| perr(line, format!("expected vertex id, found '{t}'")))?;
                    match g.index_of(id) {
                        Some(v) => bag.insert(v),
                        None => {
                            return semantic(format!(
                                "node {nid} references unknown vertex {id}"
                            ))
                        }
                    }
                }
                index.insert(nid.clone(), names.len());
                names.push(nid);
                bags.push(bag);
            }
            "root" => {
                if toks.len() != 2 {
                    return perr(line, "expected 'root <nid>'");
                }
                if root.is_some() {
                    return perr(line, "duplicate root line");
                }
                root = Some((toks[1].to_string(), line));
            }
            "child" => {
                if toks.len() != 3 {
                    return perr(line, "expected 'child <parent> <child>'");
                }
                links.push((toks[1].to_string(), toks[2].to_string(), line));
            }
            other => return perr(line, format!("unknown directive '{other}'")),
        }
    }
    let lookup = |nid: &str, line: usize| -> Result<usize> {
        index
            .get(nid)
            .copied()
            .ok_or(Error::Parse {
                line,
                msg: format!("undeclared node {nid}"),
            })
    };
    let mut parents: Vec<Option<usize>> = vec![None; names.len()];
    for (p, c, line) in &links {
        let (p, c) = (lookup(p, *line)?, lookup(c, *line)?);
        if parents[c].is_some() {
            return perr(*line, format!("node {} has two parents", names[c]));
        }
        parents[c] = Some(p);
    }
    let Some((rname, rline)) = root else {
        return semantic("decomposition has no root line");
    };
    let r = lookup(&rname, rline)?;
    if parents[r].is_some() {
        return perr(rline, "root has a parent");
    }
    let td = TreeDecomposition::from_parts(names, bags, parents)?;
    Ok((name, td))
}

/// Normalized file form: nodes in stored order, then root, then child links
/// in stored order.
pub fn print_decomposition(name: &str, td: &TreeDecomposition, g: &Graph) -> String {
    let mut out = String::from("decomp");
    if !name.is_empty() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for node in &td.nodes {
        out.push_str(&format!("node {} :", node.name));
        for v in node.bag.iter() {
            out.push_str(&format!(" {}", g.label(v)));
        }
        out.push('\n');
    }
    out.push_str(&format!("root {}\n", td.nodes[td.root].name));
    for (i, node) in td.nodes.iter().enumerate() {
        if let Some(p) = node.parent {
            out.push_str(&format!("child {} {}\n", td.nodes[p].name, td.nodes[i].name));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn round_trip() {
        let p3 = generate(Family::Path(3)).unwrap().graph;
        let text = "decomp p3\nnode r : 0 1\nnode c : 1 2\nroot r\nchild r c\n";
        let (name, td) = parse_decomposition(text, &p3).unwrap();
        assert_eq!(name, "p3");
        assert_eq!(td.validate(&p3).unwrap(), None);
        assert_eq!(print_decomposition(&name, &td, &p3), text);
    }

    #[test]
    fn errors() {
        let p3 = generate(Family::Path(3)).unwrap().graph;
        assert!(parse_decomposition("node a : 0 7\nroot a\n", &p3).is_err());
        assert!(parse_decomposition("node a : 0\nnode b : 1\nroot a\n", &p3).is_err());
        assert!(parse_decomposition("node a : 0\nroot a\nchild a b\n", &p3).is_err());
        assert!(parse_decomposition("node a : 0\n", &p3).is_err());
    }
}
