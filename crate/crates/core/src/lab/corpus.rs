//! Graph, formula and decomposition files shipped with the crate.

use crate::decomp::{parse_decomposition, TreeDecomposition};
use crate::error::{semantic, Result};
use crate::graph::{parse_graph, BoundariedGraph};
use crate::logic::{parse_formula, Formula};

macro_rules! files {
    ($dir:literal; $ext:literal; $($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../corpus/", $dir, "/", $name, $ext)))),*]
    };
}

pub const GRAPH_FILES: &[(&str, &str)] = files!(
    "graphs"; ".g";
    "bowtie", "c4", "c5", "c6_annot", "c8", "grid3", "k33", "k4_tail", "k6", "octahedron", "p9",
    "star4", "tail_bnd",
);

pub const FORMULA_FILES: &[(&str, &str)] = files!(
    "formulas"; ".f";
    "annotated-leaf", "connected", "cut-vertex", "degree-two", "dominating-vertex", "even-annotation",
    "even-cycle", "small-dominating-set", "triangle", "two-disjoint-paths",
);

/// Decomposition files; each is paired with the graph file of the same name.
pub const DECOMP_FILES: &[(&str, &str)] = files!("decomps"; ".td"; "c8", "grid3", "k4_tail", "p9");

pub fn graph_text(name: &str) -> Option<&'static str> {
    GRAPH_FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn formula_text(name: &str) -> Option<&'static str> {
    FORMULA_FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn graph(name: &str) -> Result<BoundariedGraph> {
    match graph_text(name) {
        Some(t) => parse_graph(t),
        None => semantic(format!("no corpus graph named '{name}'")),
    }
}

pub fn formula(name: &str) -> Result<Formula> {
    match formula_text(name) {
        Some(t) => parse_formula(t.trim()),
        None => semantic(format!("no corpus formula named '{name}'")),
    }
}

pub fn graphs() -> Result<Vec<(&'static str, BoundariedGraph)>> {
    GRAPH_FILES
        .iter()
        .map(|(n, t)| Ok((*n, parse_graph(t)?)))
        .collect()
}

pub fn formulas() -> Result<Vec<(&'static str, Formula)>> {
    FORMULA_FILES
        .iter()
        .map(|(n, t)| Ok((*n, parse_formula(t.trim())?)))
        .collect()
}

pub fn decompositions() -> Result<Vec<(&'static str, BoundariedGraph, TreeDecomposition)>> {
    DECOMP_FILES
        .iter()
        .map(|(n, t)| {
            let g = graph(n)?;
            let (_, td) = parse_decomposition(t, &g.graph)?;
            Ok((*n, g, td))
        })
        .collect()
}
