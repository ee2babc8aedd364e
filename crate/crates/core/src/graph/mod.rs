//! Simple colored graphs, annotated graphs and boundaried graphs.
//!
//! Vertices are addressed by dense indices `0..n`. Each index carries an
//! external integer label (the id used in files); labels are strictly
//! increasing with the index, so index order and id order coincide.

mod gen;
mod io;
mod paths;
mod separation;

pub use gen::{generate, leaf_augment, subdivide, Family};
pub(crate) use gen::attach_leaves;
pub use io::{parse_graph, print_graph};
pub use paths::{solve_conn, solve_dp};
pub(crate) use paths::extend as extend_paths;
pub use separation::{enumerate_separations, is_unbreakable, Separation};

use crate::error::{semantic, Result};
use crate::vset::{VertexSet, MAX_VERTICES};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    name: String,
    labels: Vec<u32>,
    adj: Vec<VertexSet>,
    colors: BTreeMap<String, VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices labelled `0..n`.
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graphs hold at most {MAX_VERTICES} vertices");
        Graph {
            name: String::new(),
            labels: (0..n as u32).collect(),
            adj: vec![VertexSet::EMPTY; n],
            colors: BTreeMap::new(),
        }
    }

    /// Edgeless graph with the given strictly increasing labels.
    pub fn with_labels(labels: Vec<u32>) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return semantic(format!("graph exceeds {MAX_VERTICES} vertices"));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return semantic("vertex labels must be strictly increasing");
        }
        let n = labels.len();
        Ok(Graph {
            name: String::new(),
            labels,
            adj: vec![VertexSet::EMPTY; n],
            colors: BTreeMap::new(),
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, v: usize) -> u32 {
        self.labels[v]
    }

    pub fn index_of(&self, label: u32) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn labels_of(&self, s: VertexSet) -> Vec<u32> {
        s.iter().map(|v| self.labels[v]).collect()
    }

    /// Adds the edge `{u, v}`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loops are not allowed");
        assert!(u < self.n() && v < self.n(), "edge endpoint out of range");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn colors(&self) -> &BTreeMap<String, VertexSet> {
        &self.colors
    }

    pub fn color(&self, name: &str) -> VertexSet {
        self.colors.get(name).copied().unwrap_or_default()
    }

    pub fn set_color(&mut self, name: impl Into<String>, set: VertexSet) {
        let set = set & self.vertices();
        self.colors.insert(name.into(), set);
    }

    pub fn add_vertex_labelled(&mut self, label: u32) -> Result<usize> {
        if self.n() >= MAX_VERTICES {
            return semantic(format!("graph exceeds {MAX_VERTICES} vertices"));
        }
        if let Some(&last) = self.labels.last() {
            if label <= last {
                return semantic("new vertex label must exceed all existing labels");
            }
        }
        self.labels.push(label);
        self.adj.push(VertexSet::EMPTY);
        Ok(self.n() - 1)
    }

    /// Appends a vertex labelled one above the current maximum label.
    pub fn add_vertex(&mut self) -> usize {
        let label = self.labels.last().map_or(0, |&l| l + 1);
        self.add_vertex_labelled(label).expect("vertex capacity")
    }

    /// Union of the neighborhoods of `s`, minus `s`.
    pub fn neighborhood(&self, s: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for v in s.iter() {
            out |= self.adj[v];
        }
        out - s
    }

    /// Vertices reachable from `start` inside `within` (which must contain `start`).
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next |= self.adj[v];
            }
            next &= within - seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of `G[within]`, ordered by smallest vertex.
    pub fn components(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.reach(v, rest);
            rest = rest - c;
            out.push(c);
        }
        out
    }

    /// True iff `G[s]` is connected; the empty set counts as disconnected.
    pub fn is_connected_set(&self, s: VertexSet) -> bool {
        match s.first() {
            None => false,
            Some(v) => self.reach(v, s) == s,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.is_connected_set(self.vertices())
    }

    /// Induced subgraph on `s`, keeping labels and colors.
    pub fn induced(&self, s: VertexSet) -> Graph {
        let keep = s.to_vec();
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = vec![VertexSet::EMPTY; keep.len()];
        for (i, &v) in keep.iter().enumerate() {
            for w in (self.adj[v] & s).iter() {
                adj[i].insert(pos[w]);
            }
        }
        let colors = self
            .colors
            .iter()
            .map(|(k, c)| (k.clone(), remap(*c & s, &pos)))
            .collect();
        Graph {
            name: self.name.clone(),
            labels: keep.iter().map(|&v| self.labels[v]).collect(),
            adj,
            colors,
        }
    }

    /// Copy with labels reset to `0..n`.
    pub fn relabelled_dense(&self) -> Graph {
        let mut g = self.clone();
        g.labels = (0..self.n() as u32).collect();
        g
    }

    /// Adjacency rows indexed by vertex.
    pub fn adjacency_rows(&self) -> &[VertexSet] {
        &self.adj
    }
}

/// Maps the members of `s` through the position table `pos`.
pub(crate) fn remap(s: VertexSet, pos: &[usize]) -> VertexSet {
    s.iter().map(|v| pos[v]).collect()
}

/// A graph together with an annotated vertex set `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnnotatedGraph {
    pub graph: Graph,
    pub annot: VertexSet,
}

impl AnnotatedGraph {
    pub fn new(graph: Graph, annot: VertexSet) -> Self {
        let annot = annot & graph.vertices();
        AnnotatedGraph { graph, annot }
    }

    pub fn unannotated(graph: Graph) -> Self {
        AnnotatedGraph {
            graph,
            annot: VertexSet::EMPTY,
        }
    }

    pub fn fully_annotated(graph: Graph) -> Self {
        let annot = graph.vertices();
        AnnotatedGraph { graph, annot }
    }
}

/// Reserved color naming the annotated set in formulas.
pub const ANNOT_COLOR: &str = "annot";

/// An annotated graph with an ordered boundary; boundary position `i` carries
/// label `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundariedGraph {
    pub graph: Graph,
    pub annot: VertexSet,
    pub boundary: Vec<usize>,
}

impl BoundariedGraph {
    pub fn new(graph: Graph, annot: VertexSet, boundary: Vec<usize>) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for &b in &boundary {
            if b >= graph.n() {
                return semantic(format!("boundary vertex {b} not in graph"));
            }
            if seen.contains(b) {
                return semantic(format!("duplicate boundary id {}", graph.label(b)));
            }
            seen.insert(b);
        }
        let annot = annot & graph.vertices();
        Ok(BoundariedGraph {
            graph,
            annot,
            boundary,
        })
    }

    pub fn from_annotated(ag: AnnotatedGraph, boundary: Vec<usize>) -> Result<Self> {
        BoundariedGraph::new(ag.graph, ag.annot, boundary)
    }

    pub fn boundary_set(&self) -> VertexSet {
        self.boundary.iter().copied().collect()
    }

    /// Boundary label (1-based) of `v`, if `v` is on the boundary.
    pub fn label_of(&self, v: usize) -> Option<usize> {
        self.boundary.iter().position(|&b| b == v).map(|i| i + 1)
    }

    /// `max(|E|, |V \ B|)`.
    pub fn detail(&self) -> usize {
        self.graph
            .edge_count()
            .max(self.graph.n() - self.boundary.len())
    }

    pub fn annotated(&self) -> AnnotatedGraph {
        AnnotatedGraph {
            graph: self.graph.clone(),
            annot: self.annot,
        }
    }

    /// The graph `G^I`: boundary edges added for every label pair in `pairs`.
    pub fn with_boundary_edges(&self, pairs: &[(usize, usize)]) -> BoundariedGraph {
        let mut g = self.clone();
        for &(i, j) in pairs {
            let (a, b) = (self.boundary[i - 1], self.boundary[j - 1]);
            if a != b {
                g.graph.add_edge(a, b);
            }
        }
        g
    }

    /// The underlying graph with reserved color `b_i` on boundary label `i`
    /// and color `annot` on the annotated set.
    pub fn colored_graph(&self) -> Graph {
        let mut g = self.graph.clone();
        g.set_color(ANNOT_COLOR, self.annot);
        for (i, &b) in self.boundary.iter().enumerate() {
            g.set_color(format!("b_{}", i + 1), VertexSet::singleton(b));
        }
        g
    }

    /// Equal boundary sizes, the same edges between equal labels and the same
    /// annotated labels.
    pub fn is_compatible(&self, other: &BoundariedGraph) -> bool {
        let t = self.boundary.len();
        if t != other.boundary.len() {
            return false;
        }
        for i in 0..t {
            let (a, b) = (self.boundary[i], other.boundary[i]);
            if self.annot.contains(a) != other.annot.contains(b) {
                return false;
            }
            for j in i + 1..t {
                let e1 = self.graph.has_edge(a, self.boundary[j]);
                let e2 = other.graph.has_edge(b, other.boundary[j]);
                if e1 != e2 {
                    return false;
                }
            }
        }
        true
    }

    /// All label pairs `(i, j)` with `i < j`.
    pub fn label_pairs(&self) -> Vec<(usize, usize)> {
        let t = self.boundary.len();
        let mut out = Vec::new();
        for i in 1..=t {
            for j in i + 1..=t {
                out.push((i, j));
            }
        }
        out
    }
}
