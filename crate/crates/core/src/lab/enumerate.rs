//! Exhaustive and random generation of small graphs.

use crate::error::Result;
use crate::folio::CanonicalForm;
use crate::graph::{AnnotatedGraph, BoundariedGraph, Graph};
use crate::vset::VertexSet;
use rand::Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;

fn from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let mut g = Graph::new(n);
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            g.add_edge(u, v);
        }
    }
    g
}

fn canonical(g: Graph, annot: VertexSet) -> Result<CanonicalForm> {
    CanonicalForm::of(&BoundariedGraph::new(g, annot, Vec::new())?)
}

/// One graph per isomorphism class on `n ≤ 6` vertices, in canonical order.
pub fn graphs_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    assert!(n <= 6, "exhaustive enumeration is limited to 6 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let forms: BTreeSet<CanonicalForm> = (0u64..1 << pairs.len())
        .into_par_iter()
        .map(|mask| canonical(from_mask(n, &pairs, mask), VertexSet::EMPTY))
        .collect::<Result<_>>()?;
    Ok(forms.into_iter().map(|f| f.to_boundaried().graph).collect())
}

/// One annotated graph per isomorphism class on `n ≤ 6` vertices.
pub fn annotated_up_to_iso(n: usize) -> Result<Vec<AnnotatedGraph>> {
    let graphs = graphs_up_to_iso(n)?;
    let forms: BTreeSet<CanonicalForm> = graphs
        .par_iter()
        .flat_map_iter(|g| (0u64..1 << n).map(move |a| canonical(g.clone(), VertexSet(a))))
        .collect::<Result<_>>()?;
    Ok(forms.into_iter().map(|f| f.to_boundaried().annotated()).collect())
}

/// Annotated graphs up to isomorphism with `lo..=hi` vertices.
pub fn annotated_range(lo: usize, hi: usize) -> Result<Vec<AnnotatedGraph>> {
    let mut out = Vec::new();
    for n in lo..=hi {
        out.extend(annotated_up_to_iso(n)?);
    }
    Ok(out)
}

/// `G(n, p)` with each vertex annotated with probability `q`.
pub fn random_annotated(rng: &mut impl Rng, n: usize, p: f64, q: f64) -> AnnotatedGraph {
    let mut g = Graph::new(n);
    let mut annot = VertexSet::EMPTY;
    for v in 0..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
        if rng.gen_bool(q) {
            annot.insert(v);
        }
    }
    AnnotatedGraph::new(g, annot)
}

/// Disjoint union; the vertices of `b` follow those of `a`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let mut g = Graph::new(a.n() + b.n());
    for (u, v) in a.edges() {
        g.add_edge(u, v);
    }
    for (u, v) in b.edges() {
        g.add_edge(u + a.n(), v + a.n());
    }
    g
}

/// Contracts the edge `uv` into `u`; the merged vertex is annotated if either
/// endpoint was. Vertices above `v` shift down by one.
pub fn contract(ag: &AnnotatedGraph, u: usize, v: usize) -> AnnotatedGraph {
    let g = &ag.graph;
    let shift = |w: usize| if w > v { w - 1 } else { w };
    let mut h = Graph::new(g.n() - 1);
    for (a, b) in g.edges() {
        let a = if a == v { u } else { a };
        let b = if b == v { u } else { b };
        if a != b && !h.has_edge(shift(a), shift(b)) {
            h.add_edge(shift(a), shift(b));
        }
    }
    let mut annot = VertexSet::EMPTY;
    for w in ag.annot.iter() {
        annot.insert(shift(if w == v { u } else { w }));
    }
    AnnotatedGraph::new(h, annot)
}

/// Deletes vertex `v`; vertices above it shift down by one.
pub fn delete_vertex(ag: &AnnotatedGraph, v: usize) -> AnnotatedGraph {
    let keep = ag.graph.vertices().without(v);
    let order = keep.to_vec();
    let annot = (ag.annot & keep)
        .iter()
        .map(|w| order.binary_search(&w).expect("kept"))
        .collect();
    AnnotatedGraph::new(ag.graph.induced(keep).relabelled_dense(), annot)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| graphs_up_to_iso(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 2, 4, 11, 34]);
        // Annotated graphs correspond to graphs with loops.
        let counts: Vec<usize> = (1..=4).map(|n| annotated_up_to_iso(n).unwrap().len()).collect();
        assert_eq!(counts, [2, 6, 20, 90]);
    }

    #[test]
    fn contraction_merges_annotation() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let ag = AnnotatedGraph::new(g, [2].into_iter().collect());
        let c = contract(&ag, 1, 2);
        assert_eq!(c.graph.edges(), vec![(0, 1)]);
        assert_eq!(c.annot.to_vec(), vec![1]);
        let d = delete_vertex(&ag, 0);
        assert_eq!(d.graph.edges(), vec![(0, 1)]);
        assert_eq!(d.annot.to_vec(), vec![1]);
    }
}
