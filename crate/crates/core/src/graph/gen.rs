//! Generators for the graph families used throughout the crate.

use super::{AnnotatedGraph, Graph};
use crate::error::{semantic, Result};
use crate::vset::{VertexSet, MAX_VERTICES};

/// A generated family with its size parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `k × k` grid, unannotated.
    Grid(usize),
    /// `k × k` grid with every vertex annotated.
    RainbowGrid(usize),
    /// `k × k` grid with the perimeter annotated.
    OuterGrid(usize),
    Path(usize),
    Cycle(usize),
    Clique(usize),
    /// `K_{1,k}`: center 0, leaves `1..=k`.
    Star(usize),
    /// Grid whose first and last columns are joined row by row.
    TwistedG(usize),
    /// Grid whose first column is joined to the last column in reversed row order.
    TwistedH(usize),
}

impl Family {
    /// Parses a family tag and its single size parameter.
    pub fn parse(tag: &str, k: usize) -> Result<Family> {
        Ok(match tag {
            "grid" => Family::Grid(k),
            "rainbow_grid" => Family::RainbowGrid(k),
            "outer_grid" => Family::OuterGrid(k),
            "path" => Family::Path(k),
            "cycle" => Family::Cycle(k),
            "clique" => Family::Clique(k),
            "star" => Family::Star(k),
            "twisted_grid_G" | "twisted_g" => Family::TwistedG(k),
            "twisted_grid_H" | "twisted_h" => Family::TwistedH(k),
            _ => return semantic(format!("unknown graph family '{tag}'")),
        })
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        semantic(format!("generated graph would exceed {MAX_VERTICES} vertices"))
    } else {
        Ok(())
    }
}

fn grid(k: usize) -> Result<Graph> {
    if k == 0 {
        return semantic("grid size must be positive");
    }
    check_size(k * k)?;
    let mut g = Graph::new(k * k);
    for i in 0..k {
        for j in 0..k {
            let v = i * k + j;
            if j + 1 < k {
                g.add_edge(v, v + 1);
            }
            if i + 1 < k {
                g.add_edge(v, v + k);
            }
        }
    }
    Ok(g)
}

/// The perimeter of the `k × k` grid.
pub(crate) fn perimeter(k: usize) -> VertexSet {
    let mut s = VertexSet::EMPTY;
    for i in 0..k {
        for j in 0..k {
            if i == 0 || j == 0 || i + 1 == k || j + 1 == k {
                s.insert(i * k + j);
            }
        }
    }
    s
}

/// Builds a member of `family`. Grid vertex `(i, j)` (1-based) gets id
/// `(i-1)·k + (j-1)`.
pub fn generate(family: Family) -> Result<AnnotatedGraph> {
    let (g, annot) = match family {
        Family::Grid(k) => (grid(k)?, VertexSet::EMPTY),
        Family::RainbowGrid(k) => {
            let g = grid(k)?;
            let all = g.vertices();
            (g, all)
        }
        Family::OuterGrid(k) => (grid(k)?, perimeter(k)),
        Family::Path(n) => {
            if n == 0 {
                return semantic("path length must be positive");
            }
            check_size(n)?;
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            (Graph::from_edges(n, &edges), VertexSet::EMPTY)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return semantic("cycle length must be at least 3");
            }
            check_size(n)?;
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            (Graph::from_edges(n, &edges), VertexSet::EMPTY)
        }
        Family::Clique(n) => {
            if n == 0 {
                return semantic("clique size must be positive");
            }
            check_size(n)?;
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v);
                }
            }
            (g, VertexSet::EMPTY)
        }
        Family::Star(k) => {
            if k == 0 {
                return semantic("star needs at least one leaf");
            }
            check_size(k + 1)?;
            let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
            (Graph::from_edges(k + 1, &edges), VertexSet::EMPTY)
        }
        Family::TwistedG(n) => {
            let mut g = grid(n)?;
            for i in 0..n {
                let (a, b) = (i * n, i * n + n - 1);
                if a != b {
                    g.add_edge(a, b);
                }
            }
            (g, VertexSet::EMPTY)
        }
        Family::TwistedH(n) => {
            let mut g = grid(n)?;
            for i in 0..n {
                let (a, b) = (i * n, (n - 1 - i) * n + n - 1);
                if a != b {
                    g.add_edge(a, b);
                }
            }
            (g, VertexSet::EMPTY)
        }
    };
    Ok(AnnotatedGraph::new(g, annot))
}

/// Attaches two private leaves to every vertex. Original ids are kept; the
/// leaves of vertex `v` (dense index) are appended as `n + 2v` and `n + 2v + 1`.
pub fn leaf_augment(h: &Graph) -> Result<Graph> {
    attach_leaves(h, |_| 2)
}

/// Attaches `count(v)` private leaves to every vertex `v`, in vertex order.
pub(crate) fn attach_leaves(h: &Graph, count: impl Fn(usize) -> usize) -> Result<Graph> {
    let total: usize = (0..h.n()).map(&count).sum();
    check_size(h.n() + total)?;
    let mut g = h.clone();
    for v in 0..h.n() {
        for _ in 0..count(v) {
            let l = g.add_vertex();
            g.add_edge(v, l);
        }
    }
    Ok(g)
}

/// Replaces every edge by a path with `t` internal vertices. Edges are
/// processed in lexicographic order and new vertices are appended.
pub fn subdivide(h: &Graph, t: usize) -> Result<Graph> {
    if t < 1 {
        return semantic("subdivision length t must be at least 1");
    }
    let edges = h.edges();
    check_size(h.n() + t * edges.len())?;
    let mut g = h.clone();
    for &(u, v) in &edges {
        g.remove_edge(u, v);
        let mut prev = u;
        for _ in 0..t {
            let s = g.add_vertex();
            g.add_edge(prev, s);
            prev = s;
        }
        g.add_edge(prev, v);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outer_grid_two_is_annotated_c4() {
        let ag = generate(Family::OuterGrid(2)).unwrap();
        assert_eq!(ag.graph.n(), 4);
        assert_eq!(ag.graph.edge_count(), 4);
        assert_eq!(ag.annot.len(), 4);
        assert!((0..4).all(|v| ag.graph.degree(v) == 2));
    }

    #[test]
    fn outer_grid_three_leaves_center() {
        let ag = generate(Family::OuterGrid(3)).unwrap();
        assert_eq!(ag.graph.n(), 9);
        assert_eq!(ag.annot.len(), 8);
        assert!(!ag.annot.contains(4));
    }

    #[test]
    fn leaf_augment_triangle() {
        let k3 = generate(Family::Clique(3)).unwrap().graph;
        let h0 = leaf_augment(&k3).unwrap();
        assert_eq!(h0.n(), 9);
        assert!((0..3).all(|v| h0.degree(v) == 4));
        assert!((3..9).all(|v| h0.degree(v) == 1));
    }

    #[test]
    fn subdivide_counts() {
        let k3 = generate(Family::Clique(3)).unwrap().graph;
        let s = subdivide(&k3, 2).unwrap();
        assert_eq!(s.n(), 9);
        assert_eq!(s.edge_count(), 9);
        assert!(subdivide(&k3, 0).is_err());
    }

    #[test]
    fn twisted_grids() {
        let g = generate(Family::TwistedG(3)).unwrap().graph;
        let h = generate(Family::TwistedH(3)).unwrap().graph;
        assert!(g.has_edge(0, 2) && g.has_edge(6, 8));
        assert!(h.has_edge(0, 8) && h.has_edge(6, 2) && h.has_edge(3, 5));
        assert_eq!(g.edge_count(), 15);
        assert_eq!(h.edge_count(), 15);
    }

    #[test]
    fn zero_grid_rejected() {
        assert!(generate(Family::Grid(0)).is_err());
    }
}
