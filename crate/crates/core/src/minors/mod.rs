//! Exact search for annotated minors and annotated topological minors.
//!
//! Both searches are complete backtracking procedures. The minor search
//! assigns host vertices in ascending order to a pattern vertex or to
//! "unused" (tried last), so the first model found is the least in that
//! order. The topological search enumerates principal maps in lexicographic
//! order and routes the edges that are not host edges by disjoint paths.

use crate::error::{semantic, Result};
use crate::graph::{extend_paths, AnnotatedGraph, BoundariedGraph, Graph};
use crate::vset::VertexSet;
use serde::Serialize;

/// Branch sets indexed by pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorModel {
    pub branch: Vec<VertexSet>,
}

impl MinorModel {
    /// Checks every model condition directly.
    pub fn is_valid(&self, host: &AnnotatedGraph, pattern: &AnnotatedGraph) -> bool {
        let g = &host.graph;
        let h = &pattern.graph;
        if self.branch.len() != h.n() {
            return false;
        }
        let mut used = VertexSet::EMPTY;
        for b in &self.branch {
            if b.intersects(used) || !b.is_subset(g.vertices()) || !g.is_connected_set(*b) {
                return false;
            }
            used |= *b;
        }
        for (u, v) in h.edges() {
            if !g.neighborhood(self.branch[u]).intersects(self.branch[v]) {
                return false;
            }
        }
        pattern
            .annot
            .iter()
            .all(|y| self.branch[y].intersects(host.annot))
    }
}

/// Principal map and one host path per pattern edge (in pattern edge order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopoModel {
    pub principal: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

impl TopoModel {
    pub fn is_valid(&self, host: &AnnotatedGraph, pattern: &AnnotatedGraph) -> bool {
        let g = &host.graph;
        let h = &pattern.graph;
        if self.principal.len() != h.n() {
            return false;
        }
        let principal: VertexSet = self.principal.iter().copied().collect();
        if principal.len() != h.n() || !principal.is_subset(g.vertices()) {
            return false;
        }
        if !pattern
            .annot
            .iter()
            .all(|y| host.annot.contains(self.principal[y]))
        {
            return false;
        }
        let edges = h.edges();
        if edges.len() != self.paths.len() {
            return false;
        }
        let mut inner_used = VertexSet::EMPTY;
        for (&(u, v), path) in edges.iter().zip(&self.paths) {
            if path.len() < 2
                || path[0] != self.principal[u]
                || path[path.len() - 1] != self.principal[v]
            {
                return false;
            }
            if !path.windows(2).all(|w| g.has_edge(w[0], w[1])) {
                return false;
            }
            let inner: VertexSet = path[1..path.len() - 1].iter().copied().collect();
            if inner.len() != path.len() - 2 || inner.intersects(principal | inner_used) {
                return false;
            }
            inner_used |= inner;
        }
        true
    }
}

/// Least minor model of `pattern` in `host`, if any.
pub fn find_annotated_minor(host: &AnnotatedGraph, pattern: &AnnotatedGraph) -> Option<MinorModel> {
    let g = &host.graph;
    let h = &pattern.graph;
    if h.n() > g.n() || h.edge_count() > g.edge_count() || pattern.annot.len() > host.annot.len() {
        return None;
    }
    if h.n() == 0 {
        return Some(MinorModel { branch: vec![] });
    }
    let mut search = MinorSearch {
        g,
        x: host.annot,
        edges: h.edges(),
        y: pattern.annot,
        branch: vec![VertexSet::EMPTY; h.n()],
    };
    if search.dfs(0) {
        Some(MinorModel {
            branch: search.branch,
        })
    } else {
        None
    }
}

/// True iff `pattern ≤ host`.
pub fn is_annotated_minor(host: &AnnotatedGraph, pattern: &AnnotatedGraph) -> bool {
    find_annotated_minor(host, pattern).is_some()
}

struct MinorSearch<'a> {
    g: &'a Graph,
    x: VertexSet,
    edges: Vec<(usize, usize)>,
    y: VertexSet,
    branch: Vec<VertexSet>,
}

impl MinorSearch<'_> {
    fn dfs(&mut self, i: usize) -> bool {
        let n = self.g.n();
        if i == n {
            return self.complete();
        }
        let hn = self.branch.len();
        for label in 0..=hn {
            if label < hn {
                self.branch[label].insert(i);
            }
            let ok = self.feasible(i + 1) && self.dfs(i + 1);
            if ok {
                return true;
            }
            if label < hn {
                self.branch[label].remove(i);
            }
        }
        false
    }

    fn complete(&self) -> bool {
        self.branch.iter().all(|b| self.g.is_connected_set(*b))
            && self
                .edges
                .iter()
                .all(|&(a, b)| self.g.neighborhood(self.branch[a]).intersects(self.branch[b]))
            && self.y.iter().all(|p| self.branch[p].intersects(self.x))
    }

    /// Sound necessary conditions for completing the partial assignment
    /// of host vertices `0..next`.
    fn feasible(&self, next: usize) -> bool {
        let g = self.g;
        let free = g.vertices() - VertexSet::full(next);
        let empties = self.branch.iter().filter(|b| b.is_empty()).count();
        if empties > free.len() {
            return false;
        }
        let lacking = self
            .y
            .iter()
            .filter(|&p| !self.branch[p].intersects(self.x))
            .count();
        if lacking > (free & self.x).len() {
            return false;
        }
        // With exactly as many free vertices as empty sets, nonempty sets are final.
        let closed = empties == free.len();
        let mut grown = vec![VertexSet::EMPTY; self.branch.len()];
        for (j, b) in self.branch.iter().enumerate() {
            let Some(first) = b.first() else { continue };
            let within = if closed { *b } else { *b | free };
            let r = g.reach(first, within);
            if !b.is_subset(r) {
                return false;
            }
            grown[j] = r;
        }
        for &(a, b) in &self.edges {
            let (ba, bb) = (self.branch[a], self.branch[b]);
            if ba.is_empty() || bb.is_empty() {
                continue;
            }
            if g.neighborhood(ba).intersects(bb) {
                continue;
            }
            if closed || !g.neighborhood(grown[a]).intersects(grown[b]) {
                return false;
            }
        }
        true
    }
}

/// Least topological minor model of `pattern` in `host`, if any.
pub fn find_annotated_topological_minor(
    host: &AnnotatedGraph,
    pattern: &AnnotatedGraph,
) -> Option<TopoModel> {
    let g = &host.graph;
    let h = &pattern.graph;
    if h.n() > g.n() || h.edge_count() > g.edge_count() || pattern.annot.len() > host.annot.len() {
        return None;
    }
    TopoSearch::new(host, pattern, vec![None; h.n()], VertexSet::EMPTY).run()
}

pub fn is_annotated_topological_minor(host: &AnnotatedGraph, pattern: &AnnotatedGraph) -> bool {
    find_annotated_topological_minor(host, pattern).is_some()
}

/// Topological minor search between compatible boundaried graphs. Boundary
/// vertices of the pattern are pinned to the host boundary vertex with the
/// same label; other pattern vertices avoid the host boundary.
pub fn find_boundaried_topological_minor(
    host: &BoundariedGraph,
    pattern: &BoundariedGraph,
) -> Result<Option<TopoModel>> {
    if !host.is_compatible(pattern) {
        return semantic("incompatible boundaries");
    }
    let mut pinned = vec![None; pattern.graph.n()];
    for (i, &b) in pattern.boundary.iter().enumerate() {
        pinned[b] = Some(host.boundary[i]);
    }
    let h = &pattern.graph;
    let g = &host.graph;
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return Ok(None);
    }
    let hp = pattern.annotated();
    let gp = host.annotated();
    Ok(TopoSearch::new(&gp, &hp, pinned, host.boundary_set()).run())
}

struct TopoSearch<'a> {
    g: &'a Graph,
    x: VertexSet,
    h: &'a Graph,
    y: VertexSet,
    pinned: Vec<Option<usize>>,
    reserved: VertexSet,
    edges: Vec<(usize, usize)>,
    eta: Vec<usize>,
}

impl<'a> TopoSearch<'a> {
    fn new(
        host: &'a AnnotatedGraph,
        pattern: &'a AnnotatedGraph,
        pinned: Vec<Option<usize>>,
        reserved: VertexSet,
    ) -> Self {
        TopoSearch {
            g: &host.graph,
            x: host.annot,
            h: &pattern.graph,
            y: pattern.annot,
            edges: pattern.graph.edges(),
            eta: Vec::with_capacity(pinned.len()),
            pinned,
            reserved,
        }
    }

    fn run(mut self) -> Option<TopoModel> {
        let mut out = None;
        self.assign(0, VertexSet::EMPTY, &mut out);
        out
    }

    fn assign(&mut self, u: usize, used: VertexSet, out: &mut Option<TopoModel>) -> bool {
        if u == self.h.n() {
            if let Some(paths) = self.route(used) {
                *out = Some(TopoModel {
                    principal: self.eta.clone(),
                    paths,
                });
                return true;
            }
            return false;
        }
        let candidates = match self.pinned[u] {
            Some(v) => VertexSet::singleton(v),
            None => self.g.vertices() - used - self.reserved,
        };
        for v in candidates.iter() {
            if used.contains(v) || self.g.degree(v) < self.h.degree(u) {
                continue;
            }
            if self.y.contains(u) && !self.x.contains(v) {
                continue;
            }
            let used2 = used.with(v);
            // Every edge to an earlier pattern vertex needs a route avoiding principals.
            let free = self.g.vertices() - used2;
            let ok = self.h.neighbors(u).iter().filter(|&w| w < u).all(|w| {
                let a = self.eta[w];
                self.g.has_edge(a, v) || self.g.reach(a, free.with(a).with(v)).contains(v)
            });
            if !ok {
                continue;
            }
            self.eta.push(v);
            if self.assign(u + 1, used2, out) {
                return true;
            }
            self.eta.pop();
        }
        false
    }

    /// Routes the edges that are not host edges; returns one path per pattern edge.
    fn route(&self, principal: VertexSet) -> Option<Vec<Vec<usize>>> {
        let pending: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (self.eta[a], self.eta[b]))
            .filter(|&(a, b)| !self.g.has_edge(a, b))
            .collect();
        let free = self.g.vertices() - principal;
        let mut inner = vec![VertexSet::EMPTY; pending.len()];
        if !route_pending(self.g, &pending, 0, free, &mut inner) {
            return None;
        }
        let mut k = 0;
        let paths = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (s, t) = (self.eta[a], self.eta[b]);
                if self.g.has_edge(s, t) {
                    vec![s, t]
                } else {
                    let p = shortest_path(self.g, s, t, inner[k]);
                    k += 1;
                    p
                }
            })
            .collect();
        Some(paths)
    }
}

fn route_pending(
    g: &Graph,
    pending: &[(usize, usize)],
    i: usize,
    free: VertexSet,
    inner: &mut [VertexSet],
) -> bool {
    if i == pending.len() {
        return true;
    }
    let reachable = pending[i..]
        .iter()
        .all(|&(s, t)| g.reach(s, free.with(s).with(t)).contains(t));
    if !reachable {
        return false;
    }
    let (s, t) = pending[i];
    let mut found = false;
    extend_paths(g, s, t, free, VertexSet::EMPTY, &mut |set| {
        inner[i] = set;
        found = route_pending(g, pending, i + 1, free - set, inner);
        found
    });
    found
}

/// A shortest `s`–`t` path with internal vertices in `within`.
pub(crate) fn shortest_path(g: &Graph, s: usize, t: usize, within: VertexSet) -> Vec<usize> {
    let allowed = within.with(t);
    let mut prev = vec![usize::MAX; g.n()];
    let mut seen = VertexSet::singleton(s);
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        if v == t {
            break;
        }
        for w in (g.neighbors(v) & (allowed - seen)).iter() {
            seen.insert(w);
            prev[w] = v;
            queue.push_back(w);
        }
    }
    let mut path = vec![t];
    let mut cur = t;
    while cur != s {
        cur = prev[cur];
        assert!(cur != usize::MAX, "no path inside the given set");
        path.push(cur);
    }
    path.reverse();
    path
}

/// Dissolves every vertex outside `t` (each must have degree 2). Boundary
/// vertices must lie in `t`; the annotation becomes `X ∩ t`.
pub fn dissolve(m: &BoundariedGraph, t: VertexSet) -> Result<BoundariedGraph> {
    let g = &m.graph;
    let t = t & g.vertices();
    for &b in &m.boundary {
        if !t.contains(b) {
            return semantic(format!("boundary vertex {} is not a branch vertex", g.label(b)));
        }
    }
    for v in (g.vertices() - t).iter() {
        if g.degree(v) != 2 {
            return semantic(format!(
                "vertex {} outside the branch set has degree {}",
                g.label(v),
                g.degree(v)
            ));
        }
    }
    let mut work = g.clone();
    for v in (g.vertices() - t).iter() {
        let nb = work.neighbors(v);
        if nb.len() != 2 {
            return semantic(format!(
                "dissolving vertex {} would create a loop",
                g.label(v)
            ));
        }
        let (a, b) = (nb.first().unwrap(), nb.last().unwrap());
        work.remove_edge(v, a);
        work.remove_edge(v, b);
        work.add_edge(a, b);
    }
    let pos: Vec<usize> = {
        let mut p = vec![usize::MAX; g.n()];
        for (i, v) in t.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let graph = work.induced(t);
    let annot = (m.annot & t).iter().map(|v| pos[v]).collect();
    let boundary = m.boundary.iter().map(|&b| pos[b]).collect();
    BoundariedGraph::new(graph, annot, boundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn ag(f: Family) -> AnnotatedGraph {
        generate(f).unwrap()
    }

    #[test]
    fn reflexive_minor_is_identity() {
        let g = ag(Family::OuterGrid(3));
        let m = find_annotated_minor(&g, &g).unwrap();
        assert!(m.branch.iter().enumerate().all(|(i, b)| b.to_vec() == vec![i]));
        let t = find_annotated_topological_minor(&g, &g).unwrap();
        assert_eq!(t.principal, (0..9).collect::<Vec<_>>());
        assert!(t.is_valid(&g, &g));
    }

    #[test]
    fn minor_examples() {
        let host = ag(Family::RainbowGrid(2));
        let k3 = AnnotatedGraph::fully_annotated(ag(Family::Clique(3)).graph);
        let m = find_annotated_minor(&host, &k3).expect("contract one edge");
        assert!(m.is_valid(&host, &k3));
        let g3o = ag(Family::OuterGrid(3));
        let g3r = ag(Family::RainbowGrid(3));
        assert!(find_annotated_minor(&g3o, &g3r).is_none());
    }

    #[test]
    fn topological_examples() {
        let g3 = ag(Family::Grid(3));
        let k4 = ag(Family::Clique(4));
        let k5 = ag(Family::Clique(5));
        let m = find_annotated_topological_minor(&g3, &k4).expect("K4 in grid");
        assert!(m.is_valid(&g3, &k4));
        assert!(find_annotated_topological_minor(&g3, &k5).is_none());
    }

    #[test]
    fn dissolve_examples() {
        let p3 = BoundariedGraph::new(ag(Family::Path(3)).graph, VertexSet::EMPTY, vec![0, 2]).unwrap();
        let same = dissolve(&p3, p3.graph.vertices()).unwrap();
        assert_eq!(same, p3);
        let d = dissolve(&p3, VertexSet::from_iter_of([0, 2])).unwrap();
        assert_eq!(d.graph.n(), 2);
        assert_eq!(d.graph.edges(), vec![(0, 1)]);
        assert_eq!(d.boundary, vec![0, 1]);

        let c4 = BoundariedGraph::new(ag(Family::Cycle(4)).graph, VertexSet::EMPTY, vec![]).unwrap();
        let d = dissolve(&c4, VertexSet::from_iter_of([0, 2])).unwrap();
        assert_eq!(d.graph.edges(), vec![(0, 1)]);
        assert_eq!(d.graph.labels(), &[0, 2]);

        assert!(dissolve(&p3, VertexSet::singleton(0)).is_err());
        let star = BoundariedGraph::new(ag(Family::Star(3)).graph, VertexSet::EMPTY, vec![]).unwrap();
        assert!(dissolve(&star, VertexSet::from_iter_of([1, 2, 3])).is_err());
    }
}
