//! Exact solvers for the disjoint-paths and connectivity predicates.

use super::Graph;
use crate::error::{semantic, Result};
use crate::vset::VertexSet;

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v < g.n() {
        Ok(())
    } else {
        semantic(format!("vertex index {v} not in graph"))
    }
}

/// True iff `s` and `t` are connected in `G - deleted`. A deleted endpoint
/// makes the answer false.
pub fn solve_conn(g: &Graph, s: usize, t: usize, deleted: VertexSet) -> Result<bool> {
    check_vertex(g, s)?;
    check_vertex(g, t)?;
    if deleted.contains(s) || deleted.contains(t) {
        return Ok(false);
    }
    Ok(g.reach(s, g.vertices() - deleted).contains(t))
}

/// True iff there are pairwise vertex-disjoint paths joining every pair.
/// A pair `(v, v)` is met by the one-vertex path, which still occupies `v`.
pub fn solve_dp(g: &Graph, pairs: &[(usize, usize)]) -> Result<bool> {
    let mut terminals = VertexSet::EMPTY;
    for &(s, t) in pairs {
        check_vertex(g, s)?;
        check_vertex(g, t)?;
        if terminals.contains(s) || terminals.contains(t) {
            return Ok(false);
        }
        terminals.insert(s);
        terminals.insert(t);
    }
    let free = g.vertices() - terminals;
    Ok(route(g, pairs, free))
}

/// Remaining pairs can still be joined through `free`, ignoring interference.
fn all_reachable(g: &Graph, pairs: &[(usize, usize)], free: VertexSet) -> bool {
    pairs.iter().all(|&(s, t)| {
        s == t || g.has_edge(s, t) || g.reach(s, free.with(s).with(t)).contains(t)
    })
}

fn route(g: &Graph, pairs: &[(usize, usize)], free: VertexSet) -> bool {
    let Some((&(s, t), rest)) = pairs.split_first() else {
        return true;
    };
    if s == t || g.has_edge(s, t) {
        return route(g, rest, free);
    }
    if !all_reachable(g, pairs, free) {
        return false;
    }
    let mut found = false;
    extend(g, s, t, free, VertexSet::EMPTY, &mut |internal| {
        let free2 = free - internal;
        if all_reachable(g, rest, free2) && route(g, rest, free2) {
            found = true;
        }
        found
    });
    found
}

/// Enumerates simple `cur`–`t` paths whose internal vertices lie in `free`;
/// `visit` receives the internal vertex set and returns true to stop.
pub(crate) fn extend(
    g: &Graph,
    cur: usize,
    t: usize,
    free: VertexSet,
    used: VertexSet,
    visit: &mut dyn FnMut(VertexSet) -> bool,
) -> bool {
    let nbrs = g.neighbors(cur);
    if nbrs.contains(t) && !used.is_empty() && visit(used) {
        return true;
    }
    let avail = free - used;
    for w in (nbrs & avail).iter() {
        let rest = avail.without(w);
        if !g.has_edge(w, t) && !g.reach(w, rest.with(w).with(t)).contains(t) {
            continue;
        }
        if extend(g, w, t, free, used.with(w), visit) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)])
    }

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    #[test]
    fn dp_examples() {
        assert!(solve_dp(&p3(), &[(0, 0), (2, 2)]).unwrap());
        assert!(!solve_dp(&p3(), &[(0, 1), (1, 2)]).unwrap());
        assert!(!solve_dp(&c4(), &[(0, 2), (1, 3)]).unwrap());
        assert!(solve_dp(&c4(), &[(0, 2)]).unwrap());
        assert!(!solve_dp(&c4(), &[(0, 2), (1, 1), (3, 3)]).unwrap());
        assert!(solve_dp(&c4(), &[(0, 2), (1, 1)]).unwrap());
        assert!(solve_dp(&p3(), &[(9, 0)]).is_err());
    }

    #[test]
    fn conn_examples() {
        let g = p3();
        assert!(solve_conn(&g, 1, 1, VertexSet::EMPTY).unwrap());
        assert!(!solve_conn(&g, 0, 2, VertexSet::singleton(1)).unwrap());
        assert!(solve_conn(&g, 0, 2, VertexSet::EMPTY).unwrap());
        assert!(!solve_conn(&g, 0, 2, VertexSet::singleton(0)).unwrap());
    }
}
