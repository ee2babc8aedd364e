//! Exact treewidth by dynamic programming over elimination prefixes.

use crate::error::{envelope, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;
use std::collections::HashMap;

/// Upper limit on the DP states kept across all layers of one run.
const STATE_BUDGET: usize = 4_000_000;

/// An elimination order together with its width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub width: usize,
    pub order: Vec<usize>,
}

/// Fill-in degree of `v` once the vertices of `s` are eliminated: the number
/// of vertices outside `s ∪ {v}` adjacent to the component of `v` in `G[s ∪ {v}]`.
#[inline]
fn q_value(g: &Graph, s: VertexSet, v: usize) -> usize {
    let comp = g.reach(v, s.with(v));
    g.neighborhood(comp).len()
}

/// Width of eliminating `order` (which must list every vertex once).
pub fn order_width(g: &Graph, order: &[usize]) -> usize {
    let mut s = VertexSet::EMPTY;
    let mut w = 0;
    for &v in order {
        w = w.max(q_value(g, s, v));
        s.insert(v);
    }
    w
}

/// Greedy min-fill elimination; ties broken by degree then index.
pub fn min_fill_upper(g: &Graph) -> Elimination {
    let n = g.n();
    let mut adj: Vec<VertexSet> = g.adjacency_rows().to_vec();
    let mut alive = g.vertices();
    let mut order = Vec::with_capacity(n);
    let mut width = 0;
    while alive.first().is_some() {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in alive.iter() {
            let nb = adj[v] & alive;
            let mut fill = 0;
            for a in nb.iter() {
                fill += (nb - adj[a]).without(a).len();
            }
            let key = (fill / 2, nb.len(), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let (_, deg, v) = best.expect("alive vertex");
        width = width.max(deg);
        let nb = adj[v] & alive;
        for a in nb.iter() {
            adj[a] |= nb.without(a);
        }
        alive.remove(v);
        order.push(v);
    }
    Elimination { width, order }
}

/// Minor-min-width lower bound.
pub fn mmw_lower(g: &Graph) -> usize {
    let mut adj: Vec<VertexSet> = g.adjacency_rows().to_vec();
    let mut alive = g.vertices();
    let mut lb = 0;
    while alive.len() > 1 {
        let v = alive
            .iter()
            .min_by_key(|&v| ((adj[v] & alive).len(), v))
            .expect("alive");
        let nb = adj[v] & alive;
        lb = lb.max(nb.len());
        if let Some(u) = nb.iter().min_by_key(|&u| ((adj[u] & alive).len(), u)) {
            // Contract v into u.
            for w in nb.without(u).iter() {
                adj[u].insert(w);
                adj[w].insert(u);
            }
        }
        alive.remove(v);
    }
    lb
}

/// Exact treewidth with an optimal elimination order. Graphs with at most one
/// vertex have width 0.
pub fn treewidth_exact(g: &Graph) -> Result<Elimination> {
    let mut order = Vec::with_capacity(g.n());
    let mut width = 0;
    for comp in g.components(g.vertices()) {
        let sub = g.induced(comp);
        let map = comp.to_vec();
        let e = exact_connected(&sub, None)?.expect("unbounded search always finishes");
        width = width.max(e.width);
        order.extend(e.order.iter().map(|&v| map[v]));
    }
    Ok(Elimination { width, order })
}

/// Decides `tw(G) <= k`.
pub fn treewidth_at_most(g: &Graph, k: usize) -> Result<bool> {
    for comp in g.components(g.vertices()) {
        if comp.len() <= k + 1 {
            continue;
        }
        let sub = g.induced(comp);
        if exact_connected(&sub, Some(k + 1))?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Optimal elimination of a connected graph. With `cap = Some(c)`, only
/// widths below `c` are searched and `None` means the width is at least `c`.
fn exact_connected(g: &Graph, cap: Option<usize>) -> Result<Option<Elimination>> {
    let n = g.n();
    if n <= 1 {
        return Ok(Some(Elimination {
            width: 0,
            order: (0..n).collect(),
        }));
    }
    let heur = min_fill_upper(g);
    let lb = mmw_lower(g);
    if let Some(c) = cap {
        if heur.width < c {
            return Ok(Some(heur));
        }
        if lb >= c {
            return Ok(None);
        }
    }
    if lb >= heur.width {
        return Ok(Some(heur));
    }
    let mut ub = heur.width;
    let mut best_order = heur.order.clone();
    let limit = cap.map_or(ub, |c| c.min(ub));
    if cap.is_some() {
        ub = limit;
    }

    // layers[i]: prefix set of size i -> (width so far, predecessor set, last vertex)
    let mut layers: Vec<HashMap<u64, (usize, u64, usize)>> = Vec::with_capacity(n + 1);
    let mut first = HashMap::new();
    first.insert(0u64, (0usize, 0u64, usize::MAX));
    layers.push(first);
    let mut states = 1usize;
    let all = g.vertices();
    let mut shortcut: Option<(u64, usize, usize)> = None;

    for size in 0..n {
        let mut next: HashMap<u64, (usize, u64, usize)> = HashMap::new();
        for (&sb, &(r, _, _)) in &layers[size] {
            let s = VertexSet(sb);
            for v in (all - s).iter() {
                let r2 = r.max(q_value(g, s, v));
                if r2 >= ub {
                    continue;
                }
                let s2 = s.with(v);
                // Any completion of s2 costs at most the number of remaining vertices minus one.
                let rest = n - size - 1;
                if rest == 0 || rest - 1 <= r2 {
                    ub = r2;
                    shortcut = Some((s2.0, r2, v));
                    next.insert(s2.0, (r2, sb, v));
                    continue;
                }
                let e = next.entry(s2.0).or_insert((usize::MAX, sb, v));
                if r2 < e.0 {
                    *e = (r2, sb, v);
                }
            }
        }
        next.retain(|_, e| e.0 < ub || shortcut.is_some_and(|(_, w, _)| e.0 == w));
        states += next.len();
        if states > STATE_BUDGET {
            return envelope(format!(
                "treewidth search on {n} vertices exceeded {STATE_BUDGET} states"
            ));
        }
        layers.push(next);
        if layers.last().is_none_or(|l| l.is_empty()) {
            break;
        }
    }

    if let Some((sb, w, _)) = shortcut {
        // Rebuild the prefix leading to sb, then finish in index order.
        let mut prefix = Vec::new();
        let mut cur = sb;
        let mut size = VertexSet(sb).len();
        while size > 0 {
            let &(_, prev, v) = layers[size].get(&cur).expect("prefix state recorded");
            prefix.push(v);
            cur = prev;
            size -= 1;
        }
        prefix.reverse();
        let s = VertexSet(sb);
        prefix.extend((all - s).iter());
        debug_assert!(order_width(g, &prefix) <= w);
        best_order = prefix;
        return Ok(Some(Elimination {
            width: order_width(g, &best_order),
            order: best_order,
        }));
    }
    if cap.is_some() {
        return Ok(None);
    }
    Ok(Some(Elimination {
        width: heur.width,
        order: best_order,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn tw(g: &Graph) -> usize {
        treewidth_exact(g).unwrap().width
    }

    #[test]
    fn small_families() {
        assert_eq!(tw(&Graph::new(0)), 0);
        assert_eq!(tw(&Graph::new(1)), 0);
        assert_eq!(tw(&Graph::new(3)), 0);
        for n in 1..=7 {
            let k = generate(Family::Clique(n)).unwrap().graph;
            assert_eq!(tw(&k), n - 1);
        }
        assert_eq!(tw(&generate(Family::Path(6)).unwrap().graph), 1);
        assert_eq!(tw(&generate(Family::Cycle(7)).unwrap().graph), 2);
        assert_eq!(tw(&generate(Family::Grid(3)).unwrap().graph), 3);
        assert_eq!(tw(&generate(Family::Grid(4)).unwrap().graph), 4);
        assert_eq!(tw(&generate(Family::Star(5)).unwrap().graph), 1);
    }

    #[test]
    fn order_is_optimal() {
        let g = generate(Family::Grid(3)).unwrap().graph;
        let e = treewidth_exact(&g).unwrap();
        assert_eq!(order_width(&g, &e.order), e.width);
        let mut sorted = e.order.clone();
        sorted.sort();
        assert_eq!(sorted, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn decision_matches_exact() {
        let g = generate(Family::Grid(3)).unwrap().graph;
        assert!(!treewidth_at_most(&g, 2).unwrap());
        assert!(treewidth_at_most(&g, 3).unwrap());
    }

    #[test]
    fn brute_force_agreement() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=7);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.45) {
                        g.add_edge(u, v);
                    }
                }
            }
            let mut best = usize::MAX;
            let mut perm: Vec<usize> = (0..n).collect();
            permute(&mut perm, 0, &mut |p| best = best.min(order_width(&g, p)));
            assert_eq!(tw(&g), best);
            for k in 0..n {
                assert_eq!(treewidth_at_most(&g, k).unwrap(), best <= k);
            }
        }
    }

    fn permute(p: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
        if i == p.len() {
            f(p);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            permute(p, i + 1, f);
            p.swap(i, j);
        }
    }
}
