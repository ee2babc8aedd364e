//! Separations and `(q, k)`-unbreakability.

use super::Graph;
use crate::vset::{combinations, VertexSet};
use serde::Serialize;

/// A pair `(A, B)` with `A ∪ B = V` and no edge between `A \ B` and `B \ A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Separation {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl Separation {
    pub fn separator(&self) -> VertexSet {
        self.side_a & self.side_b
    }

    pub fn order(&self) -> usize {
        self.separator().len()
    }

    /// Checks the separation invariants against `g`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        if self.side_a | self.side_b != g.vertices() {
            return false;
        }
        let only_a = self.side_a - self.side_b;
        let only_b = self.side_b - self.side_a;
        only_a.iter().all(|v| !g.neighbors(v).intersects(only_b))
    }
}

/// Separator candidates of size at most `k`, by size then lexicographically.
fn separators(g: &Graph, k: usize) -> impl Iterator<Item = VertexSet> + '_ {
    (0..=k.min(g.n())).flat_map(move |size| combinations(g.vertices(), size))
}

/// Every separation of order at most `k`, each exactly once. For each
/// separator `S` every assignment of the components of `G - S` to the two
/// sides is produced. The count is exponential; intended for small graphs.
pub fn enumerate_separations(g: &Graph, k: usize) -> impl Iterator<Item = Separation> + '_ {
    separators(g, k).flat_map(move |s| {
        let comps = g.components(g.vertices() - s);
        let c = comps.len();
        assert!(c < 63, "too many components to enumerate");
        (0u64..1u64 << c).map(move |mask| {
            let mut left = s;
            let mut right = s;
            for (i, comp) in comps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    right |= *comp;
                } else {
                    left |= *comp;
                }
            }
            Separation {
                side_a: left,
                side_b: right,
            }
        })
    })
}

/// Returns `None` if every separation of order at most `k` has at most `q`
/// vertices of `x` on one side; otherwise a violating separation.
pub fn is_unbreakable(g: &Graph, x: VertexSet, q: usize, k: usize) -> Option<Separation> {
    let x = x & g.vertices();
    if x.len() <= q {
        return None;
    }
    for s in separators(g, k) {
        let sx = (s & x).len();
        let comps = g.components(g.vertices() - s);
        let counts: Vec<usize> = comps.iter().map(|c| (*c & x).len()).collect();
        let total: usize = counts.iter().sum();
        // Need a left count L with sx + L > q and sx + total - L > q.
        if 2 * sx + total < 2 * (q + 1) {
            continue;
        }
        let lo = (q + 1).saturating_sub(sx);
        let Some(hi) = (sx + total).checked_sub(q + 1) else {
            continue;
        };
        if lo > hi {
            continue;
        }
        // reach[v] = Some(i) when sum v is first reached by adding component i.
        let mut reach: Vec<Option<usize>> = vec![None; total + 1];
        let mut reachable = vec![false; total + 1];
        reachable[0] = true;
        for (i, &cnt) in counts.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            for v in (cnt..=total).rev() {
                if !reachable[v] && reachable[v - cnt] {
                    reachable[v] = true;
                    reach[v] = Some(i);
                }
            }
        }
        if let Some(target) = (lo..=hi).find(|&v| reachable[v]) {
            let mut left_idx = VertexSet::EMPTY;
            let mut v = target;
            while v > 0 {
                let i = reach[v].expect("reachable sum has a predecessor");
                left_idx.insert(i);
                v -= counts[i];
            }
            let mut left = s;
            let mut right = s;
            for (i, comp) in comps.iter().enumerate() {
                if left_idx.contains(i) {
                    left |= *comp;
                } else {
                    right |= *comp;
                }
            }
            return Some(Separation {
                side_a: left,
                side_b: right,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use std::collections::HashSet;

    #[test]
    fn clique_has_only_trivial_order_zero_separations() {
        let k3 = generate(Family::Clique(3)).unwrap().graph;
        let seps: Vec<_> = enumerate_separations(&k3, 0).collect();
        assert_eq!(seps.len(), 2);
        assert!(seps
            .iter()
            .all(|s| s.side_a == k3.vertices() || s.side_b == k3.vertices()));
    }

    #[test]
    fn path_separation_through_middle() {
        let p3 = generate(Family::Path(3)).unwrap().graph;
        let seps: Vec<_> = enumerate_separations(&p3, 1).collect();
        let want = Separation {
            side_a: VertexSet::from_iter_of([0, 1]),
            side_b: VertexSet::from_iter_of([1, 2]),
        };
        assert!(seps.contains(&want));
        let unique: HashSet<_> = seps.iter().collect();
        assert_eq!(unique.len(), seps.len());
        assert!(seps.iter().all(|s| s.is_valid(&p3)));
    }

    #[test]
    fn edgeless_pair_splits() {
        let g = Graph::new(2);
        let seps: Vec<_> = enumerate_separations(&g, 0).collect();
        assert!(seps.contains(&Separation {
            side_a: VertexSet::singleton(0),
            side_b: VertexSet::singleton(1),
        }));
    }

    #[test]
    fn unbreakable_examples() {
        let k6 = generate(Family::Clique(6)).unwrap().graph;
        assert!(is_unbreakable(&k6, k6.vertices(), 2, 2).is_none());
        let p5 = generate(Family::Path(5)).unwrap().graph;
        let sep = is_unbreakable(&p5, p5.vertices(), 1, 1).expect("breakable");
        assert!(sep.is_valid(&p5) && sep.order() <= 1);
        assert!(sep.side_a.len() > 1 && sep.side_b.len() > 1);
        assert!(is_unbreakable(&p5, p5.vertices(), 5, 3).is_none());
    }
}
