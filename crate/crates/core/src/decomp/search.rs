//! Exhaustive search for small regular, strongly unbreakable decompositions
//! and the cone-unbreakability bound check.

use super::TreeDecomposition;
use crate::error::{envelope, Result};
use crate::graph::{is_unbreakable, Graph, Separation};
use crate::vset::{combinations, VertexSet};
use serde::Serialize;
use std::collections::HashMap;

/// Largest graph accepted by [`find_decomposition`].
pub const FIND_MAX_VERTICES: usize = 10;

/// Plan for one subtree: its bag and the plans of its children.
#[derive(Clone)]
struct Plan {
    size: usize,
    bag: VertexSet,
    children: Vec<VertexSet>,
}

struct Finder<'a> {
    g: &'a Graph,
    q: usize,
    k: usize,
    adhesion: usize,
    memo: HashMap<u64, Option<Plan>>,
}

impl Finder<'_> {
    /// Bag candidates for a node whose comp is `c` with adhesion `N(c)`:
    /// all `B` with `N(c) ⊆ B ⊆ c ∪ N(c)` and `B ∩ c ≠ ∅`, by size then
    /// lexicographically. The root (`is_root`) may take any bag.
    fn best(&mut self, c: VertexSet, is_root: bool) -> Option<Plan> {
        if !is_root {
            if let Some(p) = self.memo.get(&c.0) {
                return p.clone();
            }
        }
        let g = self.g;
        let adh = if is_root {
            VertexSet::EMPTY
        } else {
            g.neighborhood(c)
        };
        let cone = c | adh;
        let sub = g.induced(cone);
        let map = cone.to_vec();
        let local = |s: VertexSet| -> VertexSet {
            map.iter()
                .enumerate()
                .filter(|(_, &v)| s.contains(v))
                .map(|(i, _)| i)
                .collect()
        };
        let mut best: Option<Plan> = None;
        let min_extra = usize::from(!is_root);
        for size in min_extra..=c.len() {
            for extra in combinations(c, size) {
                let bag = adh | extra;
                let children = g.components(c - extra);
                if children
                    .iter()
                    .any(|ch| g.neighborhood(*ch).len() > self.adhesion)
                {
                    continue;
                }
                if best.as_ref().is_some_and(|b| b.size <= 1 + children.len()) {
                    continue;
                }
                if is_unbreakable(&sub, local(bag), self.q, self.k).is_some() {
                    continue;
                }
                let mut total = 1;
                let mut ok = true;
                for ch in &children {
                    match self.best(*ch, false) {
                        Some(p) => total += p.size,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok && best.as_ref().is_none_or(|b| total < b.size) {
                    best = Some(Plan {
                        size: total,
                        bag,
                        children,
                    });
                }
            }
        }
        if !is_root {
            self.memo.insert(c.0, best.clone());
        }
        best
    }

    fn build(&mut self, plan: &Plan, parent: Option<usize>, out: &mut Vec<(VertexSet, Option<usize>)>) {
        let me = out.len();
        out.push((plan.bag, parent));
        for ch in plan.children.clone() {
            let p = self.best(ch, false).expect("planned child");
            self.build(&p, Some(me), out);
        }
    }
}

/// Smallest (by node count, then canonical bag order) regular decomposition
/// whose bags are all `(q, k)`-unbreakable in their cones and whose adhesion
/// is at most `adhesion`.
///
/// In a regular decomposition the comps of the children of a node are exactly
/// the components of its comp minus its bag, so the search only chooses bags.
pub fn find_decomposition(
    g: &Graph,
    q: usize,
    k: usize,
    adhesion: usize,
) -> Result<Option<TreeDecomposition>> {
    if g.n() > FIND_MAX_VERTICES {
        return envelope(format!(
            "decomposition search is limited to {FIND_MAX_VERTICES} vertices"
        ));
    }
    let mut f = Finder {
        g,
        q,
        k,
        adhesion,
        memo: HashMap::new(),
    };
    let Some(plan) = f.best(g.vertices(), true) else {
        return Ok(None);
    };
    let mut nodes = Vec::new();
    f.build(&plan, None, &mut nodes);
    let names = (0..nodes.len()).map(|i| i.to_string()).collect();
    let (bags, parents) = nodes.into_iter().unzip();
    Ok(Some(TreeDecomposition::from_parts(names, bags, parents)?))
}

/// `Σ_{i ≤ l} C(q, i)`.
pub fn binomial_prefix(q: usize, l: usize) -> usize {
    let mut total = 0usize;
    let mut c = 1usize;
    for i in 0..=l.min(q) {
        total += c;
        c = c * (q - i) / (i + 1);
    }
    total
}

/// Result of checking the cone-unbreakability bound at one node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeBoundOutcome {
    pub node: usize,
    /// Bag unbreakable in its cone, distinct child adhesions, child cones at most `c`.
    pub premises: bool,
    pub c: usize,
    pub adhesion: usize,
    /// `c·(Σ_{i≤ℓ} C(q,i) + k) + q`.
    pub bound: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Separation>,
}

/// Checks whether `G[cone(t)]` is `(c·(C(q,≤ℓ)+k)+q, k)`-unbreakable when
/// the premises hold at `t`; `c` is the largest child cone and `ℓ` the
/// adhesion of the decomposition.
pub fn cone_bound_check(
    g: &Graph,
    td: &TreeDecomposition,
    t: usize,
    q: usize,
    k: usize,
) -> ConeBoundOutcome {
    let children = &td.nodes[t].children;
    let c = children.iter().map(|&y| td.cone(y).len()).max().unwrap_or(0);
    let adhesion = td.adhesion();
    let mut adhs: Vec<u64> = children.iter().map(|&y| td.adh(y).0).collect();
    adhs.sort_unstable();
    let distinct = adhs.windows(2).all(|w| w[0] != w[1]);
    let premises = distinct && td.node_unbreakability(g, t, q, k).is_none();
    let bound = c * (binomial_prefix(q, adhesion) + k) + q;
    let cone = td.cone(t);
    let sub = g.induced(cone);
    let violation = if premises {
        is_unbreakable(&sub, sub.vertices(), bound, k)
    } else {
        None
    };
    let map = cone.to_vec();
    ConeBoundOutcome {
        node: t,
        premises,
        c,
        adhesion,
        bound,
        holds: violation.is_none(),
        violation: violation.map(|s| Separation {
            side_a: s.side_a.iter().map(|i| map[i]).collect(),
            side_b: s.side_b.iter().map(|i| map[i]).collect(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn clique_single_bag() {
        for n in 1..=6 {
            let k = generate(Family::Clique(n)).unwrap().graph;
            let td = find_decomposition(&k, 2, 2, 0).unwrap().unwrap();
            assert_eq!(td.len(), 1);
        }
    }

    #[test]
    fn path_found() {
        let p4 = generate(Family::Path(4)).unwrap().graph;
        let td = find_decomposition(&p4, 2, 1, 1).unwrap().unwrap();
        assert_eq!(td.validate(&p4).unwrap(), None);
        assert!(td.is_regular(&p4));
        assert!(td.is_strongly_unbreakable(&p4, 2, 1));
        let td = find_decomposition(&p4, 1, 1, 1).unwrap().unwrap();
        assert!(td.len() > 1);
        assert!(td.is_strongly_unbreakable(&p4, 1, 1));
        assert!(td.adhesion() <= 1);
    }

    #[test]
    fn connected_graph_single_bag_is_zero_order_unbreakable() {
        // Order-0 separations of a connected graph leave one side empty.
        let c5 = generate(Family::Cycle(5)).unwrap().graph;
        let td = find_decomposition(&c5, 1, 0, 0).unwrap().unwrap();
        assert_eq!(td.len(), 1);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        let td = find_decomposition(&two, 1, 0, 0).unwrap().unwrap();
        assert!(td.len() > 1);
        assert_eq!(td.adhesion(), 0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_prefix(4, 0), 1);
        assert_eq!(binomial_prefix(4, 1), 5);
        assert_eq!(binomial_prefix(4, 2), 11);
        assert_eq!(binomial_prefix(2, 5), 4);
    }

    #[test]
    fn cone_bound_on_found_decompositions() {
        for fam in [Family::Path(6), Family::Cycle(6), Family::Star(4)] {
            let g = generate(fam).unwrap().graph;
            let td = find_decomposition(&g, 2, 1, 2).unwrap().unwrap();
            for t in 0..td.len() {
                let o = cone_bound_check(&g, &td, t, 2, 1);
                assert!(!o.premises || o.holds, "{fam:?} node {t}");
            }
        }
    }
}
