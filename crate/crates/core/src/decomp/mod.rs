//! Rooted tree decompositions and the node anatomy used by the replacement
//! and dynamic-programming experiments.


mod io;
mod search;

pub use io::{parse_decomposition, print_decomposition};
pub use search::{
    binomial_prefix, cone_bound_check, find_decomposition, ConeBoundOutcome, FIND_MAX_VERTICES,
};

use crate::error::{semantic, Result};
use crate::graph::{is_unbreakable, BoundariedGraph, Graph, Separation};
use crate::vset::VertexSet;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub name: String,
    pub bag: VertexSet,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// A rooted tree whose nodes carry bags of graph vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeDecomposition {
    pub nodes: Vec<Node>,
    pub root: usize,
}

/// The four derived sets of a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Anatomy {
    pub adh: VertexSet,
    pub mrg: VertexSet,
    pub cone: VertexSet,
    pub comp: VertexSet,
}

/// Why a decomposition fails to be valid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Invalidity {
    VertexMissing(usize),
    SubtreeDisconnected(usize),
    EdgeUncovered(usize, usize),
}

/// Why a decomposition fails to be regular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Irregularity {
    EmptyMargin(usize),
    DisconnectedComp(usize),
    AdhesionWithoutNeighbor(usize, usize),
}

impl TreeDecomposition {
    /// One node holding `bag`.
    pub fn single(bag: VertexSet) -> Self {
        TreeDecomposition {
            nodes: vec![Node {
                name: "0".into(),
                bag,
                parent: None,
                children: vec![],
            }],
            root: 0,
        }
    }

    /// Builds a decomposition from explicit bags and parent links.
    pub fn from_parts(
        names: Vec<String>,
        bags: Vec<VertexSet>,
        parents: Vec<Option<usize>>,
    ) -> Result<Self> {
        let n = bags.len();
        if n == 0 || names.len() != n || parents.len() != n {
            return semantic("decomposition needs matching nonempty node lists");
        }
        let roots: Vec<usize> = (0..n).filter(|&i| parents[i].is_none()).collect();
        if roots.len() != 1 {
            return semantic(format!("decomposition needs exactly one root, found {}", roots.len()));
        }
        let mut nodes: Vec<Node> = (0..n)
            .map(|i| Node {
                name: names[i].clone(),
                bag: bags[i],
                parent: parents[i],
                children: vec![],
            })
            .collect();
        for i in 0..n {
            if let Some(p) = parents[i] {
                if p >= n {
                    return semantic("parent index out of range");
                }
                nodes[p].children.push(i);
            }
        }
        let td = TreeDecomposition {
            nodes,
            root: roots[0],
        };
        if td.post_order().len() != n {
            return semantic("parent links do not form a tree");
        }
        Ok(td)
    }

    /// Decomposition induced by an elimination order of `g`.
    pub fn from_elimination(g: &Graph, order: &[usize]) -> Self {
        let n = g.n();
        if n == 0 {
            return TreeDecomposition::single(VertexSet::EMPTY);
        }
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj: Vec<VertexSet> = g.adjacency_rows().to_vec();
        let mut alive = g.vertices();
        let mut bags = vec![VertexSet::EMPTY; n];
        let mut parents: Vec<Option<usize>> = vec![None; n];
        for (i, &v) in order.iter().enumerate() {
            let nb = adj[v] & alive.without(v);
            bags[i] = nb.with(v);
            for a in nb.iter() {
                adj[a] |= nb.without(a);
            }
            alive.remove(v);
            parents[i] = nb.iter().map(|u| pos[u]).min();
        }
        // Join the roots of separate components under the last node.
        for i in 0..n - 1 {
            if parents[i].is_none() {
                parents[i] = Some(n - 1);
            }
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        TreeDecomposition::from_parts(names, bags, parents).expect("elimination tree")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn bag(&self, x: usize) -> VertexSet {
        self.nodes[x].bag
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Maximum adhesion size over all nodes.
    pub fn adhesion(&self) -> usize {
        (0..self.len()).map(|x| self.adh(x).len()).max().unwrap_or(0)
    }

    pub fn node_by_name(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name == name)
    }

    /// Nodes in post-order (children before parents, children in stored order).
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![(self.root, false)];
        let mut seen = vec![false; self.len()];
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                out.push(x);
                continue;
            }
            if seen[x] {
                continue;
            }
            seen[x] = true;
            stack.push((x, true));
            for &c in self.nodes[x].children.iter().rev() {
                stack.push((c, false));
            }
        }
        out
    }

    /// `x` and all its descendants.
    pub fn subtree(&self, x: usize) -> Vec<usize> {
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            out.extend(self.nodes[out[i]].children.iter().copied());
            i += 1;
        }
        out
    }

    pub fn adh(&self, x: usize) -> VertexSet {
        match self.nodes[x].parent {
            None => VertexSet::EMPTY,
            Some(p) => self.nodes[p].bag & self.nodes[x].bag,
        }
    }

    pub fn cone(&self, x: usize) -> VertexSet {
        self.subtree(x)
            .into_iter()
            .fold(VertexSet::EMPTY, |acc, y| acc | self.nodes[y].bag)
    }

    pub fn anatomy(&self, x: usize) -> Result<Anatomy> {
        if x >= self.len() {
            return semantic(format!("unknown node {x}"));
        }
        let adh = self.adh(x);
        let cone = self.cone(x);
        Ok(Anatomy {
            adh,
            mrg: self.nodes[x].bag - adh,
            cone,
            comp: cone - adh,
        })
    }

    /// Checks both decomposition conditions.
    pub fn validate(&self, g: &Graph) -> Result<Option<Invalidity>> {
        for node in &self.nodes {
            if !node.bag.is_subset(g.vertices()) {
                return semantic(format!("node {} references an unknown vertex", node.name));
            }
        }
        for v in 0..g.n() {
            let holders: Vec<usize> = (0..self.len())
                .filter(|&x| self.nodes[x].bag.contains(v))
                .collect();
            if holders.is_empty() {
                return Ok(Some(Invalidity::VertexMissing(v)));
            }
            // The holders are connected iff exactly one of them has a parent outside.
            let tops = holders
                .iter()
                .filter(|&&x| match self.nodes[x].parent {
                    None => true,
                    Some(p) => !self.nodes[p].bag.contains(v),
                })
                .count();
            if tops != 1 {
                return Ok(Some(Invalidity::SubtreeDisconnected(v)));
            }
        }
        for (u, v) in g.edges() {
            let pair = VertexSet::singleton(u).with(v);
            if !self.nodes.iter().any(|n| pair.is_subset(n.bag)) {
                return Ok(Some(Invalidity::EdgeUncovered(u, v)));
            }
        }
        Ok(None)
    }

    /// First violation of the three regularity conditions, if any.
    pub fn irregularity(&self, g: &Graph) -> Option<Irregularity> {
        for x in 0..self.len() {
            if x == self.root {
                continue;
            }
            let a = self.anatomy(x).expect("node in range");
            if a.mrg.is_empty() {
                return Some(Irregularity::EmptyMargin(x));
            }
            if !g.is_connected_set(a.comp) {
                return Some(Irregularity::DisconnectedComp(x));
            }
            for v in a.adh.iter() {
                if !g.neighbors(v).intersects(a.comp) {
                    return Some(Irregularity::AdhesionWithoutNeighbor(x, v));
                }
            }
        }
        None
    }

    pub fn is_regular(&self, g: &Graph) -> bool {
        self.irregularity(g).is_none()
    }

    /// First node whose bag is not `(q, k)`-unbreakable in `G[cone]`, with the
    /// violating separation expressed in cone-local vertex indices.
    pub fn strong_unbreakability_violation(
        &self,
        g: &Graph,
        q: usize,
        k: usize,
    ) -> Option<(usize, Separation)> {
        for x in 0..self.len() {
            if let Some(sep) = self.node_unbreakability(g, x, q, k) {
                return Some((x, sep));
            }
        }
        None
    }

    /// Violation of `(q, k)`-unbreakability of `bag(x)` inside `G[cone(x)]`,
    /// mapped back to graph vertex indices.
    pub fn node_unbreakability(&self, g: &Graph, x: usize, q: usize, k: usize) -> Option<Separation> {
        let cone = self.cone(x);
        let sub = g.induced(cone);
        let map = cone.to_vec();
        let local_bag: VertexSet = map
            .iter()
            .enumerate()
            .filter(|(_, &v)| self.nodes[x].bag.contains(v))
            .map(|(i, _)| i)
            .collect();
        is_unbreakable(&sub, local_bag, q, k).map(|s| Separation {
            side_a: s.side_a.iter().map(|i| map[i]).collect(),
            side_b: s.side_b.iter().map(|i| map[i]).collect(),
        })
    }

    pub fn is_strongly_unbreakable(&self, g: &Graph, q: usize, k: usize) -> bool {
        self.strong_unbreakability_violation(g, q, k).is_none()
    }

    /// `(G[cone(t)], X ∩ cone(t), adh(t))` with the boundary in ascending order.
    pub fn extract_cone(&self, g: &Graph, annot: VertexSet, t: usize) -> Result<BoundariedGraph> {
        let a = self.anatomy(t)?;
        let sub = g.induced(a.cone);
        let map = a.cone.to_vec();
        let local = |s: VertexSet| -> VertexSet {
            map.iter()
                .enumerate()
                .filter(|(_, &v)| s.contains(v))
                .map(|(i, _)| i)
                .collect()
        };
        let boundary = local(a.adh).to_vec();
        BoundariedGraph::new(sub, local(annot), boundary)
    }
}
