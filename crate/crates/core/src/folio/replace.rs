use super::{ext_folio, glue_boundaried};
use crate::decomp::TreeDecomposition;
use crate::error::{contract, precondition, Result};
use crate::graph::{AnnotatedGraph, BoundariedGraph, Graph};
use crate::minors::is_annotated_topological_minor;
use crate::vset::VertexSet;
use serde::Serialize;

/// Checks requested from [`replace_cone`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReplaceChecks {
    /// Level of the extended folios that must agree.
    pub folio_level: usize,
    /// `(q, k)`: verify that every other strongly unbreakable node stays so.
    pub unbreakability: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Replacement {
    #[serde(skip)]
    pub graph: AnnotatedGraph,
    #[serde(skip)]
    pub decomposition: TreeDecomposition,
    pub removed_vertices: usize,
    pub added_vertices: usize,
    pub adhesion_before: usize,
    pub adhesion_after: usize,
    pub regular_before: bool,
    pub regular_after: bool,
    /// Nodes whose strong unbreakability was checked after the replacement.
    pub unbreakability_checked: usize,
}

/// Result of cutting `inner` out of a graph and gluing `h` onto `boundary`.
pub(crate) struct Splice {
    pub graph: AnnotatedGraph,
    /// New index of each old vertex, `None` for removed ones.
    pub old_to_new: Vec<Option<usize>>,
    /// New indices of the non-boundary vertices of `h`.
    pub added: VertexSet,
}

/// Removes `inner` from `g` and glues `h` along `boundary` (label order).
/// `inner` must have no neighbors outside `inner ∪ boundary`.
pub(crate) fn splice(
    g: &Graph,
    annot: VertexSet,
    inner: VertexSet,
    boundary: &[usize],
    h: &BoundariedGraph,
) -> Result<Splice> {
    let keep = g.vertices() - inner;
    let mut old_to_new = vec![None; g.n()];
    for (i, v) in keep.iter().enumerate() {
        old_to_new[v] = Some(i);
    }
    let ctx = BoundariedGraph::new(
        g.induced(keep),
        (annot & keep).iter().filter_map(|v| old_to_new[v]).collect(),
        boundary.iter().map(|&b| old_to_new[b].expect("boundary is kept")).collect(),
    )?;
    let before = ctx.graph.n();
    let (glued, _) = glue_boundaried(&ctx, h)?;
    let added = glued.graph.vertices() - VertexSet::full(before);
    Ok(Splice {
        graph: glued.annotated(),
        old_to_new,
        added,
    })
}

/// Rebuilds `td` after a splice: the subtrees rooted at `drop` are removed,
/// bags are remapped, and the bags listed in `new_bags` are replaced.
pub(crate) fn prune_decomposition(
    td: &TreeDecomposition,
    drop: &[usize],
    new_bags: &[(usize, VertexSet)],
    old_to_new: &[Option<usize>],
) -> Result<(TreeDecomposition, Vec<Option<usize>>)> {
    let mut dropped = vec![false; td.len()];
    for &d in drop {
        for x in td.subtree(d) {
            dropped[x] = true;
        }
    }
    let mut node_map = vec![None; td.len()];
    let mut next = 0;
    for (x, slot) in node_map.iter_mut().enumerate() {
        if !dropped[x] {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut names = Vec::new();
    let mut bags = Vec::new();
    let mut parents = Vec::new();
    for (x, node) in td.nodes.iter().enumerate() {
        if dropped[x] {
            continue;
        }
        names.push(node.name.clone());
        let bag = match new_bags.iter().find(|(y, _)| *y == x) {
            Some((_, b)) => *b,
            None => node.bag.iter().filter_map(|v| old_to_new[v]).collect(),
        };
        bags.push(bag);
        parents.push(node.parent.map(|p| node_map[p].expect("parent of a kept node is kept")));
    }
    Ok((TreeDecomposition::from_parts(names, bags, parents)?, node_map))
}

/// Replaces `G[cone(t)]` by `replacement`, glued along `adh(t)` in ascending
/// order, after checking compatibility, the connectivity condition and
/// equality of extended folios. The new decomposition drops the strict
/// descendants of `t` and sets `bag(t)` to the replacement's vertices. The
/// new decomposition is checked to be valid, to have adhesion no larger, to
/// stay regular if `td` was, and (if requested) to keep strong
/// unbreakability at every other node.
pub fn replace_cone(
    g: &AnnotatedGraph,
    td: &TreeDecomposition,
    t: usize,
    replacement: &BoundariedGraph,
    checks: &ReplaceChecks,
) -> Result<Replacement> {
    if let Some(bad) = td.validate(&g.graph)? {
        return precondition(format!("decomposition is not valid: {bad:?}"));
    }
    let anatomy = td.anatomy(t)?;
    let cone = td.extract_cone(&g.graph, g.annot, t)?;
    if !cone.is_compatible(replacement) {
        return precondition("replacement is not compatible with the cone");
    }
    let free = replacement.graph.vertices() - replacement.boundary_set();
    let old_connected = g.graph.is_connected_set(anatomy.comp);
    if old_connected != replacement.graph.is_connected_set(free) {
        return precondition(format!(
            "connectivity check failed: comp(t) is {}connected but the replacement's interior is {}connected",
            if old_connected { "" } else { "not " },
            if old_connected { "not " } else { "" },
        ));
    }
    let level = checks.folio_level;
    if ext_folio(&cone, level)? != ext_folio(replacement, level)? {
        return precondition(format!("extended {level}-folios differ"));
    }
    let boundary = anatomy.adh.to_vec();
    let sp = splice(&g.graph, g.annot, anatomy.comp, &boundary, replacement)?;
    let new_bag = anatomy.adh.iter().filter_map(|v| sp.old_to_new[v]).collect::<VertexSet>() | sp.added;
    let children = td.nodes[t].children.clone();
    let (new_td, node_map) =
        prune_decomposition(td, &children, &[(t, new_bag)], &sp.old_to_new)?;

    if let Some(bad) = new_td.validate(&sp.graph.graph)? {
        return contract(format!("replacement produced an invalid decomposition: {bad:?}"));
    }
    let (adhesion_before, adhesion_after) = (td.adhesion(), new_td.adhesion());
    if adhesion_after > adhesion_before {
        return contract(format!(
            "adhesion grew from {adhesion_before} to {adhesion_after}"
        ));
    }
    let regular_before = td.is_regular(&g.graph);
    let regular_after = new_td.is_regular(&sp.graph.graph);
    if regular_before && !regular_after {
        return contract(format!(
            "regularity lost: {:?}",
            new_td.irregularity(&sp.graph.graph)
        ));
    }
    let mut unbreakability_checked = 0;
    if let Some((q, k)) = checks.unbreakability {
        for (x, mapped) in node_map.iter().enumerate() {
            let Some(y) = *mapped else { continue };
            if x == t || td.node_unbreakability(&g.graph, x, q, k).is_some() {
                continue;
            }
            unbreakability_checked += 1;
            if let Some(sep) = new_td.node_unbreakability(&sp.graph.graph, y, q, k) {
                return contract(format!(
                    "node {} lost strong ({q},{k})-unbreakability: {sep:?}",
                    td.nodes[x].name
                ));
            }
        }
    }
    Ok(Replacement {
        removed_vertices: anatomy.comp.len(),
        added_vertices: sp.added.len(),
        graph: sp.graph,
        decomposition: new_td,
        adhesion_before,
        adhesion_after,
        regular_before,
        regular_after,
        unbreakability_checked,
    })
}

/// True unless `g` excludes `h` as a topological minor while `g_hat`
/// contains it.
pub fn check_tm_preserved(g: &Graph, g_hat: &Graph, h: &Graph, h_size: usize) -> Result<bool> {
    if h.n() > h_size {
        return precondition(format!(
            "pattern has {} vertices, more than the bound {h_size}",
            h.n()
        ));
    }
    let pattern = AnnotatedGraph::unannotated(h.clone());
    let excluded = !is_annotated_topological_minor(&AnnotatedGraph::unannotated(g.clone()), &pattern);
    Ok(!excluded || !is_annotated_topological_minor(&AnnotatedGraph::unannotated(g_hat.clone()), &pattern))
}
