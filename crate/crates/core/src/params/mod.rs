//! Annotated graph parameters with witnesses.

mod treewidth;

pub use treewidth::{
    min_fill_upper, mmw_lower, order_width, treewidth_at_most, treewidth_exact, Elimination,
};

use crate::decomp::TreeDecomposition;
use crate::error::{envelope, semantic, Result};
use crate::graph::{generate, AnnotatedGraph, Family, Graph};
use crate::minors::{find_annotated_minor, MinorModel};
use crate::vset::{combinations, VertexSet};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;

/// Supersets examined by one exhaustive superset search before refusing.
const SUPERSET_BUDGET: u64 = 1 << 20;
/// Block partitions examined by one annotated-treewidth run before refusing.
const PARTITION_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Size,
    Adeg,
    Tw,
    Ttw,
    Atw,
    Brg,
    Bog,
    Adbrg,
}

impl ParamKind {
    pub const ALL: [ParamKind; 8] = [
        ParamKind::Size,
        ParamKind::Adeg,
        ParamKind::Tw,
        ParamKind::Ttw,
        ParamKind::Atw,
        ParamKind::Brg,
        ParamKind::Bog,
        ParamKind::Adbrg,
    ];

    pub fn parse(s: &str) -> Result<ParamKind> {
        Ok(match s {
            "size" => ParamKind::Size,
            "adeg" => ParamKind::Adeg,
            "tw" => ParamKind::Tw,
            "ttw" => ParamKind::Ttw,
            "atw" => ParamKind::Atw,
            "brg" => ParamKind::Brg,
            "bog" => ParamKind::Bog,
            "adbrg" => ParamKind::Adbrg,
            _ => return semantic(format!("unknown parameter '{s}'")),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ParamKind::Size => "size",
            ParamKind::Adeg => "adeg",
            ParamKind::Tw => "tw",
            ParamKind::Ttw => "ttw",
            ParamKind::Atw => "atw",
            ParamKind::Brg => "brg",
            ParamKind::Bog => "bog",
            ParamKind::Adbrg => "adbrg",
        }
    }

    /// tw and adeg are auxiliary and not minor-monotone.
    pub fn is_minor_monotone(self) -> bool {
        !matches!(self, ParamKind::Tw | ParamKind::Adeg)
    }
}

impl fmt::Display for ParamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Certificate attached to a parameter value. Vertex sets use graph indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// The annotated set itself.
    Set { set: VertexSet },
    /// A decomposition of the whole graph of minimum width.
    Decomposition { decomposition: TreeDecomposition },
    /// A superset and a decomposition of its torso.
    Torso {
        superset: VertexSet,
        decomposition: TreeDecomposition,
    },
    /// A component of `G - X` with the largest attachment.
    Component { component: VertexSet },
    /// Connected blocks meeting `X` whose quotient has maximum treewidth.
    Partition { blocks: Vec<VertexSet> },
    /// A model of the annotated `k × k` grid.
    Grid { k: usize, model: MinorModel },
    /// The superset minimizing `max(brg, adeg)`.
    Superset { superset: VertexSet },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamResult {
    pub kind: ParamKind,
    pub value: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// `G[X]` plus a clique on `N(C) ∩ X` for every component `C` of `G - X`.
/// Labels and colors of `X` are kept.
pub fn torso(g: &Graph, x: VertexSet) -> Graph {
    let x = x & g.vertices();
    let mut t = g.clone();
    for c in g.components(g.vertices() - x) {
        let nb = g.neighborhood(c) & x;
        for a in nb.iter() {
            for b in nb.iter().filter(|&b| b > a) {
                t.add_edge(a, b);
            }
        }
    }
    t.induced(x)
}

/// Largest `|N(C)|` over components `C` of `G - X`, with the first maximizer.
pub fn adeg(g: &Graph, x: VertexSet) -> (usize, Option<VertexSet>) {
    let mut best = (0, None);
    for c in g.components(g.vertices() - (x & g.vertices())) {
        let d = g.neighborhood(c).len();
        if best.1.is_none() || d > best.0 {
            best = (d, Some(c));
        }
    }
    best
}

fn map_decomposition(td: TreeDecomposition, map: &[usize]) -> TreeDecomposition {
    let mut td = td;
    for node in &mut td.nodes {
        node.bag = node.bag.iter().map(|i| map[i]).collect();
    }
    td
}

/// Exact treewidth with a decomposition of matching width.
pub fn treewidth(g: &Graph) -> Result<ParamResult> {
    let e = treewidth_exact(g)?;
    Ok(ParamResult {
        kind: ParamKind::Tw,
        value: e.width,
        witness: Some(Witness::Decomposition {
            decomposition: TreeDecomposition::from_elimination(g, &e.order),
        }),
    })
}

/// `G[X]` is a subgraph of every torso over a superset of `X`.
fn ttw_lower(g: &Graph, x: VertexSet) -> usize {
    mmw_lower(&g.induced(x))
}

/// Supersets of `x` by size, then lexicographically; stops when `visit`
/// returns true. Refuses beyond the superset budget.
fn for_supersets(
    g: &Graph,
    x: VertexSet,
    what: &str,
    mut visit: impl FnMut(VertexSet) -> Result<bool>,
) -> Result<()> {
    let rest = g.vertices() - x;
    if rest.len() > 62 || (1u64 << rest.len()) > SUPERSET_BUDGET {
        return envelope(format!(
            "{what}: {} candidate vertices exceed the superset budget",
            rest.len()
        ));
    }
    for size in 0..=rest.len() {
        for extra in combinations(rest, size) {
            if visit(x | extra)? {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Torso treewidth with the minimizing superset and a torso decomposition.
pub fn ttw(g: &Graph, x: VertexSet) -> Result<ParamResult> {
    let x = x & g.vertices();
    let result = |superset: VertexSet, value: usize, order: Vec<usize>| {
        let t = torso(g, superset);
        let map = superset.to_vec();
        let td = TreeDecomposition::from_elimination(&t, &order);
        ParamResult {
            kind: ParamKind::Ttw,
            value,
            witness: Some(Witness::Torso {
                superset,
                decomposition: map_decomposition(td, &map),
            }),
        }
    };
    if x.is_empty() {
        return Ok(result(x, 0, vec![]));
    }
    let lb = ttw_lower(g, x);
    let mut best: Option<(usize, VertexSet)> = None;
    for_supersets(g, x, "ttw", |s| {
        let t = torso(g, s);
        let cap = best.map_or(usize::MAX, |b| b.0);
        if cap == usize::MAX {
            let w = treewidth_exact(&t)?.width;
            best = Some((w, s));
        } else if cap > 0 && treewidth_at_most(&t, cap - 1)? {
            best = Some((treewidth_exact(&t)?.width, s));
        }
        Ok(best.is_some_and(|b| b.0 <= lb))
    })?;
    let (value, s) = best.expect("X itself is a candidate");
    let order = treewidth_exact(&torso(g, s))?.order;
    Ok(result(s, value, order))
}

/// Decides `ttw(G, X) <= k` using bounds first.
pub fn ttw_at_most(g: &Graph, x: VertexSet, k: usize) -> Result<bool> {
    let x = x & g.vertices();
    if x.len() <= k + 1 {
        return Ok(true);
    }
    let t = torso(g, x);
    if min_fill_upper(&t).width <= k || min_fill_upper(g).width <= k {
        return Ok(true);
    }
    if ttw_lower(g, x) > k {
        return Ok(false);
    }
    if treewidth_at_most(&t, k)? {
        return Ok(true);
    }
    let mut found = false;
    for_supersets(g, x, "ttw", |s| {
        found = treewidth_at_most(&torso(g, s), k)?;
        Ok(found)
    })?;
    Ok(found)
}

fn grid_pattern(kind: ParamKind, k: usize) -> AnnotatedGraph {
    let fam = match kind {
        ParamKind::Brg => Family::RainbowGrid(k),
        _ => Family::OuterGrid(k),
    };
    generate(fam).expect("grid pattern within size")
}

/// Largest `k` whose annotated grid is a minor, with its model.
fn grid_value(kind: ParamKind, g: &Graph, x: VertexSet) -> ParamResult {
    let host = AnnotatedGraph::new(g.clone(), x);
    let mut value = 0;
    let mut witness = None;
    let mut k = 1;
    while k * k <= g.n() {
        match find_annotated_minor(&host, &grid_pattern(kind, k)) {
            Some(model) => {
                value = k;
                witness = Some(Witness::Grid { k, model });
                k += 1;
            }
            None => break,
        }
    }
    ParamResult {
        kind,
        value,
        witness,
    }
}

fn grid_at_most(kind: ParamKind, g: &Graph, x: VertexSet, k: usize) -> bool {
    let k1 = k + 1;
    if x.is_empty() || k1 * k1 > g.n() {
        return true;
    }
    let host = AnnotatedGraph::new(g.clone(), x);
    find_annotated_minor(&host, &grid_pattern(kind, k1)).is_none()
}

/// `min over X' ⊇ X of max(brg(G, X'), adeg(G, X'))`.
fn adbrg(g: &Graph, x: VertexSet) -> Result<ParamResult> {
    let x = x & g.vertices();
    let floor = grid_value(ParamKind::Brg, g, x).value;
    let mut best: Option<(usize, VertexSet)> = None;
    for_supersets(g, x, "adbrg", |s| {
        let a = adeg(g, s).0;
        if let Some((b, _)) = best {
            if a >= b || !grid_at_most(ParamKind::Brg, g, s, b - 1) {
                return Ok(false);
            }
        }
        let v = a.max(grid_value(ParamKind::Brg, g, s).value);
        if best.is_none_or(|(b, _)| v < b) {
            best = Some((v, s));
        }
        Ok(v <= floor)
    })?;
    let (value, s) = best.expect("X itself is a candidate");
    Ok(ParamResult {
        kind: ParamKind::Adbrg,
        value,
        witness: Some(Witness::Superset { superset: s }),
    })
}

/// Connected blocks covering the components that meet `X`, each block
/// meeting `X`; calls `visit` with every such partition.
fn for_block_partitions(
    g: &Graph,
    x: VertexSet,
    mut visit: impl FnMut(&[VertexSet]) -> Result<bool>,
) -> Result<()> {
    let cover: VertexSet = g
        .components(g.vertices())
        .into_iter()
        .filter(|c| c.intersects(x))
        .fold(VertexSet::EMPTY, |a, c| a | c);
    let order = cover.to_vec();
    let mut blocks: Vec<VertexSet> = Vec::new();
    let mut count = 0u64;
    fn rec(
        g: &Graph,
        x: VertexSet,
        order: &[usize],
        i: usize,
        blocks: &mut Vec<VertexSet>,
        count: &mut u64,
        visit: &mut dyn FnMut(&[VertexSet]) -> Result<bool>,
    ) -> Result<bool> {
        let remaining: VertexSet = order[i..].iter().copied().collect();
        // Every block must stay connectable and able to meet X.
        for b in blocks.iter() {
            let r = g.reach(b.first().expect("nonempty block"), *b | remaining);
            if !b.is_subset(r) || !(r & (*b | remaining)).intersects(x) {
                return Ok(false);
            }
        }
        if i == order.len() {
            *count += 1;
            if *count > PARTITION_BUDGET {
                return envelope("atw: block partition budget exceeded");
            }
            if blocks.iter().all(|b| b.intersects(x)) {
                return visit(blocks);
            }
            return Ok(false);
        }
        let v = order[i];
        for j in 0..=blocks.len() {
            if j == blocks.len() {
                blocks.push(VertexSet::singleton(v));
            } else {
                blocks[j].insert(v);
            }
            let stop = rec(g, x, order, i + 1, blocks, count, visit)?;
            if j == blocks.len() - 1 && blocks[j].len() == 1 && blocks[j].contains(v) {
                blocks.pop();
            } else {
                blocks[j].remove(v);
            }
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
    rec(g, x, &order, 0, &mut blocks, &mut count, &mut visit)?;
    Ok(())
}

fn quotient(g: &Graph, blocks: &[VertexSet]) -> Graph {
    let mut q = Graph::new(blocks.len());
    for i in 0..blocks.len() {
        let nb = g.neighborhood(blocks[i]);
        for j in i + 1..blocks.len() {
            if nb.intersects(blocks[j]) {
                q.add_edge(i, j);
            }
        }
    }
    q
}

/// Annotated treewidth: the largest treewidth of a minor all of whose
/// branch sets meet `X`. Extending blocks never lowers the quotient's
/// treewidth, so only partitions covering every component that meets `X`
/// are examined.
fn atw(g: &Graph, x: VertexSet) -> Result<ParamResult> {
    let x = x & g.vertices();
    let mut best = (0usize, Vec::new());
    let mut memo: HashMap<Vec<u64>, usize> = HashMap::new();
    let upper = x.len().saturating_sub(1);
    for_block_partitions(g, x, |blocks| {
        let q = quotient(g, blocks);
        let key: Vec<u64> = q.adjacency_rows().iter().map(|r| r.0).collect();
        let w = match memo.get(&key) {
            Some(&w) => w,
            None => {
                let w = treewidth_exact(&q)?.width;
                memo.insert(key, w);
                w
            }
        };
        if w > best.0 || best.1.is_empty() {
            best = (w, blocks.to_vec());
        }
        Ok(best.0 >= upper)
    })?;
    Ok(ParamResult {
        kind: ParamKind::Atw,
        value: best.0,
        witness: Some(Witness::Partition { blocks: best.1 }),
    })
}

fn atw_at_most(g: &Graph, x: VertexSet, k: usize) -> Result<bool> {
    let x = x & g.vertices();
    if x.len() <= k + 1 {
        return Ok(true);
    }
    if mmw_lower(&g.induced(x)) > k {
        return Ok(false);
    }
    let mut exceeded = false;
    for_block_partitions(g, x, |blocks| {
        exceeded = !treewidth_at_most(&quotient(g, blocks), k)?;
        Ok(exceeded)
    })?;
    Ok(!exceeded)
}

/// Exact value of `kind` on `(G, X)` with a witness.
pub fn compute(kind: ParamKind, ag: &AnnotatedGraph) -> Result<ParamResult> {
    let g = &ag.graph;
    let x = ag.annot & g.vertices();
    match kind {
        ParamKind::Size => Ok(ParamResult {
            kind,
            value: x.len(),
            witness: Some(Witness::Set { set: x }),
        }),
        ParamKind::Adeg => {
            let (value, comp) = adeg(g, x);
            Ok(ParamResult {
                kind,
                value,
                witness: comp.map(|component| Witness::Component { component }),
            })
        }
        ParamKind::Tw => treewidth(g),
        ParamKind::Ttw => ttw(g, x),
        ParamKind::Atw => atw(g, x),
        ParamKind::Brg | ParamKind::Bog => Ok(grid_value(kind, g, x)),
        ParamKind::Adbrg => adbrg(g, x),
    }
}

/// Value of `kind` on `(G, X)` without witness bookkeeping where cheaper.
pub fn value(kind: ParamKind, g: &Graph, x: VertexSet) -> Result<usize> {
    let x = x & g.vertices();
    match kind {
        ParamKind::Size => Ok(x.len()),
        ParamKind::Adeg => Ok(adeg(g, x).0),
        ParamKind::Tw => Ok(treewidth_exact(g)?.width),
        _ => Ok(compute(kind, &AnnotatedGraph::new(g.clone(), x))?.value),
    }
}

/// Decides `kind(G, X) <= k`.
pub fn at_most(kind: ParamKind, g: &Graph, x: VertexSet, k: usize) -> Result<bool> {
    let x = x & g.vertices();
    match kind {
        ParamKind::Size => Ok(x.len() <= k),
        ParamKind::Adeg => Ok(adeg(g, x).0 <= k),
        ParamKind::Tw => treewidth_at_most(g, k),
        ParamKind::Ttw => ttw_at_most(g, x, k),
        ParamKind::Atw => atw_at_most(g, x, k),
        ParamKind::Brg | ParamKind::Bog => Ok(grid_at_most(kind, g, x, k)),
        ParamKind::Adbrg => {
            if !grid_at_most(ParamKind::Brg, g, x, k) {
                return Ok(false);
            }
            Ok(adbrg(g, x)?.value <= k)
        }
    }
}

/// A lower bound on `kind(G, X')` for every `X' ⊇ X`; only meaningful for
/// minor-monotone kinds.
pub fn monotone_lower_bound(kind: ParamKind, g: &Graph, x: VertexSet) -> usize {
    let x = x & g.vertices();
    if x.is_empty() {
        return 0;
    }
    match kind {
        ParamKind::Size => x.len(),
        ParamKind::Ttw => ttw_lower(g, x),
        ParamKind::Atw => mmw_lower(&g.induced(x)),
        ParamKind::Brg | ParamKind::Bog | ParamKind::Adbrg => 1,
        ParamKind::Tw | ParamKind::Adeg => 0,
    }
}
