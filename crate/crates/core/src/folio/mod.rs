//! Boundaried graphs: gluing, canonical forms, folios and extended folios,
//! brute-force representatives, cone replacement and the experiments built
//! on them.

mod lab;
mod minidp;
mod rep;
mod replace;

pub use lab::{
    check_composition, check_param_transfer, random_contexts, transfer_sweep, CompositionMismatch,
    CompositionReport, SweepRow, TransferMismatch, TransferReport,
};
pub use minidp::{mini_dp, MiniDpReport, MiniDpStep, Verdict};
pub use rep::{find_representative, REP_MAX_VERTICES, REP_RAW_BUDGET};
pub use replace::{check_tm_preserved, replace_cone, ReplaceChecks, Replacement};

use crate::error::{envelope, semantic, Result};
use crate::graph::{remap, AnnotatedGraph, BoundariedGraph, Graph};
use crate::minors::find_boundaried_topological_minor;
use crate::vset::{combinations, VertexSet, MAX_VERTICES};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::Serialize;
use std::collections::BTreeSet;

pub const FOLIO_MAX_LEVEL: usize = 4;
pub const FOLIO_MAX_BOUNDARY: usize = 4;
/// Largest graph a canonical form encodes.
pub const CANON_MAX_VERTICES: usize = 11;
/// Largest number of non-boundary vertices permuted during canonicalization.
pub const CANON_MAX_FREE: usize = 8;

/// Glues `g2` onto `g1` along equal boundary labels. The result keeps the
/// boundary of `g1`; the map sends each vertex of `g2` to its image.
/// Boundary vertices take their annotation and colors from `g1`.
pub fn glue_boundaried(
    g1: &BoundariedGraph,
    g2: &BoundariedGraph,
) -> Result<(BoundariedGraph, Vec<usize>)> {
    if !g1.is_compatible(g2) {
        return semantic("cannot glue incompatible boundaried graphs");
    }
    let free2 = g2.graph.vertices() - g2.boundary_set();
    if g1.graph.n() + free2.len() > MAX_VERTICES {
        return envelope(format!("glued graph would exceed {MAX_VERTICES} vertices"));
    }
    let mut g = g1.graph.clone();
    let mut map = vec![usize::MAX; g2.graph.n()];
    for (i, &b) in g2.boundary.iter().enumerate() {
        map[b] = g1.boundary[i];
    }
    for v in free2.iter() {
        map[v] = g.add_vertex();
    }
    for (u, v) in g2.graph.edges() {
        g.add_edge(map[u], map[v]);
    }
    for (name, set) in g2.graph.colors() {
        let merged = g.color(name) | remap(*set & free2, &map);
        g.set_color(name.clone(), merged);
    }
    let annot = g1.annot | remap(g2.annot & free2, &map);
    let glued = BoundariedGraph {
        graph: g,
        annot,
        boundary: g1.boundary.clone(),
    };
    Ok((glued, map))
}

/// `G1 ⊕ G2` as an annotated graph.
pub fn glue(g1: &BoundariedGraph, g2: &BoundariedGraph) -> Result<AnnotatedGraph> {
    glue_boundaried(g1, g2).map(|(bg, _)| bg.annotated())
}

/// `(G1, R̄1) ⊕ (G2, R̄2)`: tuples are joined position by position.
pub fn glue_tupled(
    g1: &BoundariedGraph,
    r1: &[VertexSet],
    g2: &BoundariedGraph,
    r2: &[VertexSet],
) -> Result<(AnnotatedGraph, Vec<VertexSet>)> {
    if r1.len() != r2.len() {
        return semantic("tuples of different lengths");
    }
    let b1 = g1.boundary_set();
    let b2 = g2.boundary_set();
    for (a, b) in r1.iter().zip(r2) {
        let la: Vec<usize> = (*a & b1).iter().filter_map(|v| g1.label_of(v)).collect();
        let lb: Vec<usize> = (*b & b2).iter().filter_map(|v| g2.label_of(v)).collect();
        let (mut la, mut lb) = (la, lb);
        la.sort_unstable();
        lb.sort_unstable();
        if la != lb {
            return semantic("tuple sets disagree on the boundary");
        }
    }
    let (glued, map) = glue_boundaried(g1, g2)?;
    let free2 = g2.graph.vertices() - b2;
    let tuples = r1
        .iter()
        .zip(r2)
        .map(|(a, b)| *a | remap(*b & free2, &map))
        .collect();
    Ok((glued.annotated(), tuples))
}

/// Isomorphism-invariant encoding of a boundaried graph: boundary vertices
/// come first in label order, the other vertices are ordered to minimize
/// `(annot, edges)`. Edge `{u, v}` with `u < v` is bit `v(v-1)/2 + u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: u8,
    boundary: u8,
    annot: u64,
    edges: u64,
}

fn pair_bit(u: usize, v: usize) -> u32 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    (b * (b - 1) / 2 + a) as u32
}

impl CanonicalForm {
    pub fn of(bg: &BoundariedGraph) -> Result<Self> {
        let n = bg.graph.n();
        let t = bg.boundary.len();
        if n > CANON_MAX_VERTICES || n - t > CANON_MAX_FREE {
            return envelope(format!(
                "canonical forms cover {CANON_MAX_VERTICES} vertices with at most {CANON_MAX_FREE} off the boundary"
            ));
        }
        let mut order = bg.boundary.clone();
        order.extend((bg.graph.vertices() - bg.boundary_set()).iter());
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let edges: Vec<(usize, usize)> = bg
            .graph
            .edges()
            .into_iter()
            .map(|(u, v)| (pos[u], pos[v]))
            .collect();
        let annot = remap(bg.annot, &pos).0;
        Ok(Self::from_local(n, t, annot, &edges))
    }

    /// Canonical form of the graph on `0..n` whose first `t` vertices form
    /// the boundary in label order.
    fn from_local(n: usize, t: usize, annot: u64, edges: &[(usize, usize)]) -> Self {
        let m = n - t;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = (u64::MAX, u64::MAX);
        let mut consider = |perm: &[usize]| {
            let mut a = 0u64;
            for v in 0..n {
                if annot >> v & 1 == 1 {
                    a |= 1 << perm[v];
                }
            }
            if a > best.0 {
                return;
            }
            let mut e = 0u64;
            for &(u, v) in edges {
                e |= 1 << pair_bit(perm[u], perm[v]);
            }
            if (a, e) < best {
                best = (a, e);
            }
        };
        // Heap's algorithm over the free positions.
        let mut c = vec![0usize; m];
        consider(&perm);
        let mut i = 0;
        while i < m {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(t, t + i);
                } else {
                    perm.swap(t + c[i], t + i);
                }
                consider(&perm);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        CanonicalForm {
            n: n as u8,
            boundary: t as u8,
            annot: best.0,
            edges: best.1,
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary as usize
    }

    pub fn annotated(&self) -> VertexSet {
        VertexSet(self.annot)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 1..self.n() {
            for u in 0..v {
                if self.edges >> pair_bit(u, v) & 1 == 1 {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn detail(&self) -> usize {
        (self.edges.count_ones() as usize).max(self.n() - self.boundary_len())
    }

    pub fn to_boundaried(&self) -> BoundariedGraph {
        let g = Graph::from_edges(self.n(), &self.edges());
        BoundariedGraph {
            graph: g,
            annot: self.annotated(),
            boundary: (0..self.boundary_len()).collect(),
        }
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CanonicalForm", 4)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("boundary", &self.boundary_len())?;
        st.serialize_field("annot", &self.annotated().to_vec())?;
        st.serialize_field("edges", &self.edges())?;
        st.end()
    }
}

/// Canonical members of the ℓ-folio, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Folio {
    pub level: usize,
    pub members: BTreeSet<CanonicalForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtFolioPart {
    /// Boundary label pairs joined before taking the folio.
    pub pairs: Vec<(usize, usize)>,
    pub folio: Folio,
}

/// The ℓ-folio of every completion `G^I`, in increasing bitmask order of `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtFolio {
    pub level: usize,
    pub parts: Vec<ExtFolioPart>,
}

/// Boundary size, boundary edges and boundary annotation in local indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Signature {
    t: usize,
    edges: u64,
    annot: u64,
}

fn signature(bg: &BoundariedGraph) -> Signature {
    let b = &bg.boundary;
    let mut edges = 0u64;
    let mut annot = 0u64;
    for i in 0..b.len() {
        if bg.annot.contains(b[i]) {
            annot |= 1 << i;
        }
        for j in i + 1..b.len() {
            if bg.graph.has_edge(b[i], b[j]) {
                edges |= 1 << pair_bit(i, j);
            }
        }
    }
    Signature {
        t: b.len(),
        edges,
        annot,
    }
}

fn check_folio_envelope(bg: &BoundariedGraph, level: usize) -> Result<()> {
    if level > FOLIO_MAX_LEVEL || bg.boundary.len() > FOLIO_MAX_BOUNDARY {
        return envelope(format!(
            "folios are limited to level {FOLIO_MAX_LEVEL} and boundary size {FOLIO_MAX_BOUNDARY}"
        ));
    }
    Ok(())
}

/// Every compatible pattern of detail at most `level`, in canonical order.
fn candidate_patterns(sig: Signature, level: usize) -> Vec<CanonicalForm> {
    let t = sig.t;
    let fixed = sig.edges.count_ones() as usize;
    if fixed > level {
        return Vec::new();
    }
    let base: Vec<(usize, usize)> = (0..t)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| sig.edges >> pair_bit(i, j) & 1 == 1)
        .collect();
    let mut out = BTreeSet::new();
    for m in 0..=level {
        let n = t + m;
        let pairs: Vec<(usize, usize)> = (t..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        for k in 0..=(level - fixed).min(pairs.len()) {
            for chosen in combinations(VertexSet::full(pairs.len()), k) {
                let mut edges = base.clone();
                edges.extend(chosen.iter().map(|i| pairs[i]));
                for free_annot in 0u64..1 << m {
                    let annot = sig.annot | free_annot << t;
                    out.insert(CanonicalForm::from_local(n, t, annot, &edges));
                }
            }
        }
    }
    out.into_iter().collect()
}

fn contains_pattern(host: &BoundariedGraph, pattern: &CanonicalForm) -> Result<bool> {
    Ok(find_boundaried_topological_minor(host, &pattern.to_boundaried())?.is_some())
}

/// The ℓ-folio: every compatible pattern of detail at most `level` that is a
/// boundaried topological minor of `bg`.
pub fn folio(bg: &BoundariedGraph, level: usize) -> Result<Folio> {
    check_folio_envelope(bg, level)?;
    let patterns = candidate_patterns(signature(bg), level);
    let flags: Vec<bool> = patterns
        .par_iter()
        .map(|p| contains_pattern(bg, p))
        .collect::<Result<_>>()?;
    let members = patterns
        .into_iter()
        .zip(flags)
        .filter(|(_, keep)| *keep)
        .map(|(p, _)| p)
        .collect();
    Ok(Folio { level, members })
}

/// Label pairs selected by `mask` over [`BoundariedGraph::label_pairs`].
fn pairs_of_mask(all: &[(usize, usize)], mask: u32) -> Vec<(usize, usize)> {
    all.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &p)| p)
        .collect()
}

pub fn ext_folio(bg: &BoundariedGraph, level: usize) -> Result<ExtFolio> {
    check_folio_envelope(bg, level)?;
    let all = bg.label_pairs();
    let mut parts = Vec::new();
    for mask in 0u32..1 << all.len() {
        let pairs = pairs_of_mask(&all, mask);
        let folio = folio(&bg.with_boundary_edges(&pairs), level)?;
        parts.push(ExtFolioPart { pairs, folio });
    }
    Ok(ExtFolio { level, parts })
}

/// Extended folio of a fixed graph, kept with its candidate patterns so that
/// other graphs can be compared against it pattern by pattern.
pub(crate) struct FolioProbe {
    parts: Vec<(Vec<(usize, usize)>, Vec<CanonicalForm>, BTreeSet<CanonicalForm>)>,
}

impl FolioProbe {
    pub(crate) fn new(bg: &BoundariedGraph, level: usize) -> Result<Self> {
        check_folio_envelope(bg, level)?;
        let all = bg.label_pairs();
        let mut parts = Vec::new();
        for mask in 0u32..1 << all.len() {
            let pairs = pairs_of_mask(&all, mask);
            let gi = bg.with_boundary_edges(&pairs);
            let patterns = candidate_patterns(signature(&gi), level);
            let members = folio(&gi, level)?.members;
            parts.push((pairs, patterns, members));
        }
        Ok(FolioProbe { parts })
    }

    /// True iff `other` (compatible with the probed graph) has the same
    /// extended folio. Stops at the first differing pattern.
    pub(crate) fn matches(&self, other: &BoundariedGraph) -> Result<bool> {
        for (pairs, patterns, members) in &self.parts {
            let gi = other.with_boundary_edges(pairs);
            for p in patterns {
                if contains_pattern(&gi, p)? != members.contains(p) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests;
