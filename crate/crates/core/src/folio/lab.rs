use super::{ext_folio, glue, glue_boundaried};
use crate::error::{semantic, Result};
use crate::eval::{evaluate, ext_battery_type, Battery, Environment};
use crate::graph::{print_graph, BoundariedGraph, Graph, ANNOT_COLOR};
use crate::params::{self, ParamKind};
use crate::vset::VertexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Random boundaried graphs compatible with `template`, each with between
/// `|B|` and `max_vertices` vertices. Deterministic in `seed`.
pub fn random_contexts(
    template: &BoundariedGraph,
    count: usize,
    max_vertices: usize,
    seed: u64,
) -> Vec<BoundariedGraph> {
    let t = template.boundary.len();
    let max_vertices = max_vertices.max(t);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(t..=max_vertices);
            let mut g = Graph::new(n);
            let mut annot = VertexSet::EMPTY;
            for i in 0..t {
                if template.annot.contains(template.boundary[i]) {
                    annot.insert(i);
                }
                for j in i + 1..t {
                    if template.graph.has_edge(template.boundary[i], template.boundary[j]) {
                        g.add_edge(i, j);
                    }
                }
            }
            for v in t..n {
                for u in 0..v {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
                if rng.gen_bool(0.5) {
                    annot.insert(v);
                }
            }
            BoundariedGraph {
                graph: g,
                annot,
                boundary: (0..t).collect(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferMismatch {
    pub context: usize,
    pub context_graph: String,
    pub first: bool,
    pub second: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub parameter: String,
    pub level: usize,
    pub bound: usize,
    /// Whether the extended folios agree; if not, no context is tried.
    pub folio_equal: bool,
    pub contexts: usize,
    pub agreements: usize,
    pub counterexample: Option<TransferMismatch>,
}

fn param_le(kind: ParamKind, c: &BoundariedGraph, g: &BoundariedGraph, w: usize) -> Result<bool> {
    let ag = glue(c, g)?;
    params::at_most(kind, &ag.graph, ag.annot, w)
}

/// Compares `p(C ⊕ G1) ≤ w` with `p(C ⊕ G2) ≤ w` over the given contexts,
/// provided the extended `level`-folios of `g1` and `g2` agree.
pub fn check_param_transfer(
    kind: ParamKind,
    g1: &BoundariedGraph,
    g2: &BoundariedGraph,
    contexts: &[BoundariedGraph],
    level: usize,
    w: usize,
) -> Result<TransferReport> {
    if !g1.is_compatible(g2) {
        return semantic("the two boundaried graphs are not compatible");
    }
    let mut report = TransferReport {
        parameter: kind.name().to_string(),
        level,
        bound: w,
        folio_equal: ext_folio(g1, level)? == ext_folio(g2, level)?,
        contexts: 0,
        agreements: 0,
        counterexample: None,
    };
    if !report.folio_equal {
        return Ok(report);
    }
    let verdicts: Vec<(bool, bool)> = contexts
        .par_iter()
        .map(|c| Ok((param_le(kind, c, g1, w)?, param_le(kind, c, g2, w)?)))
        .collect::<Result<_>>()?;
    report.contexts = contexts.len();
    for (i, &(a, b)) in verdicts.iter().enumerate() {
        if a == b {
            report.agreements += 1;
        } else if report.counterexample.is_none() {
            report.counterexample = Some(TransferMismatch {
                context: i,
                context_graph: print_graph(&contexts[i]),
                first: a,
                second: b,
            });
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub bound: usize,
    /// Least level at which no folio-equal pair of the pool disagreed on any
    /// context, if one was found up to the maximum level.
    pub least_level: Option<usize>,
    /// Folio-equal pairs tried at each level `0..=max_level`.
    pub pairs_per_level: Vec<usize>,
}

/// For each bound `w`, the least folio level at which every folio-equal pair
/// from `pool` transfers `p ≤ w` across all contexts. The pool must consist
/// of mutually compatible graphs.
pub fn transfer_sweep(
    kind: ParamKind,
    pool: &[BoundariedGraph],
    contexts: &[BoundariedGraph],
    bounds: &[usize],
    max_level: usize,
) -> Result<Vec<SweepRow>> {
    let folios: Vec<Vec<_>> = (0..=max_level)
        .map(|l| pool.iter().map(|g| ext_folio(g, l)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for &w in bounds {
        let verdicts: Vec<Vec<bool>> = pool
            .par_iter()
            .map(|g| contexts.iter().map(|c| param_le(kind, c, g, w)).collect())
            .collect::<Result<_>>()?;
        let mut least_level = None;
        let mut pairs_per_level = Vec::new();
        for (l, fs) in folios.iter().enumerate() {
            let mut pairs = 0;
            let mut clean = true;
            for i in 0..pool.len() {
                for j in i + 1..pool.len() {
                    if fs[i] == fs[j] {
                        pairs += 1;
                        clean &= verdicts[i] == verdicts[j];
                    }
                }
            }
            pairs_per_level.push(pairs);
            if clean && least_level.is_none() {
                least_level = Some(l);
            }
        }
        rows.push(SweepRow {
            bound: w,
            least_level,
            pairs_per_level,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionMismatch {
    pub context: usize,
    pub formula: String,
    pub first: bool,
    pub second: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionReport {
    /// Whether the extended hypothesis-battery types agree; if not, no
    /// context is tried.
    pub hypothesis_equal: bool,
    pub contexts: usize,
    pub agreements: usize,
    pub counterexample: Option<CompositionMismatch>,
    pub note: String,
}

/// The glued graph with its annotation as the `annot` color; other colors
/// (the tuple sets) are joined by the gluing.
fn glued_colored(c: &BoundariedGraph, g: &BoundariedGraph) -> Result<Graph> {
    let (glued, _) = glue_boundaried(c, g)?;
    let mut out = glued.graph;
    out.set_color(ANNOT_COLOR, glued.annot);
    Ok(out)
}

/// Checks that `C ⊕ G1` and `C ⊕ G2` agree on every conclusion formula for
/// every context, given that `g1` and `g2` have equal extended types under
/// the hypothesis battery. Tuple sets travel as colors.
pub fn check_composition(
    g1: &BoundariedGraph,
    g2: &BoundariedGraph,
    contexts: &[BoundariedGraph],
    hypothesis: &Battery,
    conclusion: &Battery,
) -> Result<CompositionReport> {
    if !g1.is_compatible(g2) {
        return semantic("the two boundaried graphs are not compatible");
    }
    let mut report = CompositionReport {
        hypothesis_equal: ext_battery_type(g1, hypothesis)? == ext_battery_type(g2, hypothesis)?,
        contexts: 0,
        agreements: 0,
        counterexample: None,
        note: "a disagreement shows the hypothesis battery is too weak for the conclusion; it does not refute composition".into(),
    };
    if !report.hypothesis_equal {
        return Ok(report);
    }
    for c in contexts {
        if !c.is_compatible(g1) {
            return semantic("context is not compatible with the compared graphs");
        }
    }
    let env = Environment::new();
    let results: Vec<Option<CompositionMismatch>> = contexts
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let a = glued_colored(c, g1)?;
            let b = glued_colored(c, g2)?;
            for f in &conclusion.formulas {
                let (va, vb) = (evaluate(&a, f, &env)?, evaluate(&b, f, &env)?);
                if va != vb {
                    return Ok(Some(CompositionMismatch {
                        context: i,
                        formula: f.to_string(),
                        first: va,
                        second: vb,
                    }));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    report.contexts = contexts.len();
    for r in results {
        match r {
            None => report.agreements += 1,
            Some(m) if report.counterexample.is_none() => report.counterexample = Some(m),
            Some(_) => {}
        }
    }
    Ok(report)
}
