use super::rep::search;
use super::replace::{prune_decomposition, splice};
use crate::decomp::TreeDecomposition;
use crate::error::{contract, precondition, Error, Result};
use crate::eval::{evaluate, Battery, Environment};
use crate::graph::{AnnotatedGraph, BoundariedGraph, Graph, ANNOT_COLOR};
use crate::vset::VertexSet;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub formula: String,
    pub original: bool,
    pub shrunk: bool,
}

/// What happened at one node that had children.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MiniDpStep {
    pub node: String,
    pub groups: usize,
    pub replaced: usize,
    /// Groups kept as they were because no representative was found.
    pub kept: usize,
    pub vertices_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MiniDpReport {
    pub original_vertices: usize,
    pub final_vertices: usize,
    pub replacements: usize,
    pub fallbacks: usize,
    pub steps: Vec<MiniDpStep>,
    pub verdicts: Vec<Verdict>,
    pub oracle_agrees: bool,
}

fn colored(g: &AnnotatedGraph) -> Graph {
    let mut out = g.graph.clone();
    out.set_color(ANNOT_COLOR, g.annot);
    out
}

fn verdicts(g: &AnnotatedGraph, battery: &Battery) -> Result<Vec<bool>> {
    let cg = colored(g);
    let env = Environment::new();
    battery.formulas.iter().map(|f| evaluate(&cg, f, &env)).collect()
}

/// Children of `x` grouped by maximal adhesion. Groups appear in the order
/// of their first maximal child; a child whose adhesion lies in several
/// maximal adhesions joins the first such group. Within a group the first
/// member has the group's adhesion.
fn groups(td: &TreeDecomposition, x: usize) -> Vec<(VertexSet, Vec<usize>)> {
    let children = &td.nodes[x].children;
    let adh: Vec<VertexSet> = children.iter().map(|&y| td.adh(y)).collect();
    let mut out: Vec<(VertexSet, Vec<usize>)> = Vec::new();
    for (i, &a) in adh.iter().enumerate() {
        let maximal = !adh.iter().any(|&b| a.is_subset(b) && a != b);
        if maximal {
            match out.iter_mut().find(|(key, _)| *key == a) {
                Some((_, members)) => members.push(children[i]),
                None => out.push((a, vec![children[i]])),
            }
        }
    }
    for (i, &a) in adh.iter().enumerate() {
        if out.iter().any(|(_, m)| m.contains(&children[i])) {
            continue;
        }
        if let Some((_, members)) = out.iter_mut().find(|(key, _)| a.is_subset(*key)) {
            members.push(children[i]);
        }
    }
    out
}

struct Run {
    graph: AnnotatedGraph,
    td: TreeDecomposition,
    replacements: usize,
    fallbacks: usize,
    steps: Vec<MiniDpStep>,
}

fn run(
    g: &AnnotatedGraph,
    td: &TreeDecomposition,
    battery: &Battery,
    level: usize,
    budget: usize,
    identity: bool,
) -> Result<Run> {
    let mut st = Run {
        graph: g.clone(),
        td: td.clone(),
        replacements: 0,
        fallbacks: 0,
        steps: Vec::new(),
    };
    let mut current: Vec<Option<usize>> = (0..td.len()).map(Some).collect();
    for orig in td.post_order() {
        let Some(x) = current[orig] else { continue };
        if st.td.nodes[x].children.is_empty() {
            continue;
        }
        let mut pending = groups(&st.td, x);
        let mut step = MiniDpStep {
            node: st.td.nodes[x].name.clone(),
            groups: pending.len(),
            replaced: 0,
            kept: 0,
            vertices_after: 0,
        };
        while !pending.is_empty() {
            let (adh, members) = pending.remove(0);
            let inner = members
                .iter()
                .map(|&y| st.td.cone(y) - st.td.adh(y))
                .fold(VertexSet::EMPTY, |a, b| a | b);
            let boundary = adh.to_vec();
            let local = adh | inner;
            let order = local.to_vec();
            let part = BoundariedGraph::new(
                st.graph.graph.induced(local),
                (st.graph.annot & local)
                    .iter()
                    .map(|v| order.binary_search(&v).expect("member"))
                    .collect(),
                boundary
                    .iter()
                    .map(|v| order.binary_search(v).expect("member"))
                    .collect(),
            )?;
            let found = if identity {
                Some(part.clone())
            } else {
                match search(&part, level, budget, Some(battery), false) {
                    Ok(found) => found,
                    Err(Error::Envelope(_)) => None,
                    Err(e) => return Err(e),
                }
            };
            let Some(h) = found else {
                st.fallbacks += 1;
                step.kept += 1;
                continue;
            };
            let sp = splice(&st.graph.graph, st.graph.annot, inner, &boundary, &h)?;
            let z = members[0];
            let mut drop: Vec<usize> = st.td.nodes[z].children.clone();
            drop.extend(&members[1..]);
            let new_bag = adh.iter().filter_map(|v| sp.old_to_new[v]).collect::<VertexSet>() | sp.added;
            let (new_td, node_map) = prune_decomposition(&st.td, &drop, &[(z, new_bag)], &sp.old_to_new)?;
            for slot in current.iter_mut() {
                *slot = slot.and_then(|c| node_map[c]);
            }
            for (key, ms) in pending.iter_mut() {
                *key = key.iter().filter_map(|v| sp.old_to_new[v]).collect();
                *ms = ms.iter().filter_map(|&m| node_map[m]).collect();
            }
            st.graph = sp.graph;
            st.td = new_td;
            st.replacements += 1;
            step.replaced += 1;
        }
        step.vertices_after = st.graph.graph.n();
        st.steps.push(step);
    }
    if let Some(bad) = st.td.validate(&st.graph.graph)? {
        return contract(format!("shrunk decomposition is invalid: {bad:?}"));
    }
    Ok(st)
}

/// Post-order pass that replaces each group of children cones (grouped by
/// maximal adhesion) with a representative of at most `budget` vertices
/// having the same extended `level`-folio and battery type, keeping the
/// original part when none is found. The battery is then evaluated on the
/// shrunken graph and compared with the original; a mismatch is an error
/// whose message says whether identity replacements reproduce it.
pub fn mini_dp(
    g: &AnnotatedGraph,
    td: &TreeDecomposition,
    battery: &Battery,
    level: usize,
    budget: usize,
) -> Result<MiniDpReport> {
    if let Some(bad) = td.validate(&g.graph)? {
        return precondition(format!("decomposition is not valid: {bad:?}"));
    }
    if let Some(bad) = td.irregularity(&g.graph) {
        return precondition(format!("decomposition is not regular: {bad:?}"));
    }
    let st = run(g, td, battery, level, budget, false)?;
    let before = verdicts(g, battery)?;
    let after = verdicts(&st.graph, battery)?;
    let oracle_agrees = before == after;
    if !oracle_agrees {
        let identity = run(g, td, battery, level, budget, true)?;
        let reproduced = verdicts(&identity.graph, battery)? != before;
        let cause = if reproduced {
            "identity replacements also disagree: pipeline bug"
        } else {
            "identity replacements agree: battery too weak for this replacement granularity"
        };
        return contract(format!("battery verdicts changed after shrinking; {cause}"));
    }
    Ok(MiniDpReport {
        original_vertices: g.graph.n(),
        final_vertices: st.graph.graph.n(),
        replacements: st.replacements,
        fallbacks: st.fallbacks,
        steps: st.steps,
        verdicts: battery
            .formulas
            .iter()
            .zip(before.iter().zip(&after))
            .map(|(f, (&o, &s))| Verdict {
                formula: f.to_string(),
                original: o,
                shrunk: s,
            })
            .collect(),
        oracle_agrees,
    })
}
