use super::corpus;
use super::enumerate::{
    annotated_range, contract, delete_vertex, disjoint_union, graphs_up_to_iso, random_annotated,
};
use super::CriterionResult;
use crate::decomp::TreeDecomposition;
use crate::error::Result;
use crate::eval::{enumerate_bounded_sets, evaluate, evaluate_naive, Battery, Environment};
use crate::folio::{check_composition, check_param_transfer, mini_dp, random_contexts};
use crate::graph::{
    generate, is_unbreakable, AnnotatedGraph, BoundariedGraph, Family, Graph, ANNOT_COLOR,
};
use crate::logic::{parse_formula, ranks, to_prenex, Formula};
use crate::minors::{find_annotated_minor, is_annotated_topological_minor};
use crate::params::{self, treewidth_at_most, ParamKind};
use crate::rewrite::{collapse_rewrite, hardness_reduce, minor_formula, MINOR_SET_VAR};
use crate::vset::{combinations, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;

const MAX_EXAMPLES: usize = 5;

/// Counts checks and keeps the first few failure descriptions.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: usize,
    examples: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(what());
            }
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failures += other.failures;
        for e in other.examples {
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(e);
            }
        }
    }

    fn finish(self, id: u8, notes: Vec<String>) -> CriterionResult {
        CriterionResult {
            id,
            name: super::criterion_name(id).to_string(),
            passed: self.failures == 0 && self.checked > 0,
            checked: self.checked,
            failures: self.failures,
            examples: self.examples,
            notes,
        }
    }
}

fn fam(f: Family) -> Result<Graph> {
    Ok(generate(f)?.graph)
}

fn describe(ag: &AnnotatedGraph) -> String {
    format!(
        "n={} edges={:?} annot={:?}",
        ag.graph.n(),
        ag.graph.edges(),
        ag.annot.to_vec()
    )
}

fn holds(g: &Graph, f: &Formula) -> Result<bool> {
    evaluate(g, f, &Environment::new())
}

fn with_annot_color(ag: &AnnotatedGraph) -> Graph {
    let mut g = ag.graph.clone();
    g.set_color(ANNOT_COLOR, ag.annot);
    g
}

pub(super) fn clique_ttw() -> Result<CriterionResult> {
    let mut t = Tally::default();
    for n in 1..=7 {
        let g = fam(Family::Clique(n))?;
        let sets: Vec<VertexSet> = g.vertices().subsets().filter(|s| !s.is_empty()).collect();
        let values: Vec<usize> = sets
            .par_iter()
            .map(|&x| params::value(ParamKind::Ttw, &g, x))
            .collect::<Result<_>>()?;
        for (x, v) in sets.iter().zip(values) {
            t.check(v == x.len() - 1, || format!("ttw(K_{n}, {:?}) = {v}", x.to_vec()));
        }
    }
    Ok(t.finish(1, vec![]))
}

pub(super) fn star_example() -> Result<CriterionResult> {
    let mut t = Tally::default();
    for k in 3..=6 {
        let g = fam(Family::Star(k))?;
        let leaves = g.vertices().without(0);
        let over_leaves = params::torso(&g, leaves);
        let complete = over_leaves.n() == k && over_leaves.edge_count() == k * (k - 1) / 2;
        t.check(complete, || format!("torso(K_1,{k}, leaves) is not K_{k}"));
        let tw = params::treewidth(&over_leaves)?.value;
        t.check(tw == k - 1, || format!("tw(torso(K_1,{k}, leaves)) = {tw}"));
        let over_all = params::torso(&g, g.vertices());
        t.check(over_all.edges() == g.edges(), || {
            format!("torso(K_1,{k}, V) differs from the star")
        });
        let tw = params::treewidth(&over_all)?.value;
        t.check(tw == 1, || format!("tw(torso(K_1,{k}, V)) = {tw}"));
        let ttw = params::value(ParamKind::Ttw, &g, leaves)?;
        t.check(ttw == 1, || format!("ttw(K_1,{k}, leaves) = {ttw}"));
    }
    Ok(t.finish(2, vec![]))
}

#[derive(Default, Clone, Copy)]
struct InequalityCounts {
    chain: usize,
    adeg: usize,
    grids: usize,
}

fn inequalities(ag: &AnnotatedGraph) -> Result<(Tally, InequalityCounts)> {
    let (g, x) = (&ag.graph, ag.annot);
    let ttw = params::value(ParamKind::Ttw, g, x)?;
    let atw = params::value(ParamKind::Atw, g, x)?;
    let size = params::value(ParamKind::Size, g, x)?;
    let adeg = params::value(ParamKind::Adeg, g, x)?;
    let brg = params::value(ParamKind::Brg, g, x)?;
    let bog = params::value(ParamKind::Bog, g, x)?;
    let mut t = Tally::default();
    let mut c = InequalityCounts::default();
    let chain = atw <= ttw && ttw <= size;
    t.check(chain, || format!("atw {atw} ttw {ttw} size {size} on {}", describe(ag)));
    c.chain += usize::from(!chain);
    let att = adeg <= ttw + 1;
    t.check(att, || format!("adeg {adeg} > ttw {ttw} + 1 on {}", describe(ag)));
    c.adeg += usize::from(!att);
    let grids = brg <= bog;
    t.check(grids, || format!("brg {brg} > bog {bog} on {}", describe(ag)));
    c.grids += usize::from(!grids);
    Ok((t, c))
}

pub(super) fn inequality_suite(random_trials: usize) -> Result<CriterionResult> {
    let mut instances = annotated_range(0, 5)?;
    let exhaustive = instances.len();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..random_trials {
        let n = rng.gen_range(6..=7);
        instances.push(random_annotated(&mut rng, n, 0.4, 0.5));
    }
    let results: Vec<(Tally, InequalityCounts)> =
        instances.par_iter().map(inequalities).collect::<Result<_>>()?;
    let mut t = Tally::default();
    let mut c = InequalityCounts::default();
    for (sub, counts) in results {
        t.absorb(sub);
        c.chain += counts.chain;
        c.adeg += counts.adeg;
        c.grids += counts.grids;
    }
    let notes = vec![
        format!("{exhaustive} annotated graphs up to isomorphism on at most 5 vertices, {random_trials} random on 6-7"),
        format!(
            "violations: atw <= ttw <= size: {}, adeg <= ttw + 1: {}, brg <= bog: {}",
            c.chain, c.adeg, c.grids
        ),
    ];
    Ok(t.finish(3, notes))
}

/// A random annotated minor of `ag`, reached by one to three operations.
fn random_minor(rng: &mut ChaCha8Rng, ag: &AnnotatedGraph) -> AnnotatedGraph {
    let mut h = ag.clone();
    for _ in 0..rng.gen_range(1..=3) {
        if h.graph.n() <= 1 {
            break;
        }
        let edges = h.graph.edges();
        match rng.gen_range(0..4) {
            0 if !edges.is_empty() => {
                let (u, v) = edges[rng.gen_range(0..edges.len())];
                h.graph.remove_edge(u, v);
            }
            1 if !edges.is_empty() => {
                let (u, v) = edges[rng.gen_range(0..edges.len())];
                h = contract(&h, u, v);
            }
            2 if !h.annot.is_empty() => {
                let a = h.annot.to_vec();
                h.annot.remove(a[rng.gen_range(0..a.len())]);
            }
            _ => {
                let v = rng.gen_range(0..h.graph.n());
                h = delete_vertex(&h, v);
            }
        }
    }
    h
}

const MONOTONE: [ParamKind; 4] = [ParamKind::Ttw, ParamKind::Brg, ParamKind::Bog, ParamKind::Adbrg];

pub(super) fn minor_monotonicity(pairs: usize) -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut work = Vec::new();
    for (_, bg) in corpus::graphs()? {
        if bg.graph.n() <= 7 {
            let ag = bg.annotated();
            for _ in 0..4 {
                let h = random_minor(&mut rng, &ag);
                work.push((ag.clone(), h));
            }
        }
    }
    while work.len() < pairs {
        let n = rng.gen_range(3..=6);
        let ag = random_annotated(&mut rng, n, 0.5, 0.5);
        let h = random_minor(&mut rng, &ag);
        work.push((ag, h));
    }
    let tallies: Vec<Tally> = work
        .par_iter()
        .map(|(g, h)| {
            let mut t = Tally::default();
            let witnessed = find_annotated_minor(g, h).is_some();
            t.check(witnessed, || format!("no model of {} in {}", describe(h), describe(g)));
            for kind in MONOTONE {
                let (a, b) = (
                    params::value(kind, &h.graph, h.annot)?,
                    params::value(kind, &g.graph, g.annot)?,
                );
                t.check(a <= b, || {
                    format!("{kind}: {a} on minor {} > {b} on {}", describe(h), describe(g))
                });
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    tallies.into_iter().for_each(|s| t.absorb(s));
    let notes = vec![format!(
        "{} pairs built by edge deletion, contraction, annotation removal and vertex deletion; each model re-found by search",
        work.len()
    )];
    Ok(t.finish(4, notes))
}

pub(super) fn grid_values() -> Result<CriterionResult> {
    let mut t = Tally::default();
    let g3 = generate(Family::OuterGrid(3))?;
    let expected = [
        (ParamKind::Brg, 2),
        (ParamKind::Bog, 3),
        (ParamKind::Adeg, 4),
        (ParamKind::Ttw, 3),
    ];
    for (kind, want) in expected {
        let v = params::value(kind, &g3.graph, g3.annot)?;
        t.check(v == want, || format!("{kind}(grid 3, perimeter) = {v}, expected {want}"));
    }
    for k in 1..=4 {
        let g = generate(Family::OuterGrid(k))?;
        let v = params::value(ParamKind::Bog, &g.graph, g.annot)?;
        t.check(v == k, || format!("bog(outer grid {k}) = {v}"));
    }
    Ok(t.finish(5, vec![]))
}

pub(super) fn even_cycles() -> Result<CriterionResult> {
    let f = corpus::formula("even-cycle")?;
    let mut t = Tally::default();
    for n in 1..=6 {
        if n >= 2 {
            let v = holds(&fam(Family::Cycle(2 * n))?, &f)?;
            t.check(v, || format!("even-cycle false on C_{}", 2 * n));
        }
        let v = holds(&fam(Family::Cycle(2 * n + 1))?, &f)?;
        t.check(!v, || format!("even-cycle true on C_{}", 2 * n + 1));
    }
    Ok(t.finish(6, vec!["C_2 does not exist; even cycles start at C_4".into()]))
}

pub(super) fn minor_formula_oracle(random_hosts: usize) -> Result<CriterionResult> {
    let patterns: Vec<AnnotatedGraph> = annotated_range(1, 4)?;
    let compiled: Vec<Formula> = patterns.iter().map(minor_formula).collect::<Result<_>>()?;
    let mut hosts = annotated_range(1, 6)?;
    let exhaustive = hosts.len();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..random_hosts {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.2..0.7);
        hosts.push(random_annotated(&mut rng, n, p, 0.5));
    }
    let tallies: Vec<Tally> = hosts
        .par_iter()
        .map(|host| {
            let mut t = Tally::default();
            let env = Environment::new().with_set(MINOR_SET_VAR, host.annot);
            for (p, f) in patterns.iter().zip(&compiled) {
                if p.graph.n() > host.graph.n() {
                    continue;
                }
                let direct = is_annotated_topological_minor(host, p);
                let via = evaluate(&host.graph, f, &env)?;
                t.check(direct == via, || {
                    format!("pattern {} host {}: search {direct}, formula {via}", describe(p), describe(host))
                });
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    tallies.into_iter().for_each(|s| t.absorb(s));
    let notes = vec![format!(
        "{} patterns, {exhaustive} exhaustive hosts, {random_hosts} random hosts on at most 8 vertices",
        patterns.len()
    )];
    Ok(t.finish(7, notes))
}

/// First-order sentences of quantifier rank at most three.
pub const FO_BATTERY: &[&str] = &[
    "exists x. exists y. exists z. (E(x,y) & E(y,z) & E(x,z) & !(x = y) & !(y = z) & !(x = z))",
    "exists x. forall y. (x = y | E(x,y))",
    "forall x. exists y. E(x,y)",
    "exists x. exists y. (!(x = y) & !E(x,y))",
    "forall x. forall y. forall z. ((E(x,y) & E(y,z) & !(x = z)) -> E(x,z))",
    "exists x. exists y. exists z. (E(x,y) & E(y,z) & !(x = z) & !E(x,z))",
    "forall x. forall y. (E(x,y) -> exists z. (E(x,z) & !(z = y)))",
];

pub(super) fn hardness_pipeline(trials: usize) -> Result<CriterionResult> {
    let battery: Vec<Formula> = FO_BATTERY.iter().map(|s| parse_formula(s)).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let hs: Vec<Graph> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(1..=5);
            random_annotated(&mut rng, n, 0.5, 0.0).graph
        })
        .collect();
    let tallies: Vec<Tally> = hs
        .par_iter()
        .map(|h| {
            let mut t = Tally::default();
            for phi in &battery {
                let out = hardness_reduce(h, phi, 1)?;
                let (a, b) = (holds(h, phi)?, holds(&out.host, &out.formula)?);
                t.check(a == b, || format!("H edges {:?}, '{phi}': H {a}, host {b}", h.edges()));
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    tallies.into_iter().for_each(|s| t.absorb(s));
    let notes = vec![format!("{trials} random graphs, {} sentences each", battery.len())];
    Ok(t.finish(8, notes))
}

/// Formulas with torso-treewidth-bounded set quantifiers used by the collapse suite.
pub const COLLAPSE_FORMULAS: &[&str] = &[
    "Exists[ttw<=1] X. forall x. (x in X | exists y. (y in X & E(x,y)))",
    "Exists[ttw<=1] X. exists a. exists b. exists c. (a in X & b in X & c in X & !(a = b) & !(a = c) & !(b = c))",
    "Exists[ttw<=2] X. forall x. forall y. (E(x,y) -> ((x in X & !(y in X)) | (!(x in X) & y in X)))",
    "Forall[ttw<=1] X. exists x. (!(x in X) & forall y. (y in X -> E(x,y)))",
];

/// Every `X'` with `tw(torso(G, X')) <= k` has at most `q` vertices.
fn small_torso_sets_are_small(g: &Graph, q: usize, k: usize) -> Result<Option<VertexSet>> {
    for size in q + 1..=g.n() {
        for s in combinations(g.vertices(), size) {
            if treewidth_at_most(&params::torso(g, s), k)? {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

pub(super) fn collapse_suite() -> Result<CriterionResult> {
    let octahedron = corpus::graph("octahedron")?.graph;
    let hosts = [
        ("K_6", fam(Family::Clique(6))?),
        ("K_7", fam(Family::Clique(7))?),
        ("octahedron", octahedron),
        ("K_9", fam(Family::Clique(9))?),
        ("C_6", fam(Family::Cycle(6))?),
        ("grid 3", fam(Family::Grid(3))?),
    ];
    let mut t = Tally::default();
    let mut verified = 0;
    let mut skipped = 0;
    for text in COLLAPSE_FORMULAS {
        let f = parse_formula(text)?;
        let w = ranks(&f).p_rank;
        for (name, g) in &hosts {
            for q in 1..=4 {
                if g.n() < 3 * q || is_unbreakable(g, g.vertices(), q, w + 1).is_some() {
                    skipped += 1;
                    continue;
                }
                verified += 1;
                let r = collapse_rewrite(&f, q)?;
                let (a, b) = (holds(g, &f)?, holds(g, &r)?);
                t.check(a == b, || format!("{name}, q={q}, '{text}': original {a}, rewrite {b}"));
                let big = small_torso_sets_are_small(g, q, w)?;
                t.check(big.is_none(), || {
                    format!("{name}, q={q}, k={w}: torso of {:?} has width <= {w}", big.unwrap().to_vec())
                });
            }
        }
    }
    let p9 = fam(Family::Path(9))?;
    let f = parse_formula(COLLAPSE_FORMULAS[2])?;
    let breakable = is_unbreakable(&p9, p9.vertices(), 2, 3).is_some();
    t.check(breakable, || "control P_9 is (2,3)-unbreakable".into());
    let (a, b) = (holds(&p9, &f)?, holds(&p9, &collapse_rewrite(&f, 2)?)?);
    t.check(verified > 0, || "no host satisfied the unbreakability precondition".into());
    let notes = vec![
        format!("{verified} (host, formula, q) instances verified unbreakable, {skipped} skipped"),
        format!("control P_9, q=2: precondition fails as expected; original {a}, rewrite {b}"),
    ];
    Ok(t.finish(9, notes))
}

pub(super) fn prenex_and_oracle() -> Result<CriterionResult> {
    let formulas = corpus::formulas()?;
    let graphs = corpus::graphs()?;
    let mut t = Tally::default();
    for (fname, f) in &formulas {
        let p = to_prenex(f);
        for (gname, bg) in &graphs {
            let g = bg.colored_graph();
            let (a, b) = (holds(&g, f)?, holds(&g, &p)?);
            t.check(a == b, || format!("{fname} on {gname}: original {a}, prenex {b}"));
        }
    }
    let mut small = Vec::new();
    for n in 1..=6 {
        for g in graphs_up_to_iso(n)? {
            let annot = VertexSet::full(n) & VertexSet(0x15);
            small.push(AnnotatedGraph::new(g, annot));
        }
    }
    let tallies: Vec<Tally> = small
        .par_iter()
        .map(|ag| {
            let g = with_annot_color(ag);
            let mut t = Tally::default();
            for (fname, f) in &formulas {
                let env = Environment::new();
                let (a, b) = (evaluate(&g, f, &env)?, evaluate_naive(&g, f, &env)?);
                t.check(a == b, || format!("{fname} on {}: evaluator {a}, naive {b}", describe(ag)));
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    tallies.into_iter().for_each(|s| t.absorb(s));
    let notes = vec![format!(
        "{} formulas x {} corpus graphs for prenexing; {} graphs on at most 6 vertices for the naive oracle",
        formulas.len(),
        graphs.len(),
        small.len()
    )];
    Ok(t.finish(10, notes))
}

fn boundaried(n: usize, edges: &[(usize, usize)], annot: &[usize], boundary: &[usize]) -> Result<BoundariedGraph> {
    BoundariedGraph::new(
        Graph::from_edges(n, edges),
        annot.iter().copied().collect(),
        boundary.to_vec(),
    )
}

fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// Path `b_1 - ... - b_2` with `inner` interior vertices.
fn bridge(inner: usize) -> Result<BoundariedGraph> {
    let n = inner + 2;
    boundaried(n, &path_edges(n), &[], &[0, n - 1])
}

fn tail(n: usize) -> Result<BoundariedGraph> {
    boundaried(n, &path_edges(n), &[], &[0])
}

pub(super) fn composition_lab() -> Result<CriterionResult> {
    let mut t = Tally::default();
    let mut notes = Vec::new();

    let (long, short) = (tail(4)?, tail(3)?);
    for w in 1..=2 {
        let contexts = random_contexts(&long, 60, 5, 10 + w as u64);
        let r = check_param_transfer(ParamKind::Ttw, &long, &short, &contexts, 2, w)?;
        t.check(r.folio_equal, || "tails of 4 and 3 vertices differ at level 2".into());
        t.check(r.counterexample.is_none(), || format!("tail transfer counterexample at w={w}: {:?}", r.counterexample));
        notes.push(format!("ttw transfer, tails, level 2, w={w}: {}/{} agree", r.agreements, r.contexts));
    }
    let (b1, b3) = (bridge(1)?, bridge(3)?);
    let contexts = random_contexts(&b1, 60, 5, 12);
    let r = check_param_transfer(ParamKind::Ttw, &b3, &b1, &contexts, 1, 1)?;
    t.check(r.folio_equal, || "bridges differ at level 1".into());
    t.check(r.counterexample.is_none(), || format!("bridge transfer counterexample: {:?}", r.counterexample));
    notes.push(format!("ttw transfer, bridges, level 1, w=1: {}/{} agree", r.agreements, r.contexts));

    let hypothesis = Battery::parse("exists x. exists y. (color(b_1,x) & color(b_2,y) & conn(x,y))")?;
    let conclusion = Battery::parse(
        "forall x. forall y. conn(x,y)\nforall x. forall y. ((color(annot,x) & color(annot,y)) -> conn(x,y))",
    )?;
    let contexts = random_contexts(&b1, 60, 5, 13);
    let r = check_composition(&b1, &b3, &contexts, &hypothesis, &conclusion)?;
    t.check(r.hypothesis_equal, || "bridges differ on the connectivity hypothesis".into());
    t.check(r.counterexample.is_none(), || format!("composition counterexample: {:?}", r.counterexample));
    notes.push(format!("composition, bridges, connectivity battery: {}/{} agree", r.agreements, r.contexts));

    let apart = boundaried(2, &[], &[0, 1], &[0, 1])?;
    let joined = boundaried(3, &[(0, 2), (2, 1)], &[0, 1], &[0, 1])?;
    let contexts = random_contexts(&apart, 200, 5, 2);
    let r = check_param_transfer(ParamKind::Ttw, &apart, &joined, &contexts, 0, 1)?;
    t.check(r.folio_equal && r.counterexample.is_some(), || "level-0 control found no counterexample".into());
    notes.push(format!(
        "control, level 0: {} of {} contexts disagree",
        r.contexts - r.agreements,
        r.contexts
    ));
    let apart = boundaried(2, &[], &[], &[0, 1])?;
    let contexts = random_contexts(&b1, 60, 5, 13);
    let r = check_composition(&apart, &b1, &contexts, &Battery::default(), &conclusion)?;
    t.check(r.hypothesis_equal && r.counterexample.is_some(), || "empty-battery control found no counterexample".into());
    notes.push(format!(
        "control, empty hypothesis battery: {} of {} contexts disagree",
        r.contexts - r.agreements,
        r.contexts
    ));
    Ok(t.finish(11, notes))
}

fn chain(bags: Vec<VertexSet>) -> Result<TreeDecomposition> {
    let m = bags.len();
    TreeDecomposition::from_parts(
        (0..m).map(|i| format!("n{i}")).collect(),
        bags,
        (0..m).map(|i| i.checked_sub(1)).collect(),
    )
}

fn path_instance(n: usize) -> Result<(String, AnnotatedGraph, TreeDecomposition)> {
    let g = fam(Family::Path(n))?;
    let td = chain((1..n).map(|i| VertexSet::from_iter_of([i - 1, i])).collect())?;
    Ok((format!("P_{n}"), AnnotatedGraph::new(g, VertexSet::from_iter_of([n - 1])), td))
}

fn cycle_instance(n: usize) -> Result<(String, AnnotatedGraph, TreeDecomposition)> {
    let g = fam(Family::Cycle(n))?;
    let td = chain((1..n - 1).map(|i| VertexSet::from_iter_of([i - 1, i, n - 1])).collect())?;
    Ok((format!("C_{n}"), AnnotatedGraph::unannotated(g), td))
}

/// The decomposed instances of the shrinking pipeline.
pub fn mini_dp_corpus() -> Result<Vec<(String, AnnotatedGraph, TreeDecomposition)>> {
    let mut out = Vec::new();
    for (name, bg, td) in corpus::decompositions()? {
        out.push((name.to_string(), bg.annotated(), td));
    }
    for n in [5, 6, 7] {
        out.push(path_instance(n)?);
    }
    for n in [5, 6, 7] {
        out.push(cycle_instance(n)?);
    }
    let g2 = fam(Family::Grid(2))?;
    out.push(("grid 2".into(), AnnotatedGraph::unannotated(g2), TreeDecomposition::single(VertexSet::full(4))));
    Ok(out)
}

/// Sentences evaluated on every instance of the shrinking pipeline.
pub const MINI_DP_BATTERY: &str = "\
forall x. forall y. conn(x,y)
exists x. exists y. exists z. (E(x,y) & E(y,z) & E(x,z) & !(x = y) & !(y = z) & !(x = z))
exists x. color(annot, x)
";

/// Added to the battery on cycles only.
pub const EVEN_CYCLE: &str =
    "Exists[ttw<=2] X. forall x. forall y. (E(x,y) -> ((x in X & !(y in X)) | (!(x in X) & y in X)))";

fn instance_battery(g: &Graph) -> Result<Battery> {
    let is_cycle = g.is_connected() && (0..g.n()).all(|v| g.degree(v) == 2);
    if is_cycle {
        Battery::parse(&format!("{MINI_DP_BATTERY}{EVEN_CYCLE}"))
    } else {
        Battery::parse(MINI_DP_BATTERY)
    }
}

pub(super) fn mini_dp_suite() -> Result<CriterionResult> {
    let instances = mini_dp_corpus()?;
    let mut t = Tally::default();
    let mut shrunk = 0;
    let mut notes = Vec::new();
    for (name, g, td) in &instances {
        let battery = instance_battery(&g.graph)?;
        match mini_dp(g, td, &battery, 1, 6) {
            Ok(r) => {
                t.check(r.oracle_agrees, || format!("{name}: verdicts changed"));
                if r.final_vertices < r.original_vertices {
                    shrunk += 1;
                }
                notes.push(format!(
                    "{name}: {} -> {} vertices, {} replacements, {} kept, {} sentences",
                    r.original_vertices,
                    r.final_vertices,
                    r.replacements,
                    r.fallbacks,
                    battery.len()
                ));
            }
            Err(e) => t.check(false, || format!("{name}: {e}")),
        }
    }
    t.check(2 * shrunk >= instances.len(), || {
        format!("only {shrunk} of {} instances shrank", instances.len())
    });
    notes.insert(0, format!("{shrunk} of {} instances shrank", instances.len()));

    let (_, grid, td) = corpus::decompositions()?
        .into_iter()
        .find(|(n, _, _)| *n == "grid3")
        .expect("grid3 is shipped");
    let weak = Battery::parse(EVEN_CYCLE)?;
    let diagnosis = match mini_dp(&grid.annotated(), &td, &weak, 1, 6) {
        Ok(r) => format!("agreed: {}", r.oracle_agrees),
        Err(e) => e.to_string(),
    };
    notes.push(format!("control, grid3 with the even-cycle sentence alone: {diagnosis}"));
    Ok(t.finish(12, notes))
}

pub(super) fn expressiveness() -> Result<CriterionResult> {
    let mut t = Tally::default();
    let mut notes = Vec::new();
    for n in 1..=7 {
        let g = fam(Family::Clique(n))?;
        for k in 0..=3 {
            let got: BTreeSet<u64> = enumerate_bounded_sets(&g, ParamKind::Ttw, k)?
                .into_iter()
                .map(|s| s.0)
                .collect();
            let want: BTreeSet<u64> = g
                .vertices()
                .subsets()
                .filter(|s| s.len() <= k + 1)
                .map(|s| s.0)
                .collect();
            t.check(got == want, || {
                format!("K_{n}, ttw <= {k}: {} sets enumerated, {} expected", got.len(), want.len())
            });
        }
    }

    let connected = corpus::formula("connected")?;
    let g3 = fam(Family::Grid(3))?;
    let two = disjoint_union(&g3, &g3);
    let (a, b) = (holds(&g3, &connected)?, holds(&two, &connected)?);
    t.check(a && !b, || format!("connectivity: grid {a}, two grids {b}"));
    notes.push(format!("connectivity on grid 3: {a}; on two disjoint copies: {b}"));

    let k5 = AnnotatedGraph::unannotated(fam(Family::Clique(5))?);
    let k33 = AnnotatedGraph::unannotated(corpus::graph("k33")?.graph);
    let contains = |g: &Graph| {
        let ag = AnnotatedGraph::unannotated(g.clone());
        (
            is_annotated_topological_minor(&ag, &k5),
            is_annotated_topological_minor(&ag, &k33),
        )
    };
    let gt = contains(&fam(Family::TwistedG(3))?);
    let ht = contains(&fam(Family::TwistedH(3))?);
    t.check(!gt.0 && !gt.1, || format!("G_3 contains K_5 {} / K_3,3 {}", gt.0, gt.1));
    t.check(ht.0 || ht.1, || "H_3 contains neither K_5 nor K_3,3".into());
    notes.push(format!("G_3: K_5 {}, K_3,3 {}; H_3: K_5 {}, K_3,3 {}", gt.0, gt.1, ht.0, ht.1));

    let parity = parse_formula("Exists[size<=8] A. (forall x. x in A & card(A) % 2 = 0)")?;
    for n in 1..=7 {
        let v = holds(&fam(Family::Clique(n))?, &parity)?;
        t.check(v == (n % 2 == 0), || format!("parity on K_{n} gave {v}"));
    }
    notes.push("unbounded set quantifier with a counting atom tracks the parity of K_n".into());
    Ok(t.finish(13, notes))
}
