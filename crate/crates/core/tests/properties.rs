use annotmc::eval::{evaluate, evaluate_naive, Environment, Evaluator};
use annotmc::folio::{folio, glue, CanonicalForm};
use annotmc::graph::{parse_graph, print_graph, AnnotatedGraph, BoundariedGraph, Graph};
use annotmc::lab::enumerate::{contract, delete_vertex};
use annotmc::logic::{is_prenex, parse_formula, to_prenex, Formula};
use annotmc::params::{self, ParamKind};
use annotmc::{Error, VertexSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

fn build(n: usize, edge_mask: u64, annot_mask: u64) -> AnnotatedGraph {
    let edges: Vec<_> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| edge_mask >> i & 1 == 1)
        .map(|(_, p)| p)
        .collect();
    let annot = VertexSet(annot_mask) & VertexSet::full(n);
    AnnotatedGraph::new(Graph::from_edges(n, &edges), annot)
}

fn annotated(max_n: usize) -> impl Strategy<Value = AnnotatedGraph> {
    (1..=max_n, any::<u64>(), any::<u64>()).prop_map(|(n, e, a)| build(n, e, a))
}

fn permuted(ag: &AnnotatedGraph, perm: &[usize]) -> AnnotatedGraph {
    let edges: Vec<_> = ag.graph.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    let annot = ag.annot.iter().map(|v| perm[v]).collect();
    AnnotatedGraph::new(Graph::from_edges(ag.graph.n(), &edges), annot)
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm
}

/// Random closed formula over `E`, `=`, membership, `color(annot, _)`,
/// `conn` and parity of cardinality, reusing names to exercise shadowing.
fn random_formula(rng: &mut ChaCha8Rng, depth: usize, elems: &mut Vec<String>, sets: &mut Vec<String>) -> String {
    if depth == 0 || rng.gen_bool(0.25) {
        return atom(rng, elems, sets);
    }
    let pick = |rng: &mut ChaCha8Rng, pool: &[&str]| pool[rng.gen_range(0..pool.len())].to_string();
    match rng.gen_range(0..8) {
        0 => format!("!({})", random_formula(rng, depth - 1, elems, sets)),
        1..=3 => {
            let op = pick(rng, &["&", "|", "->", "<->"]);
            let a = random_formula(rng, depth - 1, elems, sets);
            let b = random_formula(rng, depth - 1, elems, sets);
            format!("({a} {op} {b})")
        }
        4..=5 => {
            let v = pick(rng, &["x", "y", "z"]);
            let q = pick(rng, &["exists", "forall"]);
            elems.push(v.clone());
            let body = random_formula(rng, depth - 1, elems, sets);
            elems.pop();
            format!("{q} {v}. ({body})")
        }
        _ => {
            let v = pick(rng, &["S", "T"]);
            let q = pick(rng, &["Exists", "Forall"]);
            let bound = pick(rng, &["size<=1", "size<=2", "ttw<=0", "brg<=1"]);
            sets.push(v.clone());
            let body = random_formula(rng, depth - 1, elems, sets);
            sets.pop();
            format!("{q}[{bound}] {v}. ({body})")
        }
    }
}

fn atom(rng: &mut ChaCha8Rng, elems: &[String], sets: &[String]) -> String {
    let e = |rng: &mut ChaCha8Rng| elems[rng.gen_range(0..elems.len())].clone();
    let s = |rng: &mut ChaCha8Rng| sets[rng.gen_range(0..sets.len())].clone();
    let mut options = vec![0];
    if !elems.is_empty() {
        options.extend([1, 2, 3, 4]);
    }
    if !sets.is_empty() {
        options.push(5);
        if !elems.is_empty() {
            options.extend([6, 6]);
        }
    }
    match options[rng.gen_range(0..options.len())] {
        0 => if rng.gen_bool(0.5) { "true" } else { "false" }.to_string(),
        1 => format!("E({}, {})", e(rng), e(rng)),
        2 => format!("{} = {}", e(rng), e(rng)),
        3 => format!("color(annot, {})", e(rng)),
        4 => format!("conn({}, {})", e(rng), e(rng)),
        5 => format!("card({}) % 2 = 0", s(rng)),
        _ => format!("{} in {}", e(rng), s(rng)),
    }
}

fn formula_text(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_formula(&mut rng, 4, &mut Vec::new(), &mut Vec::new())
}

fn colored(ag: &AnnotatedGraph) -> Graph {
    BoundariedGraph::new(ag.graph.clone(), ag.annot, Vec::new())
        .unwrap()
        .colored_graph()
}

/// Truth of a closed formula, or None past a small step budget.
fn bounded(g: &Graph, f: &Formula) -> Option<bool> {
    let mut ev = Evaluator::new(g, f, &[], &[]).unwrap();
    ev.set_budget(20_000_000);
    match ev.eval(&Environment::new()) {
        Ok(v) => Some(v),
        Err(Error::Envelope(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_formulas_parse_back(seed in any::<u64>()) {
        let f = parse_formula(&formula_text(seed)).unwrap();
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn prenex_form_is_equivalent(ag in annotated(4), seed in any::<u64>()) {
        let f = parse_formula(&formula_text(seed)).unwrap();
        let p = to_prenex(&f);
        prop_assert!(is_prenex(&p), "{}", p);
        let g = colored(&ag);
        let (a, b) = (bounded(&g, &f), bounded(&g, &p));
        // Singleton conversion can make the prenex form exponentially slower.
        prop_assume!(a.is_some() && b.is_some());
        prop_assert_eq!(a.unwrap(), b.unwrap(), "{} vs {}", f, p);
    }

    #[test]
    fn evaluator_agrees_with_naive_oracle(ag in annotated(5), seed in any::<u64>()) {
        let f = parse_formula(&formula_text(seed)).unwrap();
        let g = colored(&ag);
        let env = Environment::new();
        prop_assert_eq!(evaluate(&g, &f, &env).unwrap(), evaluate_naive(&g, &f, &env).unwrap(), "{}", f);
    }

    #[test]
    fn graph_files_round_trip(ag in annotated(8), bmask in any::<u64>()) {
        let n = ag.graph.n();
        let boundary: Vec<usize> = (0..n).filter(|v| bmask >> v & 1 == 1).take(3).collect();
        let bg = BoundariedGraph::new(ag.graph, ag.annot, boundary).unwrap();
        let back = parse_graph(&print_graph(&bg)).unwrap();
        prop_assert_eq!(back.graph.edges(), bg.graph.edges());
        prop_assert_eq!(back.annot, bg.annot);
        prop_assert_eq!(back.boundary, bg.boundary);
    }

    #[test]
    fn canonical_form_ignores_vertex_order(ag in annotated(7), seed in any::<u64>()) {
        let perm = permutation(ag.graph.n(), seed);
        let a = CanonicalForm::of(&BoundariedGraph::from_annotated(ag.clone(), vec![]).unwrap()).unwrap();
        let b = CanonicalForm::of(&BoundariedGraph::from_annotated(permuted(&ag, &perm), vec![]).unwrap()).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(CanonicalForm::of(&a.to_boundaried()).unwrap(), a);
    }

    #[test]
    fn gluing_commutes_and_has_identity(
        (t, left, right) in (1..=3usize).prop_flat_map(|t| (Just(t), annotated(2), annotated(2))),
        bedges in any::<u64>(),
        bannot in any::<u64>(),
    ) {
        // Both sides share a boundary of t vertices with identical edges and annotation.
        let side = |ag: &AnnotatedGraph| {
            let n = t + ag.graph.n();
            let mut g = Graph::new(n);
            for (i, (u, v)) in pairs(t).into_iter().enumerate() {
                if bedges >> i & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            for (u, v) in ag.graph.edges() {
                g.add_edge(t + u, t + v);
            }
            for v in 0..ag.graph.n() {
                if (bedges >> (8 + v)) & 1 == 1 {
                    g.add_edge(v % t, t + v);
                }
            }
            let annot = (VertexSet(bannot) & VertexSet::full(t)) | ag.annot.iter().map(|v| t + v).collect();
            BoundariedGraph::new(g, annot, (0..t).collect()).unwrap()
        };
        let (g1, g2) = (side(&left), side(&right));
        let canon = |ag: AnnotatedGraph| CanonicalForm::of(&BoundariedGraph::from_annotated(ag, vec![]).unwrap()).unwrap();
        prop_assert_eq!(canon(glue(&g1, &g2).unwrap()), canon(glue(&g2, &g1).unwrap()));

        let keep: VertexSet = (0..t).collect();
        let base = g1.graph.induced(keep).relabelled_dense();
        let unit = BoundariedGraph::new(base, g1.annot & keep, (0..t).collect()).unwrap();
        prop_assert_eq!(canon(glue(&g1, &unit).unwrap()), canon(g1.annotated()));
    }

    #[test]
    fn folio_ignores_free_vertex_order(ag in annotated(5), seed in any::<u64>()) {
        let n = ag.graph.n();
        let t = n.min(2);
        let mut perm = permutation(n, seed);
        // Keep the boundary in place, shuffle the rest.
        perm.retain(|&v| v >= t);
        let perm: Vec<usize> = (0..t).chain(perm).collect();
        let a = BoundariedGraph::from_annotated(ag.clone(), (0..t).collect()).unwrap();
        let b = BoundariedGraph::from_annotated(permuted(&ag, &perm), (0..t).collect()).unwrap();
        prop_assert_eq!(folio(&a, 2).unwrap().members, folio(&b, 2).unwrap().members);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn parameters_grow_with_the_annotated_set(ag in annotated(7), sub in any::<u64>()) {
        let y = ag.annot & VertexSet(sub);
        for kind in [ParamKind::Size, ParamKind::Ttw, ParamKind::Atw, ParamKind::Brg, ParamKind::Bog, ParamKind::Adbrg] {
            let small = params::value(kind, &ag.graph, y).unwrap();
            let large = params::value(kind, &ag.graph, ag.annot).unwrap();
            prop_assert!(small <= large, "{kind}: {small} > {large}");
        }
    }

    #[test]
    fn minor_operations_do_not_increase_parameters(ag in annotated(7), pick in any::<u64>()) {
        let n = ag.graph.n();
        let mut minors = Vec::new();
        if n > 1 {
            minors.push(delete_vertex(&ag, pick as usize % n));
        }
        let edges = ag.graph.edges();
        if !edges.is_empty() {
            let (u, v) = edges[(pick >> 8) as usize % edges.len()];
            minors.push(contract(&ag, u, v));
        }
        for m in &minors {
            for kind in [ParamKind::Size, ParamKind::Ttw, ParamKind::Atw, ParamKind::Brg, ParamKind::Bog, ParamKind::Adbrg] {
                prop_assert!(kind.is_minor_monotone());
                let before = params::value(kind, &ag.graph, ag.annot).unwrap();
                let after = params::value(kind, &m.graph, m.annot).unwrap();
                prop_assert!(after <= before, "{kind}: {after} > {before}");
            }
        }
    }

    #[test]
    fn torso_width_is_bounded_by_treewidth(ag in annotated(8)) {
        let tw = params::treewidth(&ag.graph).unwrap().value;
        let ttw = params::value(ParamKind::Ttw, &ag.graph, ag.annot).unwrap();
        prop_assert!(ttw <= tw);
        prop_assert_eq!(params::value(ParamKind::Ttw, &ag.graph, ag.graph.vertices()).unwrap(), tw);
        prop_assert_eq!(params::value(ParamKind::Size, &ag.graph, ag.annot).unwrap(), ag.annot.len());
    }
}

#[test]
fn generated_formulas_are_varied() {
    let texts: Vec<String> = (0..200).map(formula_text).collect();
    let quantified = texts.iter().filter(|t| t.contains("exists") || t.contains("forall")).count();
    let set_quantified = texts.iter().filter(|t| t.contains('[')).count();
    assert!(quantified > 60, "{quantified}");
    assert!(set_quantified > 30, "{set_quantified}");
}
