use super::*;
use crate::decomp::TreeDecomposition;
use crate::eval::Battery;
use crate::graph::{generate, Family};
use crate::params::ParamKind;

fn bg(n: usize, edges: &[(usize, usize)], annot: &[usize], boundary: &[usize]) -> BoundariedGraph {
    BoundariedGraph::new(
        Graph::from_edges(n, edges),
        VertexSet::from_iter_of(annot.iter().copied()),
        boundary.to_vec(),
    )
    .unwrap()
}

fn path_tail(n: usize) -> BoundariedGraph {
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    bg(n, &edges, &[], &[0])
}

/// Path with boundary on both ends: `b1 - ... - b2` with `inner` interior vertices.
fn bridge(inner: usize) -> BoundariedGraph {
    let n = inner + 2;
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    bg(n, &edges, &[], &[0, n - 1])
}

fn path_decomposition(n: usize) -> TreeDecomposition {
    let bags = (0..n - 1)
        .map(|i| VertexSet::from_iter_of([i, i + 1]))
        .collect();
    let parents = (0..n - 1).map(|i| i.checked_sub(1)).collect();
    let names = (0..n - 1).map(|i| format!("p{i}")).collect();
    TreeDecomposition::from_parts(names, bags, parents).unwrap()
}

#[test]
fn compatibility_examples() {
    let g = bridge(1);
    assert!(g.is_compatible(&g));
    let three = bg(3, &[], &[], &[0, 1, 2]);
    assert!(!g.is_compatible(&three));
    let a1 = bg(2, &[], &[0], &[0, 1]);
    let a2 = bg(2, &[], &[1], &[0, 1]);
    assert!(!a1.is_compatible(&a2));
}

#[test]
fn glue_examples() {
    let p = bridge(1);
    let only = bg(2, &[], &[], &[0, 1]);
    assert_eq!(glue(&p, &only).unwrap().graph.edges(), p.graph.edges());
    assert_eq!(glue(&only, &p).unwrap().graph.edge_count(), 2);
    let c4 = glue(&p, &p).unwrap();
    assert_eq!(c4.graph.n(), 4);
    assert!(c4.graph.vertices().iter().all(|v| c4.graph.degree(v) == 2));
    let e = bg(2, &[(0, 1)], &[], &[0, 1]);
    let glued = glue(&e, &e).unwrap();
    assert_eq!((glued.graph.n(), glued.graph.edge_count()), (2, 1));
    assert!(glue(&p, &e).is_err());
}

#[test]
fn glue_commutes_up_to_isomorphism() {
    let pieces = [
        bg(4, &[(0, 2), (2, 3), (3, 1)], &[3], &[0, 1]),
        bg(3, &[(0, 2), (1, 2)], &[2], &[0, 1]),
        bg(2, &[], &[], &[0, 1]),
        bg(5, &[(0, 2), (2, 3), (3, 4), (4, 2)], &[4], &[0, 1]),
    ];
    let unbounded = |ag: AnnotatedGraph| CanonicalForm::of(&BoundariedGraph::from_annotated(ag, vec![]).unwrap()).unwrap();
    for a in &pieces {
        for b in &pieces {
            assert_eq!(unbounded(glue(a, b).unwrap()), unbounded(glue(b, a).unwrap()));
        }
    }
}

#[test]
fn tupled_glue_joins_tuples() {
    let p = bridge(1);
    let (g, r) = glue_tupled(
        &p,
        &[VertexSet::singleton(1)],
        &p,
        &[VertexSet::singleton(1)],
    )
    .unwrap();
    assert_eq!(g.graph.n(), 4);
    assert_eq!(r[0].len(), 2);
    assert!(glue_tupled(&p, &[VertexSet::singleton(0)], &p, &[VertexSet::EMPTY]).is_err());
}

#[test]
fn canonical_forms_identify_isomorphs() {
    let a = bg(4, &[(0, 2), (2, 3)], &[3], &[0, 1]);
    let b = bg(4, &[(0, 3), (3, 2)], &[2], &[0, 1]);
    let c = bg(4, &[(1, 3), (3, 2)], &[2], &[0, 1]);
    assert_eq!(CanonicalForm::of(&a).unwrap(), CanonicalForm::of(&b).unwrap());
    assert_ne!(CanonicalForm::of(&a).unwrap(), CanonicalForm::of(&c).unwrap());
    let back = CanonicalForm::of(&a).unwrap().to_boundaried();
    assert_eq!(CanonicalForm::of(&back).unwrap(), CanonicalForm::of(&a).unwrap());
}

#[test]
fn folio_examples() {
    let single = bg(1, &[], &[], &[0]);
    let f = folio(&single, 0).unwrap();
    assert_eq!(f.members.len(), 1);
    assert!(f.members.contains(&CanonicalForm::of(&single).unwrap()));

    let tri = bg(3, &[(0, 1), (1, 2), (0, 2)], &[], &[0]);
    assert_eq!(tri.detail(), 3);

    let two = bg(2, &[], &[], &[0, 1]);
    let edge = CanonicalForm::of(&bg(2, &[(0, 1)], &[], &[0, 1])).unwrap();
    let ext = ext_folio(&two, 1).unwrap();
    assert_eq!(ext.parts.len(), 2);
    assert!(!ext.parts[0].folio.members.contains(&edge));
    assert_eq!(ext.parts[1].pairs, vec![(1, 2)]);
    assert!(ext.parts[1].folio.members.contains(&edge));
    assert!(folio(&two, FOLIO_MAX_LEVEL + 1).is_err());
}

#[test]
fn folio_members_are_small_minors() {
    let g = bg(5, &[(0, 2), (2, 3), (3, 1), (2, 4)], &[4], &[0, 1]);
    let f = folio(&g, 2).unwrap();
    assert!(!f.members.is_empty());
    for m in &f.members {
        assert!(m.detail() <= 2);
        let p = m.to_boundaried();
        assert!(p.is_compatible(&g));
        assert!(crate::minors::find_boundaried_topological_minor(&g, &p).unwrap().is_some());
    }
}

#[test]
fn representative_examples() {
    let long = bridge(3);
    let rep = find_representative(&long, 1, 6, None).unwrap().unwrap();
    assert_eq!(CanonicalForm::of(&rep).unwrap(), CanonicalForm::of(&bridge(1)).unwrap());
    assert_eq!(ext_folio(&rep, 1).unwrap(), ext_folio(&long, 1).unwrap());

    let small = bridge(1);
    let rep = find_representative(&small, 2, 5, None).unwrap().unwrap();
    assert_eq!(rep.graph.n(), 3);

    let k5 = BoundariedGraph::from_annotated(generate(Family::Clique(5)).unwrap(), vec![]).unwrap();
    assert_eq!(find_representative(&k5, 4, 3, None).unwrap(), None);
}

#[test]
fn representative_respects_battery() {
    // Parity of the bridge is visible once the boundary edge closes a cycle.
    let battery = Battery::parse(
        "Exists[ttw<=2] X. forall x. forall y. (E(x,y) -> ((x in X & !(y in X)) | (!(x in X) & y in X)))",
    )
    .unwrap();
    let even = bridge(4);
    let rep = find_representative(&even, 1, 6, Some(&battery)).unwrap().unwrap();
    assert_eq!(rep.graph.n(), 4);
    let odd = bridge(3);
    let rep = find_representative(&odd, 1, 6, Some(&battery)).unwrap().unwrap();
    assert_eq!(rep.graph.n(), 3);
}

#[test]
fn replace_cone_examples() {
    let p5 = AnnotatedGraph::unannotated(generate(Family::Path(5)).unwrap().graph);
    let td = path_decomposition(5);
    let t = 2;
    assert_eq!(td.cone(t), VertexSet::from_iter_of([2, 3, 4]));
    let checks = ReplaceChecks {
        folio_level: 1,
        unbreakability: Some((2, 1)),
    };
    let out = replace_cone(&p5, &td, t, &path_tail(2), &checks).unwrap();
    assert_eq!(out.graph.graph.n(), 4);
    assert_eq!(out.graph.graph.edge_count(), 3);
    assert!(out.decomposition.validate(&out.graph.graph).unwrap().is_none());
    assert!(out.regular_after);
    assert!(out.adhesion_after <= out.adhesion_before);

    let same = td.extract_cone(&p5.graph, p5.annot, t).unwrap();
    let ident = replace_cone(&p5, &td, t, &same, &checks).unwrap();
    assert_eq!(
        CanonicalForm::of(&BoundariedGraph::from_annotated(ident.graph, vec![]).unwrap()).unwrap(),
        CanonicalForm::of(&BoundariedGraph::from_annotated(p5.clone(), vec![]).unwrap()).unwrap()
    );

    let split = bg(3, &[(0, 1), (0, 2)], &[], &[0]);
    let err = replace_cone(&p5, &td, t, &split, &checks).unwrap_err();
    assert!(err.to_string().contains("connectivity"), "{err}");

    let unequal = path_tail(1);
    assert!(replace_cone(&p5, &td, t, &unequal, &checks).is_err());
}

#[test]
fn topological_minor_preservation() {
    let p7 = generate(Family::Path(7)).unwrap().graph;
    let td = path_decomposition(7);
    let g = AnnotatedGraph::unannotated(p7.clone());
    let checks = ReplaceChecks {
        folio_level: 2,
        unbreakability: None,
    };
    let out = replace_cone(&g, &td, 2, &path_tail(3), &checks).unwrap();
    let k4 = generate(Family::Clique(4)).unwrap().graph;
    assert!(check_tm_preserved(&p7, &out.graph.graph, &k4, 4).unwrap());
    assert!(check_tm_preserved(&p7, &p7, &k4, 4).unwrap());
    // Gluing a clique onto the tail is not folio-equal and brings in K4.
    let mut bad = p7.clone();
    for (u, v) in [(4, 5), (4, 6), (5, 6), (3, 5), (3, 6)] {
        if !bad.has_edge(u, v) {
            bad.add_edge(u, v);
        }
    }
    assert!(!check_tm_preserved(&p7, &bad, &k4, 4).unwrap());
    assert!(check_tm_preserved(&p7, &bad, &k4, 3).is_err());
}

#[test]
fn parameter_transfer_examples() {
    let long = path_tail(4);
    let short = path_tail(3);
    let contexts = random_contexts(&long, 40, 5, 1);
    let same = check_param_transfer(ParamKind::Ttw, &long, &long, &contexts, 1, 1).unwrap();
    assert_eq!(same.agreements, contexts.len());
    let r = check_param_transfer(ParamKind::Ttw, &long, &short, &contexts, 2, 1).unwrap();
    assert!(r.folio_equal);
    assert_eq!(r.agreements, contexts.len());
    assert!(r.counterexample.is_none());

    let apart = bg(2, &[], &[0, 1], &[0, 1]);
    let joined = bg(3, &[(0, 2), (2, 1)], &[0, 1], &[0, 1]);
    let contexts = random_contexts(&apart, 200, 5, 2);
    let weak = check_param_transfer(ParamKind::Ttw, &apart, &joined, &contexts, 0, 1).unwrap();
    assert!(weak.folio_equal);
    assert!(weak.counterexample.is_some());
    let strong = check_param_transfer(ParamKind::Ttw, &apart, &joined, &contexts, 1, 1).unwrap();
    assert!(!strong.folio_equal);
}

#[test]
fn composition_examples() {
    let short = bridge(1);
    let long = bridge(3);
    let contexts = random_contexts(&short, 40, 5, 3);
    let hypothesis = Battery::parse("exists x. exists y. (color(b_1,x) & color(b_2,y) & conn(x,y))").unwrap();
    let conclusion = Battery::parse(
        "forall x. forall y. conn(x,y)\nforall x. forall y. ((color(annot,x) & color(annot,y)) -> conn(x,y))",
    )
    .unwrap();
    let same = check_composition(&short, &short, &contexts, &hypothesis, &conclusion).unwrap();
    assert_eq!(same.agreements, contexts.len());
    let r = check_composition(&short, &long, &contexts, &hypothesis, &conclusion).unwrap();
    assert!(r.hypothesis_equal);
    assert_eq!(r.agreements, contexts.len());

    let apart = bg(2, &[], &[], &[0, 1]);
    let empty = Battery::default();
    let r = check_composition(&apart, &short, &contexts, &empty, &conclusion).unwrap();
    assert!(r.hypothesis_equal);
    assert!(r.counterexample.is_some());
    let r = check_composition(&apart, &short, &contexts, &hypothesis, &conclusion).unwrap();
    assert!(!r.hypothesis_equal);
}

#[test]
fn mini_dp_examples() {
    let p9 = AnnotatedGraph::unannotated(generate(Family::Path(9)).unwrap().graph);
    let td = path_decomposition(9);
    let conn = Battery::parse("exists x. forall y. conn(x,y)").unwrap();
    let r = mini_dp(&p9, &td, &conn, 1, 4).unwrap();
    assert!(r.oracle_agrees);
    assert!(r.final_vertices < 9);
    assert!(r.verdicts[0].shrunk);

    let r = mini_dp(&p9, &td, &Battery::default(), 1, 4).unwrap();
    assert!(r.final_vertices < 9);

    let c8 = AnnotatedGraph::unannotated(generate(Family::Cycle(8)).unwrap().graph);
    let bags = (1..7)
        .map(|i| VertexSet::from_iter_of([i - 1, i, 7]))
        .collect();
    let td = TreeDecomposition::from_parts(
        (0..6).map(|i| format!("c{i}")).collect(),
        bags,
        (0..6).map(|i: usize| i.checked_sub(1)).collect(),
    )
    .unwrap();
    assert!(td.is_regular(&c8.graph));
    let even = Battery::parse(
        "Exists[ttw<=2] X. forall x. forall y. (E(x,y) -> ((x in X & !(y in X)) | (!(x in X) & y in X)))",
    )
    .unwrap();
    let r = mini_dp(&c8, &td, &even, 1, 5).unwrap();
    assert!(r.verdicts[0].original && r.verdicts[0].shrunk);
    assert!(r.final_vertices < 8);
}
