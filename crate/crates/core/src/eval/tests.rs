use super::*;
use crate::graph::{generate, BoundariedGraph, Family};
use crate::logic::{parse_formula, parse_formula_with_free};

const BIPARTITE: &str = "Exists[ttw<=2] X. forall x. forall y. (E(x,y) -> ((x in X & !(y in X)) | (!(x in X) & y in X)))";

fn fam(f: Family) -> Graph {
    generate(f).unwrap().graph
}

fn closed(g: &Graph, text: &str) -> bool {
    evaluate(g, &parse_formula(text).unwrap(), &Environment::new()).unwrap()
}

#[test]
fn even_and_odd_cycles() {
    assert!(closed(&fam(Family::Cycle(4)), BIPARTITE));
    assert!(!closed(&fam(Family::Cycle(5)), BIPARTITE));
    assert!(closed(&fam(Family::Cycle(6)), BIPARTITE));
}

#[test]
fn trivial_and_dp() {
    assert!(closed(&fam(Family::Clique(1)), "exists x. x = x"));
    let c4 = fam(Family::Cycle(4));
    let f = "exists a. exists b. exists c. exists d. (!(a = b) & !(a = c) & !(a = d) & !(b = c) & !(b = d) & !(c = d) & E(a,b) & E(b,c) & E(c,d) & E(d,a) & dp(a,c; b,d))";
    assert!(!closed(&c4, f));
}

#[test]
fn free_variables_and_witness() {
    let p3 = fam(Family::Path(3));
    let f = parse_formula_with_free("exists y. E(x,y) & y in X", &["x", "X"]).unwrap();
    let env = Environment::new()
        .with_element("x", 1)
        .with_set("X", VertexSet::from_iter_of([2]));
    assert!(evaluate(&p3, &f, &env).unwrap());
    assert!(evaluate(&p3, &f, &Environment::new().with_element("x", 1)).is_err());
    let env = Environment::parse("x=0 X=1,2", &p3).unwrap();
    let w = evaluate_with_witness(&p3, &f, &env).unwrap();
    assert_eq!(
        w.witness,
        vec![Binding {
            var: "y".into(),
            value: BindingValue::Element(1)
        }]
    );
    let g = parse_formula("Exists[size<=2] X. exists x. x in X & card(X) % 2 = 0").unwrap();
    let w = evaluate_with_witness(&p3, &g, &Environment::new()).unwrap();
    assert_eq!(w.witness[0].value, BindingValue::Set(vec![0, 1]));
}

#[test]
fn bounded_set_enumeration() {
    let p4 = fam(Family::Path(4));
    let sets = enumerate_bounded_sets(&p4, ParamKind::Size, 1).unwrap();
    assert_eq!(sets.len(), 5);
    assert_eq!(sets[0], VertexSet::EMPTY);
    let k6 = fam(Family::Clique(6));
    let sets = enumerate_bounded_sets(&k6, ParamKind::Ttw, 1).unwrap();
    assert_eq!(sets.len(), 1 + 6 + 15);
    assert!(sets.iter().all(|s| s.len() <= 2));
    for g in [p4.clone(), k6.clone(), fam(Family::Cycle(5))] {
        assert_eq!(
            enumerate_bounded_sets(&g, ParamKind::Bog, 0).unwrap(),
            vec![VertexSet::EMPTY]
        );
    }
    assert!(enumerate_bounded_sets(&p4, ParamKind::Tw, 1).is_err());
    assert!(enumerate_bounded_sets(&p4, ParamKind::Adeg, 1).is_err());
}

#[test]
fn enumeration_matches_filter_and_is_downward_closed() {
    let graphs = [
        fam(Family::Cycle(5)),
        fam(Family::Star(4)),
        fam(Family::Grid(2)),
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4)]),
    ];
    for g in &graphs {
        for kind in [ParamKind::Size, ParamKind::Ttw, ParamKind::Atw, ParamKind::Brg, ParamKind::Bog, ParamKind::Adbrg] {
            for k in 0..3 {
                let got = enumerate_bounded_sets(g, kind, k).unwrap();
                let mut want: Vec<VertexSet> = g
                    .vertices()
                    .subsets()
                    .filter(|s| params::value(kind, g, *s).unwrap() <= k)
                    .collect();
                want.sort_by_key(|s| s.to_vec());
                assert_eq!(got, want, "{kind} <= {k}");
                let all: HashSet<u64> = got.iter().map(|s| s.0).collect();
                for s in &got {
                    for v in s.iter() {
                        assert!(all.contains(&s.without(v).0));
                    }
                }
            }
        }
    }
}

#[test]
fn ttw_quantifier_ranges_over_everything_on_low_treewidth() {
    for g in [fam(Family::Path(7)), fam(Family::Star(6)), fam(Family::Grid(2)), fam(Family::Cycle(6))] {
        let sets = enumerate_bounded_sets(&g, ParamKind::Ttw, 3).unwrap();
        assert_eq!(sets.len(), 1 << g.n());
    }
}

#[test]
fn clique_sets_are_small() {
    for n in 1..=7 {
        let g = fam(Family::Clique(n));
        for k in 0..3 {
            let sets = enumerate_bounded_sets(&g, ParamKind::Ttw, k).unwrap();
            let want: usize = (0..=(k + 1).min(n)).map(|i| binom(n, i)).sum();
            assert_eq!(sets.len(), want);
            assert!(sets.iter().all(|s| s.len() <= k + 1));
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn batteries() {
    let empty = Battery::default();
    let edge = BoundariedGraph::new(Graph::from_edges(2, &[(0, 1)]), VertexSet::EMPTY, vec![0, 1]).unwrap();
    for (_, bits) in ext_battery_type(&edge, &empty).unwrap() {
        assert!(bits.is_empty());
    }
    let b = Battery::parse("exists x. exists y. E(x,y)\n").unwrap();
    let ext = ext_battery_type(&edge, &b).unwrap();
    assert_eq!(ext.len(), 2);
    assert!(ext.iter().all(|(_, bits)| bits == &vec![true]));
    let iso = BoundariedGraph::new(Graph::new(2), VertexSet::EMPTY, vec![0, 1]).unwrap();
    let ext = ext_battery_type(&iso, &b).unwrap();
    assert_eq!(ext[0], (vec![], vec![false]));
    assert_eq!(ext[1], (vec![(1, 2)], vec![true]));
    assert!(Battery::parse("E(x,x)").is_err());
    let colors = Battery::parse("exists x. color(b_1,x) & color(annot,x)").unwrap();
    let ann = BoundariedGraph::new(Graph::new(2), VertexSet::singleton(1), vec![1, 0]).unwrap();
    assert_eq!(battery_type(&ann, &colors).unwrap(), vec![true]);
}

const ORACLE_FORMULAS: &[&str] = &[
    "exists x. exists y. E(x,y)",
    "forall x. exists y. E(x,y)",
    "forall x. forall y. (E(x,y) -> exists z. (E(x,z) & E(z,y)))",
    "exists x. exists y. exists z. (E(x,y) & E(y,z) & E(x,z))",
    "forall x. forall y. (x = y | conn(x,y))",
    "exists a. exists b. exists c. exists d. (!(a = b) & !(c = d) & dp(a,b; c,d))",
    "exists s. exists t. exists d. (!conn(s,t | d) & !(s = d) & !(t = d))",
    BIPARTITE,
    "Exists[size<=2] X. card(X) % 2 = 0 & forall x. (x in X -> exists y. (y in X & E(x,y)))",
    "Forall[ttw<=1] X. (exists x. x in X) | card(X) % 3 = 0",
    "Exists[bog<=1] X. exists x. x in X & forall y. (E(x,y) -> !(y in X))",
    "Exists[brg<=1] X. Exists[atw<=1] Y. forall x. (x in X <-> !(x in Y))",
    "Exists[adbrg<=2] X. card(X) % 2 = 1",
    "exists x. exists y. ttwle(0; x,y) & !(x = y)",
    "forall x. (exists y. E(x,y)) -> Exists[size<=1] X. x in X",
    "!(Exists[ttw<=0] X. forall x. !(x in X)) | true",
];

fn small_graphs() -> Vec<Graph> {
    let mut out = vec![
        Graph::new(1),
        Graph::new(3),
        fam(Family::Path(4)),
        fam(Family::Cycle(5)),
        fam(Family::Clique(4)),
        fam(Family::Star(3)),
        fam(Family::Grid(2)),
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)]),
        Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (3, 4)]),
    ];
    let mut c = Graph::from_edges(4, &[(0, 1), (2, 3)]);
    c.set_color("red", VertexSet::from_iter_of([0, 2]));
    out.push(c);
    out
}

#[test]
fn agrees_with_naive_oracle() {
    let env = Environment::new();
    for g in small_graphs() {
        for text in ORACLE_FORMULAS {
            let f = parse_formula(text).unwrap();
            assert_eq!(
                evaluate(&g, &f, &env).unwrap(),
                evaluate_naive(&g, &f, &env).unwrap(),
                "{text} on {:?}",
                g.edges()
            );
        }
    }
}

#[test]
fn set_quantifier_duality() {
    let env = Environment::new();
    for g in small_graphs() {
        for body in ["card(X) % 2 = 0", "exists x. x in X & forall y. (y in X -> x = y)", "forall x. (x in X | exists y. (E(x,y) & y in X))"] {
            for kind in ["ttw", "size", "bog"] {
                let a = parse_formula(&format!("Forall[{kind}<=1] X. {body}")).unwrap();
                let b = parse_formula(&format!("!(Exists[{kind}<=1] X. !({body}))")).unwrap();
                assert_eq!(evaluate(&g, &a, &env).unwrap(), evaluate(&g, &b, &env).unwrap());
            }
        }
    }
}

#[test]
fn prenex_preserves_truth() {
    let env = Environment::new();
    for g in small_graphs() {
        for text in ORACLE_FORMULAS {
            let f = parse_formula(text).unwrap();
            let p = crate::logic::to_prenex(&f);
            assert!(crate::logic::is_prenex(&p), "{p}");
            assert_eq!(
                evaluate(&g, &f, &env).unwrap(),
                evaluate(&g, &p, &env).unwrap(),
                "{text} vs {p} on {:?} n={}",
                g.edges(),
                g.n()
            );
        }
    }
}

#[test]
fn budget_is_enforced() {
    let g = fam(Family::Clique(6));
    let f = parse_formula("forall a. forall b. forall c. forall d. a = a").unwrap();
    let mut ev = Evaluator::new(&g, &f, &[], &[]).unwrap();
    ev.set_budget(100);
    assert!(matches!(ev.eval(&Environment::new()), Err(Error::Envelope(_))));
}

#[test]
fn prenex_lifts_through_compound_matrices() {
    let env = Environment::new();
    let texts = [
        "forall x. (!(E(x,x) | x = x) | Exists[size<=1] X. x in X)",
        "exists x. ((E(x,x) <-> x = x) & Exists[ttw<=1] X. !(x in X -> false))",
        "forall x. (E(x,x) | Forall[bog<=1] X. (x in X -> !(exists y. (y in X & E(x,y)))))",
    ];
    for g in [Graph::new(1), Graph::new(3), fam(Family::Path(3)), fam(Family::Clique(3))] {
        for text in texts {
            let f = parse_formula(text).unwrap();
            let p = crate::logic::to_prenex(&f);
            assert!(crate::logic::is_prenex(&p), "{p}");
            assert_eq!(
                evaluate(&g, &f, &env).unwrap(),
                evaluate_naive(&g, &p, &env).unwrap(),
                "{text} vs {p}"
            );
        }
    }
}
