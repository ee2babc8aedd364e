use super::*;
use crate::eval::{evaluate, Environment};
use crate::graph::{generate, is_unbreakable, Family};
use crate::logic::{parse_formula, parse_formula_with_free, ranks, to_prenex};
use crate::minors::is_annotated_topological_minor;
use crate::params;
use crate::vset::VertexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIPARTITE: &str = "Exists[ttw<=2] X. forall x. forall y. (E(x,y) -> ((x in X & !(y in X)) | (!(x in X) & y in X)))";
const TRIANGLE: &str = "exists x. exists y. exists z. (E(x,y) & E(y,z) & E(x,z) & !(x = y) & !(y = z) & !(x = z))";

fn fam(f: Family) -> Graph {
    generate(f).unwrap().graph
}

fn holds(g: &Graph, f: &Formula) -> bool {
    evaluate(g, f, &Environment::new()).unwrap()
}

fn compiled_holds(host: &AnnotatedGraph, f: &Formula) -> bool {
    let env = Environment::new().with_set(MINOR_SET_VAR, host.annot);
    evaluate(&host.graph, f, &env).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn small_patterns() -> Vec<AnnotatedGraph> {
    let shapes = [
        Graph::new(1),
        Graph::new(2),
        Graph::from_edges(2, &[(0, 1)]),
        Graph::from_edges(3, &[(0, 1), (1, 2)]),
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]),
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]),
    ];
    let mut out = Vec::new();
    for g in shapes {
        let n = g.n();
        for mask in [0u64, 1, (1 << n) - 1] {
            out.push(AnnotatedGraph::new(g.clone(), VertexSet(mask)));
        }
    }
    out
}

#[test]
fn single_annotated_vertex() {
    let f = minor_formula(&AnnotatedGraph::fully_annotated(Graph::new(1))).unwrap();
    let reference = parse_formula_with_free("exists x. x in X", &["X"]).unwrap();
    let g = fam(Family::Path(3));
    for s in g.vertices().subsets() {
        let env = Environment::new().with_set("X", s);
        assert_eq!(
            evaluate(&g, &f, &env).unwrap(),
            evaluate(&g, &reference, &env).unwrap()
        );
    }
}

#[test]
fn triangle_pattern_on_grid_and_tree() {
    let f = minor_formula(&AnnotatedGraph::unannotated(fam(Family::Clique(3)))).unwrap();
    let grid = AnnotatedGraph::unannotated(fam(Family::Grid(3)));
    assert!(compiled_holds(&grid, &f));
    let tree = AnnotatedGraph::unannotated(fam(Family::Star(4)));
    assert!(!compiled_holds(&tree, &f));
}

#[test]
fn k5_pattern_not_in_planar_grid() {
    let f = minor_formula(&AnnotatedGraph::unannotated(fam(Family::Clique(5)))).unwrap();
    let grid = AnnotatedGraph::unannotated(fam(Family::Grid(3)));
    assert!(!compiled_holds(&grid, &f));
}

#[test]
fn oversized_pattern_refused() {
    let p = AnnotatedGraph::unannotated(fam(Family::Path(MINOR_FORMULA_MAX_VERTICES + 1)));
    assert!(minor_formula(&p).is_err());
}

#[test]
fn compiled_formula_matches_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let hosts: Vec<AnnotatedGraph> = (0..24)
        .map(|i| {
            let n = 3 + i % 4;
            let g = random_graph(&mut rng, n, 0.5);
            let annot = VertexSet(rng.gen_range(0..1u64 << n));
            AnnotatedGraph::new(g, annot)
        })
        .collect();
    for pattern in small_patterns() {
        let f = minor_formula(&pattern).unwrap();
        for host in &hosts {
            assert_eq!(
                compiled_holds(host, &f),
                is_annotated_topological_minor(host, &pattern),
                "pattern {:?} host {:?}",
                pattern,
                host
            );
        }
    }
}

#[test]
fn collapse_leaves_first_order_formulas_alone() {
    let f = parse_formula(TRIANGLE).unwrap();
    assert_eq!(collapse_rewrite(&f, 2).unwrap(), f);
    let g = parse_formula("Exists[size<=1] X. true").unwrap();
    assert!(collapse_rewrite(&g, 2).is_err());
    assert!(collapse_rewrite(&f, 0).is_err());
}

#[test]
fn collapse_rank_bounds() {
    for text in [
        BIPARTITE,
        "Forall[ttw<=1] X. exists a. exists b. (a in X -> dp(a,b; b,a))",
        "exists a. Exists[ttw<=1] X. Forall[ttw<=2] Y. (a in X | a in Y)",
    ] {
        let f = to_prenex(&parse_formula(text).unwrap());
        let sets = {
            let mut n = 0;
            f.visit(&mut |g| {
                if matches!(g, Formula::SetExists(..) | Formula::SetForall(..)) {
                    n += 1;
                }
            });
            n
        };
        for q in 1..=3 {
            let r = collapse_rewrite(&f, q).unwrap();
            assert_eq!(fragment_of(&r), FragmentTag::FoDp);
            let (before, after) = (ranks(&f), ranks(&r));
            assert_eq!(before.dp_rank, after.dp_rank);
            // Each set quantifier is replaced by z plus q element quantifiers.
            assert!(after.quantifier_rank <= before.quantifier_rank + sets * q);
        }
    }
}

#[test]
fn collapse_agrees_on_unbreakable_graphs() {
    let dominating = "Exists[ttw<=1] X. forall x. (x in X | exists y. (y in X & E(x,y)))";
    let triple = "Exists[ttw<=1] X. exists a. exists b. exists c. (a in X & b in X & c in X & !(a = b) & !(a = c) & !(b = c))";
    let octahedron = Graph::from_edges(
        6,
        &[
            (0, 2), (0, 3), (0, 4), (0, 5),
            (1, 2), (1, 3), (1, 4), (1, 5),
            (2, 4), (2, 5), (3, 4), (3, 5),
        ],
    );
    let cases = [
        (fam(Family::Clique(6)), dominating, 2),
        (fam(Family::Clique(6)), triple, 2),
        (octahedron.clone(), dominating, 2),
        (octahedron, triple, 2),
        (fam(Family::Clique(9)), BIPARTITE, 3),
    ];
    for (g, text, q) in cases {
        let f = parse_formula(text).unwrap();
        let w = ranks(&f).p_rank;
        assert!(g.n() >= 3 * q);
        assert!(is_unbreakable(&g, g.vertices(), q, w + 1).is_none());
        let r = collapse_rewrite(&f, q).unwrap();
        assert_eq!(holds(&g, &f), holds(&g, &r), "{text} on {} vertices", g.n());
    }
}

#[test]
fn collapse_with_q_below_width_has_no_unbreakable_hosts() {
    // With q = 2 and ttw-rank 2 the precondition asks for
    // (2,3)-unbreakability, which any separator of size 3 breaks.
    for g in [fam(Family::Clique(6)), fam(Family::Cycle(6))] {
        assert!(is_unbreakable(&g, g.vertices(), 2, 3).is_some());
    }
}

#[test]
fn collapse_differs_on_breakable_path() {
    let p9 = fam(Family::Path(9));
    assert!(is_unbreakable(&p9, p9.vertices(), 2, 3).is_some());
    let f = parse_formula(BIPARTITE).unwrap();
    let r = collapse_rewrite(&f, 2).unwrap();
    assert!(holds(&p9, &f));
    assert!(!holds(&p9, &r));
}

#[test]
fn hardness_triangle_pipeline() {
    let phi = parse_formula(TRIANGLE).unwrap();
    let k3 = fam(Family::Clique(3));
    let out = hardness_reduce(&k3, &phi, 1).unwrap();
    assert!(holds(&out.host, &out.formula));
    let p3 = fam(Family::Path(3));
    let out = hardness_reduce(&p3, &phi, 1).unwrap();
    assert!(!holds(&out.host, &out.formula));
}

#[test]
fn hardness_trivial_sentence() {
    let phi = parse_formula("exists x. x = x").unwrap();
    for h in [Graph::new(1), fam(Family::Path(2)), fam(Family::Star(3))] {
        let out = hardness_reduce(&h, &phi, 1).unwrap();
        assert!(holds(&out.host, &out.formula));
    }
    assert!(hardness_reduce(&Graph::new(2), &parse_formula(BIPARTITE).unwrap(), 1).is_err());
}

#[test]
fn branch_vertices_match_pattern() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let n = rng.gen_range(1..=5);
        let h = random_graph(&mut rng, n, 0.5);
        for t in 1..=3 {
            let out = hardness_reduce(&h, &Formula::True, t).unwrap();
            let branch: Vec<usize> = (0..out.host.n()).filter(|&v| out.host.degree(v) >= 3).collect();
            assert_eq!(branch, out.principal_map);
        }
    }
}

#[test]
fn subdivision_threads_have_small_torso_width() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..8 {
        let n = rng.gen_range(2..=4);
        let h = random_graph(&mut rng, n, 0.6);
        let out = hardness_reduce(&h, &Formula::True, 3).unwrap();
        let g = &out.host;
        let deg2 = VertexSet::from_iter_of((0..g.n()).filter(|&v| g.degree(v) == 2));
        for thread in g.components(deg2) {
            assert!(params::ttw_at_most(g, thread, 2).unwrap());
        }
    }
}
