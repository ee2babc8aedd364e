use super::corpus;
use super::enumerate::random_annotated;
use crate::decomp::{cone_bound_check, find_decomposition};
use crate::error::{semantic, Result};
use crate::folio::{random_contexts, transfer_sweep};
use crate::graph::{generate, BoundariedGraph, Family, Graph};
use crate::params::{self, ParamKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

pub const EXPERIMENTS: &[(&str, &str)] = &[
    ("cone-bound", "cone unbreakability bound on decompositions found by search"),
    ("grid-order", "brg <= bog on every corpus graph"),
    ("adbrg-growth", "adbrg of outer-annotated grids of size 2, 3, 4"),
    ("subset-monotonicity", "p(G, Y) <= p(G, X) for random Y within X"),
    ("transfer-sweep", "least folio level transferring ttw <= w across a pool of path tails"),
];

pub fn experiment(name: &str) -> Result<Value> {
    match name {
        "cone-bound" => cone_bound(),
        "grid-order" => grid_order(),
        "adbrg-growth" => adbrg_growth(),
        "subset-monotonicity" => subset_monotonicity(),
        "transfer-sweep" => sweep(),
        _ => semantic(format!("unknown experiment '{name}'")),
    }
}

fn cone_bound() -> Result<Value> {
    let mut hosts: Vec<(String, Graph)> = vec![
        ("P_6".into(), generate(Family::Path(6))?.graph),
        ("C_7".into(), generate(Family::Cycle(7))?.graph),
        ("grid 3".into(), generate(Family::Grid(3))?.graph),
        ("star 5".into(), generate(Family::Star(5))?.graph),
    ];
    hosts.push(("k4_tail".into(), corpus::graph("k4_tail")?.graph));
    let mut rows = Vec::new();
    let (mut premises, mut violations) = (0, 0);
    for (name, g) in &hosts {
        for (q, k, adhesion) in [(2, 1, 1), (3, 1, 2), (3, 2, 2), (4, 2, 3)] {
            let Some(td) = find_decomposition(g, q, k, adhesion)? else {
                rows.push(json!({"graph": name, "q": q, "k": k, "found": false}));
                continue;
            };
            let outcomes: Vec<_> = (0..td.len()).map(|t| cone_bound_check(g, &td, t, q, k)).collect();
            premises += outcomes.iter().filter(|o| o.premises).count();
            violations += outcomes.iter().filter(|o| !o.holds).count();
            rows.push(json!({"graph": name, "q": q, "k": k, "found": true, "nodes": outcomes}));
        }
    }
    Ok(json!({
        "experiment": "cone-bound",
        "nodes_meeting_premises": premises,
        "violations": violations,
        "runs": rows,
    }))
}

fn grid_order() -> Result<Value> {
    let rows: Vec<Value> = corpus::graphs()?
        .par_iter()
        .map(|(name, bg)| {
            let brg = params::value(ParamKind::Brg, &bg.graph, bg.annot)?;
            let bog = params::value(ParamKind::Bog, &bg.graph, bg.annot)?;
            Ok(json!({"graph": name, "brg": brg, "bog": bog, "holds": brg <= bog}))
        })
        .collect::<Result<_>>()?;
    let violations = rows.iter().filter(|r| r["holds"] == false).count();
    Ok(json!({"experiment": "grid-order", "violations": violations, "rows": rows}))
}

fn adbrg_growth() -> Result<Value> {
    let mut values = Vec::new();
    for k in 2..=4 {
        let g = generate(Family::OuterGrid(k))?;
        values.push(params::value(ParamKind::Adbrg, &g.graph, g.annot)?);
    }
    let nondecreasing = values.windows(2).all(|w| w[0] <= w[1]);
    let positive = values.iter().all(|&v| v >= 1);
    Ok(json!({
        "experiment": "adbrg-growth",
        "sizes": [2, 3, 4],
        "values": values,
        "nondecreasing": nondecreasing,
        "at_least_one": positive,
    }))
}

fn subset_monotonicity() -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut work = Vec::new();
    for _ in 0..120 {
        let n = rng.gen_range(2..=6);
        let ag = random_annotated(&mut rng, n, 0.5, 0.6);
        let y = ag.annot.iter().filter(|_| rng.gen_bool(0.5)).collect();
        work.push((ag, y));
    }
    let kinds = [ParamKind::Size, ParamKind::Ttw, ParamKind::Atw, ParamKind::Brg, ParamKind::Bog, ParamKind::Adbrg];
    let violations: Vec<Value> = work
        .par_iter()
        .map(|(ag, y)| {
            let mut out = Vec::new();
            for kind in kinds {
                let (a, b) = (
                    params::value(kind, &ag.graph, *y)?,
                    params::value(kind, &ag.graph, ag.annot)?,
                );
                if a > b {
                    out.push(json!({"kind": kind, "edges": ag.graph.edges(), "x": ag.annot, "y": y}));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(json!({
        "experiment": "subset-monotonicity",
        "pairs": work.len(),
        "kinds": kinds,
        "violations": violations,
    }))
}

fn sweep() -> Result<Value> {
    let mut pool = Vec::new();
    for n in 2..=6 {
        let g = Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>());
        pool.push(BoundariedGraph::new(g.clone(), Default::default(), vec![0])?);
        let end = [n - 1].into_iter().collect();
        pool.push(BoundariedGraph::new(g, end, vec![0])?);
    }
    let contexts = random_contexts(&pool[0], 40, 5, 9);
    let rows = transfer_sweep(ParamKind::Ttw, &pool, &contexts, &[0, 1, 2], 3)?;
    Ok(json!({
        "experiment": "transfer-sweep",
        "parameter": "ttw",
        "pool": pool.len(),
        "contexts": contexts.len(),
        "rows": rows,
    }))
}
