//! Formula transformations: topological-minor containment as a disjoint-paths
//! formula, collapse of ttw-bounded set quantifiers to element tuples, and the
//! reduction of FO model checking to CMSO/ttw on subdivided hosts.

use crate::error::{envelope, semantic, Result};
use crate::graph::{subdivide, AnnotatedGraph, Graph};
use crate::logic::{fragment_of, Formula, FragmentTag, Fresh, SetBound};
use crate::params::ParamKind;
use serde::Serialize;

/// Largest pattern accepted by [`minor_formula`].
pub const MINOR_FORMULA_MAX_VERTICES: usize = 5;

/// Name of the free set variable of [`minor_formula`].
pub const MINOR_SET_VAR: &str = "X";

fn conj(items: Vec<Formula>) -> Formula {
    Formula::and_all(items.into_iter().filter(|f| *f != Formula::True))
}

fn neq(a: &str, b: &str) -> Formula {
    Formula::not(Formula::eq(a, b))
}

/// Formula with free set variable `X` that holds on `(G, X := S)` iff the
/// annotated pattern `(H, Y)` is a topological minor of `(G, S)`.
///
/// Images `x0, x1, ...` are pairwise distinct, annotated images lie in `X`,
/// and for some set of pattern edges the others are host edges while each
/// chosen edge `ab` leaves `x_a` through `s_i` and enters `x_b` through
/// `t_i`, with all `s_i`–`t_i` paths disjoint from each other and from every
/// image. The `dp` atom is repeated after each chosen edge so that partial
/// routings fail early.
pub fn minor_formula(pattern: &AnnotatedGraph) -> Result<Formula> {
    let h = &pattern.graph;
    if h.n() > MINOR_FORMULA_MAX_VERTICES {
        return envelope(format!(
            "minor formulas are limited to patterns with {MINOR_FORMULA_MAX_VERTICES} vertices"
        ));
    }
    let x: Vec<String> = (0..h.n()).map(|i| format!("x{i}")).collect();
    let edges = h.edges();
    let trivial: Vec<(String, String)> = x.iter().map(|v| (v.clone(), v.clone())).collect();

    let mut cases = Vec::new();
    for mask in 0u32..1 << edges.len() {
        let mut direct = Vec::new();
        let mut routed = Vec::new();
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                routed.push((a, b));
            } else {
                direct.push(Formula::edge(&x[a], &x[b]));
            }
        }
        let mut inner = Formula::True;
        for (i, &(a, b)) in routed.iter().enumerate().rev() {
            let (s, t) = (format!("s{i}"), format!("t{i}"));
            let mut pairs: Vec<(String, String)> = (0..=i)
                .map(|j| (format!("s{j}"), format!("t{j}")))
                .collect();
            pairs.extend(trivial.iter().cloned());
            let tail = conj(vec![
                Formula::edge(&x[b], &t),
                Formula::Dp(pairs),
                inner,
            ]);
            inner = Formula::exists(
                s.clone(),
                Formula::and(Formula::edge(&x[a], &s), Formula::exists(t, tail)),
            );
        }
        direct.push(inner);
        cases.push(conj(direct));
    }
    let mut body = Formula::or_all(cases);
    if edges.is_empty() {
        body = Formula::True;
    }
    for i in (0..h.n()).rev() {
        let mut parts = Vec::new();
        if pattern.annot.contains(i) {
            parts.push(Formula::member(&x[i], MINOR_SET_VAR));
        }
        parts.extend((0..i).map(|j| neq(&x[i], &x[j])));
        parts.push(body);
        body = Formula::exists(x[i].clone(), conj(parts));
    }
    Ok(body)
}

/// Replaces every free occurrence of `y in set` by `with(y)`.
fn substitute_member(
    f: &Formula,
    set: &str,
    with: &dyn Fn(&str) -> Formula,
) -> Result<Formula> {
    let rec = |g: &Formula| substitute_member(g, set, with);
    Ok(match f {
        Formula::Member(y, s) if s == set => with(y),
        Formula::CardMod { set: s, .. } if s == set => {
            return semantic(format!(
                "cannot collapse '{set}': it occurs in a card atom"
            ))
        }
        Formula::Not(a) => Formula::not(rec(a)?),
        Formula::And(a, b) => Formula::and(rec(a)?, rec(b)?),
        Formula::Or(a, b) => Formula::or(rec(a)?, rec(b)?),
        Formula::Implies(a, b) => Formula::implies(rec(a)?, rec(b)?),
        Formula::Iff(a, b) => Formula::Iff(Box::new(rec(a)?), Box::new(rec(b)?)),
        Formula::SetExists(_, x, _) | Formula::SetForall(_, x, _) if x == set => f.clone(),
        q if q.is_quantifier() => q.with_body(rec(q.children()[0])?),
        atom => atom.clone(),
    })
}

fn collapse(f: &Formula, q: usize, fresh: &mut Fresh) -> Result<Formula> {
    Ok(match f {
        Formula::SetExists(b, set, body) | Formula::SetForall(b, set, body) => {
            if b.kind != ParamKind::Ttw {
                return semantic(format!(
                    "collapse only applies to ttw-bounded set quantifiers, found {}",
                    b.kind
                ));
            }
            let exists = matches!(f, Formula::SetExists(..));
            let body = collapse(body, q, fresh)?;
            let base = set.to_lowercase();
            let mode = fresh.name(&format!("{base}z"));
            let xs: Vec<String> = (0..q).map(|_| fresh.name(&base)).collect();
            let mode_c = mode.clone();
            let members = xs.clone();
            let first = xs[0].clone();
            let sub = substitute_member(&body, set, &move |y: &str| {
                Formula::and(
                    Formula::eq(&mode_c, &first),
                    Formula::or_all(members.iter().map(|m| Formula::eq(y, m))),
                )
            })?;
            let atom = Formula::TtwLe {
                k: b.k,
                vars: xs.clone(),
            };
            let mut out = if exists {
                Formula::and(atom, sub)
            } else {
                Formula::implies(atom, sub)
            };
            for v in xs.iter().rev().chain(std::iter::once(&mode)) {
                out = if exists {
                    Formula::exists(v.clone(), out)
                } else {
                    Formula::forall(v.clone(), out)
                };
            }
            out
        }
        Formula::Not(a) => Formula::not(collapse(a, q, fresh)?),
        Formula::And(a, b) => Formula::and(collapse(a, q, fresh)?, collapse(b, q, fresh)?),
        Formula::Or(a, b) => Formula::or(collapse(a, q, fresh)?, collapse(b, q, fresh)?),
        Formula::Implies(a, b) => {
            Formula::implies(collapse(a, q, fresh)?, collapse(b, q, fresh)?)
        }
        Formula::Iff(a, b) => Formula::Iff(
            Box::new(collapse(a, q, fresh)?),
            Box::new(collapse(b, q, fresh)?),
        ),
        Formula::Exists(..) | Formula::Forall(..) => {
            f.with_body(collapse(f.children()[0], q, fresh)?)
        }
        atom => atom.clone(),
    })
}

/// Replaces each `Exists[ttw<=k] X. xi` by
/// `exists z. exists x_1 ... x_q. (ttwle(k; x_1..x_q) & xi')`, where `xi'`
/// reads `y in X` as `z = x_1 & (y = x_1 | ... | y = x_q)`. Choosing
/// `z != x_1` represents the empty set; repeated values represent sets
/// smaller than `q`. Universal quantifiers are rewritten dually.
pub fn collapse_rewrite(f: &Formula, q: usize) -> Result<Formula> {
    if q == 0 {
        return semantic("collapse needs q >= 1");
    }
    let mut fresh = Fresh::avoiding(f);
    collapse(f, q, &mut fresh)
}

/// Host graph, rewritten formula and the position of each pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionOutput {
    #[serde(skip)]
    pub host: Graph,
    #[serde(serialize_with = "crate::rewrite::display")]
    pub formula: Formula,
    /// `principal_map[v]` is the host vertex of `v`.
    pub principal_map: Vec<usize>,
}

pub(crate) fn display<S: serde::Serializer>(
    f: &Formula,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

/// `v` has at least three neighbors.
fn deg3(v: &str, fresh: &mut Fresh) -> Formula {
    let (a, b, c) = (fresh.name("a"), fresh.name("b"), fresh.name("c"));
    Formula::exists(
        a.clone(),
        Formula::and(
            Formula::edge(v, &a),
            Formula::exists(
                b.clone(),
                Formula::and_all([
                    Formula::edge(v, &b),
                    neq(&a, &b),
                    Formula::exists(
                        c.clone(),
                        Formula::and_all([Formula::edge(v, &c), neq(&a, &c), neq(&b, &c)]),
                    ),
                ]),
            ),
        ),
    )
}

/// `v` has exactly two neighbors.
fn deg2(v: &str, fresh: &mut Fresh) -> Formula {
    let (a, b, c) = (fresh.name("a"), fresh.name("b"), fresh.name("c"));
    Formula::exists(
        a.clone(),
        Formula::and(
            Formula::edge(v, &a),
            Formula::exists(
                b.clone(),
                Formula::and_all([
                    Formula::edge(v, &b),
                    neq(&a, &b),
                    Formula::forall(
                        c.clone(),
                        Formula::implies(
                            Formula::edge(v, &c),
                            Formula::or(Formula::eq(&c, &a), Formula::eq(&c, &b)),
                        ),
                    ),
                ]),
            ),
        ),
    )
}

/// `x` and `y` are joined by a path whose internal vertices all have degree
/// two: some nonempty set `P` of degree-2 vertices, closed under taking
/// neighbors other than `x` and `y`, touches both.
fn thread_adjacent(x: &str, y: &str, fresh: &mut Fresh) -> Formula {
    let p = fresh.name("P");
    let (u, v, w, z, r) = (
        fresh.name("p"),
        fresh.name("p"),
        fresh.name("q"),
        fresh.name("p"),
        fresh.name("p"),
    );
    let body = Formula::and_all([
        Formula::forall(
            u.clone(),
            Formula::implies(Formula::member(&u, &p), deg2(&u, fresh)),
        ),
        Formula::forall(
            v.clone(),
            Formula::implies(
                Formula::member(&v, &p),
                Formula::forall(
                    w.clone(),
                    Formula::implies(
                        Formula::edge(&v, &w),
                        Formula::or_all([
                            Formula::member(&w, &p),
                            Formula::eq(&w, x),
                            Formula::eq(&w, y),
                        ]),
                    ),
                ),
            ),
        ),
        Formula::exists(
            z.clone(),
            Formula::and(Formula::member(&z, &p), Formula::edge(x, &z)),
        ),
        Formula::exists(
            r.clone(),
            Formula::and(Formula::member(&r, &p), Formula::edge(y, &r)),
        ),
    ]);
    Formula::or(
        Formula::edge(x, y),
        Formula::SetExists(
            SetBound {
                kind: ParamKind::Ttw,
                k: 2,
            },
            p,
            Box::new(body),
        ),
    )
}

fn relativize(f: &Formula, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::Edge(a, b) => thread_adjacent(a, b, fresh),
        Formula::Exists(x, body) => {
            let g = deg3(x, fresh);
            Formula::exists(x.clone(), Formula::and(g, relativize(body, fresh)))
        }
        Formula::Forall(x, body) => {
            let g = deg3(x, fresh);
            Formula::forall(x.clone(), Formula::implies(g, relativize(body, fresh)))
        }
        Formula::Not(a) => Formula::not(relativize(a, fresh)),
        Formula::And(a, b) => {
            let a = relativize(a, fresh);
            Formula::and(a, relativize(b, fresh))
        }
        Formula::Or(a, b) => {
            let a = relativize(a, fresh);
            Formula::or(a, relativize(b, fresh))
        }
        Formula::Implies(a, b) => {
            let a = relativize(a, fresh);
            Formula::implies(a, relativize(b, fresh))
        }
        Formula::Iff(a, b) => {
            let a = relativize(a, fresh);
            Formula::Iff(Box::new(a), Box::new(relativize(b, fresh)))
        }
        atom => atom.clone(),
    }
}

/// Leaves attached so that every original vertex ends with degree at least
/// three: two per vertex, three on isolated vertices.
pub fn branch_augment(h: &Graph) -> Result<Graph> {
    crate::graph::attach_leaves(h, |v| if h.degree(v) == 0 { 3 } else { 2 })
}

/// Builds the subdivided host and the relativized formula for `H ⊨ φ`.
pub fn hardness_reduce(h: &Graph, phi: &Formula, t: usize) -> Result<ReductionOutput> {
    if fragment_of(phi) != FragmentTag::Fo {
        return semantic(format!(
            "reduction needs a first-order formula, found {}",
            fragment_of(phi)
        ));
    }
    let h0 = branch_augment(h)?;
    let mut host = subdivide(&h0, t)?;
    for (name, set) in h.colors() {
        host.set_color(name.clone(), *set);
    }
    let mut fresh = Fresh::avoiding(phi);
    let formula = relativize(phi, &mut fresh);
    Ok(ReductionOutput {
        host,
        formula,
        principal_map: (0..h.n()).collect(),
    })
}

#[cfg(test)]
mod tests;
