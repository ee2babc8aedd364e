//! Prenex normal form: set quantifiers, then element quantifiers, then a
//! quantifier-free matrix.

use super::ast::{Formula, SetBound};
use crate::params::ParamKind;
use std::collections::BTreeSet;

/// Generator of variable names not occurring in a given formula.
pub(crate) struct Fresh {
    used: BTreeSet<String>,
}

impl Fresh {
    pub(crate) fn avoiding(f: &Formula) -> Self {
        Fresh { used: f.all_vars() }
    }

    /// `base` with its numeric suffix replaced by the first unused `_i`.
    pub(crate) fn name(&mut self, base: &str) -> String {
        let stem = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '_');
        let stem = if stem.is_empty() { base } else { stem };
        let mut i = 1;
        loop {
            let cand = format!("{stem}_{i}");
            if self.used.insert(cand.clone()) {
                return cand;
            }
            i += 1;
        }
    }
}

/// Negation normal form. Quantifier-free subformulas are kept verbatim, so
/// `->` and `<->` are only expanded where they sit above a quantifier.
fn nnf(f: &Formula, neg: bool) -> Formula {
    let has_q = f.any(&|g| g.is_quantifier());
    if !has_q {
        return match (neg, f) {
            (false, _) => f.clone(),
            (true, Formula::Not(g)) => (**g).clone(),
            (true, _) => Formula::not(f.clone()),
        };
    }
    match f {
        Formula::Not(a) => nnf(a, !neg),
        Formula::And(a, b) if !neg => Formula::and(nnf(a, false), nnf(b, false)),
        Formula::And(a, b) => Formula::or(nnf(a, true), nnf(b, true)),
        Formula::Or(a, b) if !neg => Formula::or(nnf(a, false), nnf(b, false)),
        Formula::Or(a, b) => Formula::and(nnf(a, true), nnf(b, true)),
        Formula::Implies(a, b) if !neg => Formula::or(nnf(a, true), nnf(b, false)),
        Formula::Implies(a, b) => Formula::and(nnf(a, false), nnf(b, true)),
        Formula::Iff(a, b) => {
            let (pa, na) = (nnf(a, false), nnf(a, true));
            let (pb, nb) = (nnf(b, false), nnf(b, true));
            if neg {
                Formula::or(Formula::and(pa, nb), Formula::and(na, pb))
            } else {
                Formula::or(Formula::and(pa, pb), Formula::and(na, nb))
            }
        }
        Formula::Exists(x, a) if !neg => Formula::exists(x.clone(), nnf(a, false)),
        Formula::Exists(x, a) => Formula::forall(x.clone(), nnf(a, true)),
        Formula::Forall(x, a) if !neg => Formula::forall(x.clone(), nnf(a, false)),
        Formula::Forall(x, a) => Formula::exists(x.clone(), nnf(a, true)),
        Formula::SetExists(p, x, a) if !neg => Formula::SetExists(*p, x.clone(), Box::new(nnf(a, false))),
        Formula::SetExists(p, x, a) => Formula::SetForall(*p, x.clone(), Box::new(nnf(a, true))),
        Formula::SetForall(p, x, a) if !neg => Formula::SetForall(*p, x.clone(), Box::new(nnf(a, false))),
        Formula::SetForall(p, x, a) => Formula::SetExists(*p, x.clone(), Box::new(nnf(a, true))),
        _ => unreachable!("atoms have no quantifiers"),
    }
}

/// Renames binders so that no name is bound twice or both bound and free.
fn make_unique(f: &Formula, taken: &mut BTreeSet<String>, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::Exists(x, a)
        | Formula::Forall(x, a)
        | Formula::SetExists(_, x, a)
        | Formula::SetForall(_, x, a) => {
            let (name, body) = if taken.contains(x) {
                let y = fresh.name(x);
                (y.clone(), a.rename_free(x, &y))
            } else {
                (x.clone(), (**a).clone())
            };
            taken.insert(name.clone());
            let body = make_unique(&body, taken, fresh);
            match f {
                Formula::Exists(..) => Formula::exists(name, body),
                Formula::Forall(..) => Formula::forall(name, body),
                Formula::SetExists(p, ..) => Formula::SetExists(*p, name, Box::new(body)),
                _ => {
                    let Formula::SetForall(p, ..) = f else { unreachable!() };
                    Formula::SetForall(*p, name, Box::new(body))
                }
            }
        }
        Formula::Not(a) => Formula::not(make_unique(a, taken, fresh)),
        Formula::And(a, b) => {
            let a = make_unique(a, taken, fresh);
            Formula::and(a, make_unique(b, taken, fresh))
        }
        Formula::Or(a, b) => {
            let a = make_unique(a, taken, fresh);
            Formula::or(a, make_unique(b, taken, fresh))
        }
        Formula::Implies(a, b) => {
            let a = make_unique(a, taken, fresh);
            Formula::implies(a, make_unique(b, taken, fresh))
        }
        Formula::Iff(a, b) => {
            let a = make_unique(a, taken, fresh);
            Formula::Iff(Box::new(a), Box::new(make_unique(b, taken, fresh)))
        }
        _ => f.clone(),
    }
}

fn first_set_bound(f: &Formula) -> Option<SetBound> {
    match f {
        Formula::SetExists(p, ..) | Formula::SetForall(p, ..) => Some(*p),
        _ => f.children().into_iter().find_map(first_set_bound),
    }
}

/// Smallest bound whose family contains every singleton.
fn singleton_bound(b: SetBound) -> SetBound {
    let need = match b.kind {
        ParamKind::Ttw | ParamKind::Atw | ParamKind::Tw => 0,
        _ => 1,
    };
    if need <= b.k {
        SetBound { kind: b.kind, k: need }
    } else {
        SetBound {
            kind: ParamKind::Ttw,
            k: 0,
        }
    }
}

/// Replaces every atom mentioning `x` by `exists x'. (x' in S & atom[x'/x])`.
/// Negated atoms are treated as a unit so the result stays in negation normal form.
fn through_singleton(f: &Formula, x: &str, s: &str, fresh: &mut Fresh) -> Formula {
    let literal = match f {
        Formula::Not(a) if a.is_atom() => Some(&**a),
        a if a.is_atom() => Some(a),
        _ => None,
    };
    if let Some(atom) = literal {
        if !atom.atom_vars().iter().any(|v| *v == x) {
            return f.clone();
        }
        let y = fresh.name(x);
        return Formula::exists(
            y.clone(),
            Formula::and(Formula::member(&y, s), f.rename_free(x, &y)),
        );
    }
    match f {
        Formula::And(a, b) => {
            let a = through_singleton(a, x, s, fresh);
            Formula::and(a, through_singleton(b, x, s, fresh))
        }
        Formula::Or(a, b) => {
            let a = through_singleton(a, x, s, fresh);
            Formula::or(a, through_singleton(b, x, s, fresh))
        }
        q if q.is_quantifier() => q.with_body(through_singleton(q.children()[0], x, s, fresh)),
        other => through_singleton(&full_nnf(other, false), x, s, fresh),
    }
}

/// Negation normal form of a quantifier-free formula down to literals.
fn full_nnf(f: &Formula, neg: bool) -> Formula {
    match f {
        Formula::Not(a) => full_nnf(a, !neg),
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (a, b) = (full_nnf(a, neg), full_nnf(b, neg));
            if matches!(f, Formula::And(..)) != neg {
                Formula::and(a, b)
            } else {
                Formula::or(a, b)
            }
        }
        Formula::Implies(a, b) => full_nnf(&Formula::or(Formula::not((**a).clone()), (**b).clone()), neg),
        Formula::Iff(a, b) => {
            let (a, b) = ((**a).clone(), (**b).clone());
            let e = Formula::or(
                Formula::and(a.clone(), b.clone()),
                Formula::and(Formula::not(a), Formula::not(b)),
            );
            full_nnf(&e, neg)
        }
        atom if neg => Formula::not(atom.clone()),
        atom => atom.clone(),
    }
}

/// `S` has exactly one element, or (negated) not exactly one, in NNF.
fn singleton(s: &str, neg: bool, fresh: &mut Fresh) -> Formula {
    let w = fresh.name("u");
    let u = fresh.name("u");
    let v = fresh.name("v");
    if !neg {
        Formula::and(
            Formula::exists(w.clone(), Formula::member(&w, s)),
            Formula::forall(
                u.clone(),
                Formula::forall(
                    v.clone(),
                    Formula::or_all([
                        Formula::not(Formula::member(&u, s)),
                        Formula::not(Formula::member(&v, s)),
                        Formula::eq(&u, &v),
                    ]),
                ),
            ),
        )
    } else {
        Formula::or(
            Formula::forall(w.clone(), Formula::not(Formula::member(&w, s))),
            Formula::exists(
                u.clone(),
                Formula::exists(
                    v.clone(),
                    Formula::and_all([
                        Formula::member(&u, s),
                        Formula::member(&v, s),
                        Formula::not(Formula::eq(&u, &v)),
                    ]),
                ),
            ),
        )
    }
}

/// Turns every element quantifier whose scope holds a set quantifier into a
/// quantifier over singleton sets, so that all set quantifiers can be hoisted
/// in front of all element quantifiers.
fn lift_elements(f: &Formula, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::Exists(x, a) | Formula::Forall(x, a) if a.has_set_quantifier() => {
            let bound = singleton_bound(first_set_bound(a).expect("has a set quantifier"));
            let s = fresh.name(&format!("S{x}"));
            let body = lift_elements(&through_singleton(a, x, &s, fresh), fresh);
            if matches!(f, Formula::Exists(..)) {
                let guard = singleton(&s, false, fresh);
                Formula::SetExists(bound, s, Box::new(Formula::and(guard, body)))
            } else {
                let guard = singleton(&s, true, fresh);
                Formula::SetForall(bound, s, Box::new(Formula::or(guard, body)))
            }
        }
        Formula::Not(a) => Formula::not(lift_elements(a, fresh)),
        Formula::And(a, b) => {
            let a = lift_elements(a, fresh);
            Formula::and(a, lift_elements(b, fresh))
        }
        Formula::Or(a, b) => {
            let a = lift_elements(a, fresh);
            Formula::or(a, lift_elements(b, fresh))
        }
        q if q.is_quantifier() => q.with_body(lift_elements(q.children()[0], fresh)),
        _ => f.clone(),
    }
}

/// Prefix entries are quantifiers with a placeholder body.
fn hoist(f: &Formula) -> (Vec<Formula>, Vec<Formula>, Formula) {
    match f {
        Formula::SetExists(..) | Formula::SetForall(..) => {
            let (mut sets, elems, m) = hoist(f.children()[0]);
            sets.insert(0, f.with_body(Formula::True));
            (sets, elems, m)
        }
        Formula::Exists(..) | Formula::Forall(..) => {
            let (sets, mut elems, m) = hoist(f.children()[0]);
            debug_assert!(sets.is_empty(), "element quantifier above a set quantifier");
            elems.insert(0, f.with_body(Formula::True));
            (sets, elems, m)
        }
        Formula::And(a, b) | Formula::Or(a, b) if f.any(&|g| g.is_quantifier()) => {
            let (mut sa, mut ea, ma) = hoist(a);
            let (sb, eb, mb) = hoist(b);
            sa.extend(sb);
            ea.extend(eb);
            let m = if matches!(f, Formula::And(..)) {
                Formula::and(ma, mb)
            } else {
                Formula::or(ma, mb)
            };
            (sa, ea, m)
        }
        _ => (vec![], vec![], f.clone()),
    }
}

/// Equivalent prenex formula (on graphs with at least one vertex).
pub fn to_prenex(f: &Formula) -> Formula {
    let mut fresh = Fresh::avoiding(f);
    let n = nnf(f, false);
    let mut taken = f.free_vars();
    let u = make_unique(&n, &mut taken, &mut fresh);
    let l = lift_elements(&u, &mut fresh);
    let (sets, elems, matrix) = hoist(&l);
    sets.iter()
        .chain(elems.iter())
        .rev()
        .fold(matrix, |acc, q| q.with_body(acc))
}

/// True if no quantifier sits below a connective and set quantifiers precede
/// element quantifiers.
pub fn is_prenex(f: &Formula) -> bool {
    let mut cur = f;
    let mut seen_element = false;
    loop {
        match cur {
            Formula::SetExists(..) | Formula::SetForall(..) => {
                if seen_element {
                    return false;
                }
            }
            Formula::Exists(..) | Formula::Forall(..) => seen_element = true,
            m => return !m.any(&|g| g.is_quantifier()),
        }
        cur = cur.children()[0];
    }
}
