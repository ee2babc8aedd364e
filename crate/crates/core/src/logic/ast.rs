use crate::params::ParamKind;
use std::collections::BTreeSet;

/// Formulas over colored graphs. Element variables are lowercase, set
/// variables uppercase.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Edge(String, String),
    Eq(String, String),
    Member(String, String),
    Color(String, String),
    CardMod {
        set: String,
        modulus: u32,
        residue: u32,
    },
    Dp(Vec<(String, String)>),
    Conn {
        s: String,
        t: String,
        deleted: Vec<String>,
    },
    TtwLe {
        k: usize,
        vars: Vec<String>,
    },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    SetExists(SetBound, String, Box<Formula>),
    SetForall(SetBound, String, Box<Formula>),
}

/// The `[p <= k]` bound of a set quantifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SetBound {
    pub kind: ParamKind,
    pub k: usize,
}

pub fn is_set_var(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(x: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(f))
    }

    pub fn forall(x: impl Into<String>, f: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(f))
    }

    pub fn edge(x: &str, y: &str) -> Formula {
        Formula::Edge(x.into(), y.into())
    }

    pub fn eq(x: &str, y: &str) -> Formula {
        Formula::Eq(x.into(), y.into())
    }

    pub fn member(x: &str, set: &str) -> Formula {
        Formula::Member(x.into(), set.into())
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn and_all(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `false` when empty.
    pub fn or_all(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    pub fn is_atom(&self) -> bool {
        !matches!(
            self,
            Formula::Not(_)
                | Formula::And(..)
                | Formula::Or(..)
                | Formula::Implies(..)
                | Formula::Iff(..)
                | Formula::Exists(..)
                | Formula::Forall(..)
                | Formula::SetExists(..)
                | Formula::SetForall(..)
        )
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(
            self,
            Formula::Exists(..)
                | Formula::Forall(..)
                | Formula::SetExists(..)
                | Formula::SetForall(..)
        )
    }

    /// Variables occurring in an atom, in order of occurrence.
    pub fn atom_vars(&self) -> Vec<&String> {
        match self {
            Formula::Edge(a, b) | Formula::Eq(a, b) | Formula::Member(a, b) => vec![a, b],
            Formula::Color(_, x) => vec![x],
            Formula::CardMod { set, .. } => vec![set],
            Formula::Dp(pairs) => pairs.iter().flat_map(|(a, b)| [a, b]).collect(),
            Formula::Conn { s, t, deleted } => {
                let mut v = vec![s, t];
                v.extend(deleted.iter());
                v
            }
            Formula::TtwLe { vars, .. } => vars.iter().collect(),
            _ => vec![],
        }
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Not(a)
            | Formula::Exists(_, a)
            | Formula::Forall(_, a)
            | Formula::SetExists(_, _, a)
            | Formula::SetForall(_, _, a) => vec![a],
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => vec![a, b],
            _ => vec![],
        }
    }

    /// Free variables (both sorts), sorted.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Exists(x, a)
            | Formula::Forall(x, a)
            | Formula::SetExists(_, x, a)
            | Formula::SetForall(_, x, a) => {
                bound.push(x.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
            f if f.is_atom() => {
                for v in f.atom_vars() {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
            f => {
                for c in f.children() {
                    c.collect_free(bound, out);
                }
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Exists(x, _)
            | Formula::Forall(x, _)
            | Formula::SetExists(_, x, _)
            | Formula::SetForall(_, x, _) => {
                out.insert(x.clone());
            }
            f if f.is_atom() => {
                out.extend(f.atom_vars().into_iter().cloned());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut dyn FnMut(&Formula)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    pub fn any(&self, pred: &dyn Fn(&Formula) -> bool) -> bool {
        pred(self) || self.children().into_iter().any(|c| c.any(pred))
    }

    pub fn has_set_quantifier(&self) -> bool {
        self.any(&|f| matches!(f, Formula::SetExists(..) | Formula::SetForall(..)))
    }

    /// Renames free occurrences of `from` to `to` (capture is the caller's concern).
    pub fn rename_free(&self, from: &str, to: &str) -> Formula {
        let r = |s: &String| if s == from { to.to_string() } else { s.clone() };
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Edge(a, b) => Formula::Edge(r(a), r(b)),
            Formula::Eq(a, b) => Formula::Eq(r(a), r(b)),
            Formula::Member(a, b) => Formula::Member(r(a), r(b)),
            Formula::Color(c, x) => Formula::Color(c.clone(), r(x)),
            Formula::CardMod {
                set,
                modulus,
                residue,
            } => Formula::CardMod {
                set: r(set),
                modulus: *modulus,
                residue: *residue,
            },
            Formula::Dp(pairs) => Formula::Dp(pairs.iter().map(|(a, b)| (r(a), r(b))).collect()),
            Formula::Conn { s, t, deleted } => Formula::Conn {
                s: r(s),
                t: r(t),
                deleted: deleted.iter().map(r).collect(),
            },
            Formula::TtwLe { k, vars } => Formula::TtwLe {
                k: *k,
                vars: vars.iter().map(r).collect(),
            },
            Formula::Not(a) => Formula::not(a.rename_free(from, to)),
            Formula::And(a, b) => Formula::and(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Or(a, b) => Formula::or(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_free(from, to), b.rename_free(from, to))
            }
            Formula::Iff(a, b) => Formula::Iff(
                Box::new(a.rename_free(from, to)),
                Box::new(b.rename_free(from, to)),
            ),
            Formula::Exists(x, a)
            | Formula::Forall(x, a)
            | Formula::SetExists(_, x, a)
            | Formula::SetForall(_, x, a) => {
                let body = if x == from {
                    (**a).clone()
                } else {
                    a.rename_free(from, to)
                };
                self.with_body(body)
            }
        }
    }

    /// Same quantifier with a new body. Panics on non-quantifiers.
    pub fn with_body(&self, body: Formula) -> Formula {
        let b = Box::new(body);
        match self {
            Formula::Exists(x, _) => Formula::Exists(x.clone(), b),
            Formula::Forall(x, _) => Formula::Forall(x.clone(), b),
            Formula::SetExists(p, x, _) => Formula::SetExists(*p, x.clone(), b),
            Formula::SetForall(p, x, _) => Formula::SetForall(*p, x.clone(), b),
            _ => panic!("with_body on a non-quantifier"),
        }
    }

    /// Number of nodes of the syntax tree.
    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }
}
