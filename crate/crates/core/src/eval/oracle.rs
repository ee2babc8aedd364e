//! Reference evaluator: direct recursion on the syntax tree, set quantifiers
//! over every subset filtered by the exact parameter value.

use super::Environment;
use crate::error::{semantic, Result};
use crate::graph::{solve_conn, solve_dp, Graph};
use crate::logic::Formula;
use crate::params::{self, ParamKind};
use crate::vset::VertexSet;
use std::collections::HashMap;

struct Oracle<'a> {
    g: &'a Graph,
    values: HashMap<(ParamKind, u64), usize>,
}

impl Oracle<'_> {
    fn elem(&self, env: &Environment, x: &str) -> Result<usize> {
        match env.elements.get(x) {
            Some(&v) => Ok(v),
            None => semantic(format!("unassigned free variable '{x}'")),
        }
    }

    fn set(&self, env: &Environment, x: &str) -> Result<VertexSet> {
        match env.sets.get(x) {
            Some(&s) => Ok(s),
            None => semantic(format!("unassigned free variable '{x}'")),
        }
    }

    fn value(&mut self, kind: ParamKind, s: VertexSet) -> Result<usize> {
        if let Some(&v) = self.values.get(&(kind, s.0)) {
            return Ok(v);
        }
        let v = params::value(kind, self.g, s)?;
        self.values.insert((kind, s.0), v);
        Ok(v)
    }

    fn eval(&mut self, f: &Formula, env: &mut Environment) -> Result<bool> {
        let g = self.g;
        Ok(match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Edge(a, b) => g.has_edge(self.elem(env, a)?, self.elem(env, b)?),
            Formula::Eq(a, b) => self.elem(env, a)? == self.elem(env, b)?,
            Formula::Member(a, s) => self.set(env, s)?.contains(self.elem(env, a)?),
            Formula::Color(c, a) => g.color(c).contains(self.elem(env, a)?),
            Formula::CardMod {
                set,
                modulus,
                residue,
            } => self.set(env, set)?.len() as u32 % modulus == *residue,
            Formula::Dp(pairs) => {
                let mut p = Vec::new();
                for (a, b) in pairs {
                    p.push((self.elem(env, a)?, self.elem(env, b)?));
                }
                solve_dp(g, &p)?
            }
            Formula::Conn { s, t, deleted } => {
                let mut d = VertexSet::EMPTY;
                for x in deleted {
                    d.insert(self.elem(env, x)?);
                }
                solve_conn(g, self.elem(env, s)?, self.elem(env, t)?, d)?
            }
            Formula::TtwLe { k, vars } => {
                let mut x = VertexSet::EMPTY;
                for v in vars {
                    x.insert(self.elem(env, v)?);
                }
                self.value(ParamKind::Ttw, x)? <= *k
            }
            Formula::Not(a) => !self.eval(a, env)?,
            Formula::And(a, b) => {
                let l = self.eval(a, env)?;
                let r = self.eval(b, env)?;
                l && r
            }
            Formula::Or(a, b) => {
                let l = self.eval(a, env)?;
                let r = self.eval(b, env)?;
                l || r
            }
            Formula::Implies(a, b) => {
                let l = self.eval(a, env)?;
                let r = self.eval(b, env)?;
                !l || r
            }
            Formula::Iff(a, b) => self.eval(a, env)? == self.eval(b, env)?,
            Formula::Exists(x, body) | Formula::Forall(x, body) => {
                let exists = matches!(f, Formula::Exists(..));
                let saved = env.elements.get(x).copied();
                let mut result = !exists;
                for v in 0..g.n() {
                    env.elements.insert(x.clone(), v);
                    if self.eval(body, env)? == exists {
                        result = exists;
                    }
                }
                match saved {
                    Some(v) => env.elements.insert(x.clone(), v),
                    None => env.elements.remove(x),
                };
                result
            }
            Formula::SetExists(b, x, body) | Formula::SetForall(b, x, body) => {
                let exists = matches!(f, Formula::SetExists(..));
                let saved = env.sets.get(x).copied();
                let mut result = !exists;
                for s in g.vertices().subsets() {
                    if self.value(b.kind, s)? > b.k {
                        continue;
                    }
                    env.sets.insert(x.clone(), s);
                    if self.eval(body, env)? == exists {
                        result = exists;
                    }
                }
                match saved {
                    Some(s) => env.sets.insert(x.clone(), s),
                    None => env.sets.remove(x),
                };
                result
            }
        })
    }
}

/// Truth of `f` by exhaustive recursion; intended for graphs of at most
/// about six vertices.
pub fn evaluate_naive(g: &Graph, f: &Formula, env: &Environment) -> Result<bool> {
    let mut o = Oracle {
        g,
        values: HashMap::new(),
    };
    o.eval(f, &mut env.clone())
}
