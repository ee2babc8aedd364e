//! Evaluation of formulas on colored graphs.
//!
//! Formulas are compiled to a slot-addressed tree: element and set variables
//! become positions on two runtime stacks. Element quantifiers whose body
//! starts with a membership, adjacency or equality test on the bound variable
//! only range over the vertices that pass it.

mod battery;
mod oracle;

pub use battery::{battery_type, ext_battery_type, Battery, MAX_EXT_BOUNDARY};
pub use oracle::evaluate_naive;

use crate::error::{envelope, semantic, Error, Result};
use crate::graph::{solve_conn, solve_dp, Graph};
use crate::logic::{Formula, SetBound};
use crate::params::{self, ParamKind};
use crate::vset::VertexSet;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

/// Default limit on evaluation steps before refusing.
pub const DEFAULT_STEP_BUDGET: u64 = 2_000_000_000;
/// Largest family a bounded set quantifier may range over.
pub const MAX_FAMILY: usize = 1 << 20;

/// Values of free variables, as vertex indices of the graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Environment {
    pub elements: BTreeMap<String, usize>,
    pub sets: BTreeMap<String, VertexSet>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_element(mut self, x: &str, v: usize) -> Self {
        self.elements.insert(x.to_string(), v);
        self
    }

    pub fn with_set(mut self, x: &str, s: VertexSet) -> Self {
        self.sets.insert(x.to_string(), s);
        self
    }

    /// Names of all bound variables.
    pub fn names(&self) -> Vec<&str> {
        self.elements.keys().chain(self.sets.keys()).map(String::as_str).collect()
    }

    /// Parses bindings such as `x=3 X=1,2 Y=`; ids are vertex labels of `g`.
    pub fn parse(text: &str, g: &Graph) -> Result<Self> {
        let mut env = Environment::new();
        for tok in text.split_whitespace() {
            let Some((name, val)) = tok.split_once('=') else {
                return semantic(format!("binding '{tok}' is not of the form name=value"));
            };
            let vertex = |s: &str| -> Result<usize> {
                let id: u32 = s
                    .parse()
                    .map_err(|_| Error::Semantic(format!("'{s}' is not a vertex id")))?;
                g.index_of(id)
                    .ok_or_else(|| Error::Semantic(format!("unknown vertex {id}")))
            };
            if crate::logic::is_set_var(name) {
                let mut s = VertexSet::EMPTY;
                for part in val.split(',').filter(|p| !p.is_empty()) {
                    s.insert(vertex(part)?);
                }
                env.sets.insert(name.to_string(), s);
            } else {
                env.elements.insert(name.to_string(), vertex(val)?);
            }
        }
        Ok(env)
    }
}

/// A variable assignment reported as part of a witness, in vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BindingValue {
    Element(u32),
    Set(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Binding {
    pub var: String,
    pub value: BindingValue,
}

/// Truth value plus, when true, the first satisfying values of the leading
/// existential quantifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub value: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<Binding>,
}

#[derive(Clone, Copy, Debug)]
enum Guard {
    InSet(usize),
    Adjacent(usize),
    Equal(usize),
}

#[derive(Clone, Debug)]
enum Node {
    Const(bool),
    Edge(usize, usize),
    Eq(usize, usize),
    Member(usize, usize),
    Color(VertexSet, usize),
    CardMod(usize, u32, u32),
    Dp(Vec<(usize, usize)>),
    Conn(usize, usize, Vec<usize>),
    TtwLe(usize, Vec<usize>),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Elem {
        exists: bool,
        name: String,
        guards: Vec<Guard>,
        body: Box<Node>,
    },
    Set {
        exists: bool,
        name: String,
        bound: SetBound,
        body: Box<Node>,
        id: usize,
        free_elems: Vec<usize>,
        free_sets: Vec<usize>,
    },
}

/// Element and set slots referenced anywhere in `n`.
fn refs(n: &Node, e: &mut BTreeSet<usize>, s: &mut BTreeSet<usize>) {
    match n {
        Node::Const(_) => {}
        Node::Edge(a, b) | Node::Eq(a, b) => {
            e.insert(*a);
            e.insert(*b);
        }
        Node::Member(a, x) => {
            e.insert(*a);
            s.insert(*x);
        }
        Node::Color(_, a) => {
            e.insert(*a);
        }
        Node::CardMod(x, ..) => {
            s.insert(*x);
        }
        Node::Dp(pairs) => e.extend(pairs.iter().flat_map(|&(a, b)| [a, b])),
        Node::Conn(a, b, d) => {
            e.insert(*a);
            e.insert(*b);
            e.extend(d.iter().copied());
        }
        Node::TtwLe(_, vars) => e.extend(vars.iter().copied()),
        Node::Not(a) => refs(a, e, s),
        Node::And(a, b) | Node::Or(a, b) | Node::Implies(a, b) | Node::Iff(a, b) => {
            refs(a, e, s);
            refs(b, e, s);
        }
        Node::Elem { guards, body, .. } => {
            for g in guards {
                match *g {
                    Guard::InSet(x) => {
                        s.insert(x);
                    }
                    Guard::Adjacent(a) | Guard::Equal(a) => {
                        e.insert(a);
                    }
                }
            }
            refs(body, e, s);
        }
        Node::Set {
            free_elems,
            free_sets,
            ..
        } => {
            e.extend(free_elems.iter().copied());
            s.extend(free_sets.iter().copied());
        }
    }
}

struct Compiler<'a> {
    g: &'a Graph,
    elems: Vec<String>,
    sets: Vec<String>,
    next_id: usize,
}

fn slot(stack: &[String], x: &str) -> Result<usize> {
    stack
        .iter()
        .rposition(|s| s == x)
        .ok_or_else(|| Error::Semantic(format!("unassigned free variable '{x}'")))
}

fn conjuncts(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::And(a, b) => {
            let mut v = conjuncts(a);
            v.extend(conjuncts(b));
            v
        }
        _ => vec![f],
    }
}

fn disjuncts(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::Or(a, b) => {
            let mut v = disjuncts(a);
            v.extend(disjuncts(b));
            v
        }
        _ => vec![f],
    }
}

impl Compiler<'_> {
    fn elem(&self, x: &str) -> Result<usize> {
        slot(&self.elems, x)
    }

    fn set(&self, x: &str) -> Result<usize> {
        slot(&self.sets, x)
    }

    /// Guard from a positive atom over the variable `x` about to be bound.
    fn guard(&self, x: &str, atom: &Formula) -> Option<Guard> {
        let other = |a: &String, b: &String| -> Option<usize> {
            let y = if a == x && b != x {
                b
            } else if b == x && a != x {
                a
            } else {
                return None;
            };
            self.elem(y).ok()
        };
        match atom {
            Formula::Member(y, s) if y == x => self.set(s).ok().map(Guard::InSet),
            Formula::Edge(a, b) => other(a, b).map(Guard::Adjacent),
            Formula::Eq(a, b) => other(a, b).map(Guard::Equal),
            _ => None,
        }
    }

    fn guards(&self, exists: bool, x: &str, body: &Formula) -> Vec<Guard> {
        let positive: Vec<&Formula> = if exists {
            conjuncts(body)
        } else if let Formula::Implies(a, _) = body {
            conjuncts(a)
        } else {
            disjuncts(body)
                .into_iter()
                .filter_map(|d| match d {
                    Formula::Not(a) => Some(&**a),
                    _ => None,
                })
                .collect()
        };
        positive.into_iter().filter_map(|a| self.guard(x, a)).collect()
    }

    fn compile(&mut self, f: &Formula) -> Result<Node> {
        let b = |n: Node| Box::new(n);
        Ok(match f {
            Formula::True => Node::Const(true),
            Formula::False => Node::Const(false),
            Formula::Edge(x, y) => Node::Edge(self.elem(x)?, self.elem(y)?),
            Formula::Eq(x, y) => Node::Eq(self.elem(x)?, self.elem(y)?),
            Formula::Member(x, s) => Node::Member(self.elem(x)?, self.set(s)?),
            Formula::Color(c, x) => Node::Color(self.g.color(c), self.elem(x)?),
            Formula::CardMod {
                set,
                modulus,
                residue,
            } => Node::CardMod(self.set(set)?, *modulus, *residue),
            Formula::Dp(pairs) => Node::Dp(
                pairs
                    .iter()
                    .map(|(a, c)| Ok((self.elem(a)?, self.elem(c)?)))
                    .collect::<Result<_>>()?,
            ),
            Formula::Conn { s, t, deleted } => Node::Conn(
                self.elem(s)?,
                self.elem(t)?,
                deleted.iter().map(|d| self.elem(d)).collect::<Result<_>>()?,
            ),
            Formula::TtwLe { k, vars } => Node::TtwLe(
                *k,
                vars.iter().map(|d| self.elem(d)).collect::<Result<_>>()?,
            ),
            Formula::Not(a) => Node::Not(b(self.compile(a)?)),
            Formula::And(x, y) => Node::And(b(self.compile(x)?), b(self.compile(y)?)),
            Formula::Or(x, y) => Node::Or(b(self.compile(x)?), b(self.compile(y)?)),
            Formula::Implies(x, y) => Node::Implies(b(self.compile(x)?), b(self.compile(y)?)),
            Formula::Iff(x, y) => Node::Iff(b(self.compile(x)?), b(self.compile(y)?)),
            Formula::Exists(x, body) | Formula::Forall(x, body) => {
                let exists = matches!(f, Formula::Exists(..));
                self.elems.push(x.clone());
                let guards = self.guards(exists, x, body);
                let body = self.compile(body);
                self.elems.pop();
                Node::Elem {
                    exists,
                    name: x.clone(),
                    guards,
                    body: b(body?),
                }
            }
            Formula::SetExists(bound, x, body) | Formula::SetForall(bound, x, body) => {
                let (ed, sd) = (self.elems.len(), self.sets.len());
                self.sets.push(x.clone());
                let body = self.compile(body);
                self.sets.pop();
                let body = body?;
                let (mut e, mut s) = (BTreeSet::new(), BTreeSet::new());
                refs(&body, &mut e, &mut s);
                let id = self.next_id;
                self.next_id += 1;
                Node::Set {
                    exists: matches!(f, Formula::SetExists(..)),
                    name: x.clone(),
                    bound: *bound,
                    body: b(body),
                    id,
                    free_elems: e.into_iter().filter(|&i| i < ed).collect(),
                    free_sets: s.into_iter().filter(|&i| i < sd).collect(),
                }
            }
        })
    }
}

/// All `S ⊆ V(G)` with `p(G, S) <= k`, in lexicographic order of their sorted
/// vertex lists. Sets are examined by size; a set is only examined when all
/// of its one-smaller subsets qualified, so no superset of a rejected set is
/// ever examined.
pub fn enumerate_bounded_sets(g: &Graph, kind: ParamKind, k: usize) -> Result<Vec<VertexSet>> {
    if !kind.is_minor_monotone() {
        return semantic(format!(
            "cannot enumerate sets bounded by {kind}: it is not minor-monotone"
        ));
    }
    let mut accepted: HashSet<u64> = HashSet::new();
    let mut out = vec![VertexSet::EMPTY];
    accepted.insert(0);
    let mut level = vec![VertexSet::EMPTY];
    while !level.is_empty() {
        let mut next = Vec::new();
        for s in &level {
            let start = s.last().map_or(0, |m| m + 1);
            for v in start..g.n() {
                let t = s.with(v);
                if !t.iter().all(|u| accepted.contains(&t.without(u).0)) {
                    continue;
                }
                if params::at_most(kind, g, t, k)? {
                    accepted.insert(t.0);
                    next.push(t);
                    out.push(t);
                    if out.len() > MAX_FAMILY {
                        return envelope(format!(
                            "more than {MAX_FAMILY} sets with {kind} at most {k}"
                        ));
                    }
                }
            }
        }
        level = next;
    }
    out.sort_by_key(|s| s.to_vec());
    Ok(out)
}

/// Kleene truth value; `Unknown` arises only while a set is partially decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tri {
    False,
    Unknown,
    True,
}

impl Tri {
    fn of(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    fn not(self) -> Tri {
        match self {
            Tri::False => Tri::True,
            Tri::Unknown => Tri::Unknown,
            Tri::True => Tri::False,
        }
    }
}

/// A set value: `inn` are members, vertices in `known - inn` are non-members,
/// the rest is undecided.
#[derive(Clone, Copy, Debug)]
struct Partial {
    inn: VertexSet,
    known: VertexSet,
}

type MemoKey = (usize, Vec<usize>, Vec<u64>);

struct Machine<'a> {
    g: &'a Graph,
    all: VertexSet,
    elems: Vec<usize>,
    sets: Vec<Partial>,
    bound_cache: HashMap<(SetBound, u64), bool>,
    ttw_cache: HashMap<(usize, u64), bool>,
    memo: HashMap<MemoKey, bool>,
    steps: u64,
    budget: u64,
}

impl Machine<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return envelope(format!("evaluation exceeded {} steps", self.budget));
        }
        Ok(())
    }

    fn within(&mut self, b: SetBound, s: VertexSet) -> Result<bool> {
        if let Some(&r) = self.bound_cache.get(&(b, s.0)) {
            return Ok(r);
        }
        let r = params::at_most(b.kind, self.g, s, b.k)?;
        self.bound_cache.insert((b, s.0), r);
        Ok(r)
    }

    fn domain(&self, guards: &[Guard]) -> VertexSet {
        let mut d = self.all;
        for g in guards {
            d &= match *g {
                Guard::InSet(s) => {
                    let p = self.sets[s];
                    p.inn | !p.known
                }
                Guard::Adjacent(e) => self.g.neighbors(self.elems[e]),
                Guard::Equal(e) => VertexSet::singleton(self.elems[e]),
            };
        }
        d & self.all
    }

    fn eval(&mut self, n: &Node) -> Result<Tri> {
        self.tick()?;
        Ok(match n {
            Node::Const(b) => Tri::of(*b),
            Node::Edge(a, b) => Tri::of(self.g.has_edge(self.elems[*a], self.elems[*b])),
            Node::Eq(a, b) => Tri::of(self.elems[*a] == self.elems[*b]),
            Node::Member(a, s) => {
                let (v, p) = (self.elems[*a], self.sets[*s]);
                if p.inn.contains(v) {
                    Tri::True
                } else if p.known.contains(v) {
                    Tri::False
                } else {
                    Tri::Unknown
                }
            }
            Node::Color(c, a) => Tri::of(c.contains(self.elems[*a])),
            Node::CardMod(s, m, r) => {
                let p = self.sets[*s];
                if p.known != self.all {
                    Tri::Unknown
                } else {
                    Tri::of(p.inn.len() as u32 % m == *r)
                }
            }
            Node::Dp(pairs) => {
                let p: Vec<(usize, usize)> = pairs
                    .iter()
                    .map(|&(a, b)| (self.elems[a], self.elems[b]))
                    .collect();
                Tri::of(solve_dp(self.g, &p)?)
            }
            Node::Conn(s, t, del) => {
                let d: VertexSet = del.iter().map(|&e| self.elems[e]).collect();
                Tri::of(solve_conn(self.g, self.elems[*s], self.elems[*t], d)?)
            }
            Node::TtwLe(k, vars) => {
                let x: VertexSet = vars.iter().map(|&e| self.elems[e]).collect();
                Tri::of(match self.ttw_cache.get(&(*k, x.0)) {
                    Some(&b) => b,
                    None => {
                        let b = params::ttw_at_most(self.g, x, *k)?;
                        self.ttw_cache.insert((*k, x.0), b);
                        b
                    }
                })
            }
            Node::Not(a) => self.eval(a)?.not(),
            Node::And(a, b) => match self.eval(a)? {
                Tri::False => Tri::False,
                l => match self.eval(b)? {
                    Tri::False => Tri::False,
                    Tri::True if l == Tri::True => Tri::True,
                    _ => Tri::Unknown,
                },
            },
            Node::Or(a, b) => match self.eval(a)? {
                Tri::True => Tri::True,
                l => match self.eval(b)? {
                    Tri::True => Tri::True,
                    Tri::False if l == Tri::False => Tri::False,
                    _ => Tri::Unknown,
                },
            },
            Node::Implies(a, b) => match self.eval(a)? {
                Tri::False => Tri::True,
                l => match self.eval(b)? {
                    Tri::True => Tri::True,
                    Tri::False if l == Tri::True => Tri::False,
                    _ => Tri::Unknown,
                },
            },
            Node::Iff(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Tri::Unknown, _) | (_, Tri::Unknown) => Tri::Unknown,
                (l, r) => Tri::of(l == r),
            },
            Node::Elem {
                exists,
                guards,
                body,
                ..
            } => {
                let (hit, miss) = if *exists {
                    (Tri::True, Tri::False)
                } else {
                    (Tri::False, Tri::True)
                };
                let mut result = miss;
                for v in self.domain(guards) {
                    self.elems.push(v);
                    let r = self.eval(body);
                    self.elems.pop();
                    match r? {
                        t if t == hit => return Ok(hit),
                        Tri::Unknown => result = Tri::Unknown,
                        _ => {}
                    }
                }
                result
            }
            Node::Set {
                exists,
                bound,
                body,
                id,
                free_elems,
                free_sets,
                ..
            } => {
                if free_sets.iter().any(|&s| self.sets[s].known != self.all) {
                    return Ok(Tri::Unknown);
                }
                let key: MemoKey = (
                    *id,
                    free_elems.iter().map(|&e| self.elems[e]).collect(),
                    free_sets.iter().map(|&s| self.sets[s].inn.0).collect(),
                );
                if let Some(&r) = self.memo.get(&key) {
                    return Ok(Tri::of(r));
                }
                let found = self.search(*exists, *bound, body)?.is_some();
                let r = found == *exists;
                self.memo.insert(key, r);
                Tri::of(r)
            }
        })
    }

    /// First set in lexicographic order, among those within `bound`, on which
    /// `body` is true (`exists`) or false (otherwise).
    fn search(&mut self, exists: bool, bound: SetBound, body: &Node) -> Result<Option<VertexSet>> {
        self.search_from(exists, bound, body, VertexSet::EMPTY, 0)
    }

    /// Visits `inn`, then its extensions by vertices `>= next`; vertices below
    /// `next` are decided. Subtrees whose partial evaluation already rules out
    /// the target value are skipped.
    fn search_from(
        &mut self,
        exists: bool,
        bound: SetBound,
        body: &Node,
        inn: VertexSet,
        next: usize,
    ) -> Result<Option<VertexSet>> {
        self.tick()?;
        let n = self.g.n();
        let target = Tri::of(exists);
        if next < n {
            self.sets.push(Partial {
                inn,
                known: VertexSet::full(next),
            });
            let r = self.eval(body);
            self.sets.pop();
            if r? == target.not() {
                return Ok(None);
            }
        }
        self.sets.push(Partial {
            inn,
            known: self.all,
        });
        let r = self.eval(body);
        self.sets.pop();
        if r? == target {
            return Ok(Some(inn));
        }
        for v in next..n {
            let t = inn.with(v);
            if !self.within(bound, t)? {
                continue;
            }
            if let Some(w) = self.search_from(exists, bound, body, t, v + 1)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    /// Like `eval`, recording values of the leading existential block.
    fn eval_witness(&mut self, n: &Node, out: &mut Vec<Binding>) -> Result<bool> {
        match n {
            Node::Elem {
                exists: true,
                name,
                guards,
                body,
            } => {
                for v in self.domain(guards) {
                    self.elems.push(v);
                    let r = self.eval_witness(body, out);
                    self.elems.pop();
                    if r? {
                        out.insert(
                            0,
                            Binding {
                                var: name.clone(),
                                value: BindingValue::Element(self.g.label(v)),
                            },
                        );
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Node::Set {
                exists: true,
                name,
                bound,
                body,
                ..
            } => {
                let Some(s) = self.search(true, *bound, body)? else {
                    return Ok(false);
                };
                self.sets.push(Partial {
                    inn: s,
                    known: self.all,
                });
                let r = self.eval_witness(body, out);
                self.sets.pop();
                debug_assert!(matches!(r, Ok(true) | Err(_)));
                r?;
                out.insert(
                    0,
                    Binding {
                        var: name.clone(),
                        value: BindingValue::Set(self.g.labels_of(s)),
                    },
                );
                Ok(true)
            }
            _ => Ok(self.eval(n)? == Tri::True),
        }
    }
}

/// Compiled formula bound to one graph, reusable across environments.
pub struct Evaluator<'a> {
    g: &'a Graph,
    root: Node,
    elem_names: Vec<String>,
    set_names: Vec<String>,
    machine: Machine<'a>,
}

impl<'a> Evaluator<'a> {
    /// Compiles `f`; `elements` and `sets` name the free variables that
    /// environments will supply.
    pub fn new(g: &'a Graph, f: &Formula, elements: &[&str], sets: &[&str]) -> Result<Self> {
        let mut c = Compiler {
            g,
            elems: elements.iter().map(|s| s.to_string()).collect(),
            sets: sets.iter().map(|s| s.to_string()).collect(),
            next_id: 0,
        };
        let root = c.compile(f)?;
        Ok(Evaluator {
            g,
            root,
            elem_names: c.elems,
            set_names: c.sets,
            machine: Machine {
                g,
                all: g.vertices(),
                elems: Vec::new(),
                sets: Vec::new(),
                bound_cache: HashMap::new(),
                ttw_cache: HashMap::new(),
                memo: HashMap::new(),
                steps: 0,
                budget: DEFAULT_STEP_BUDGET,
            },
        })
    }

    pub fn set_budget(&mut self, steps: u64) {
        self.machine.budget = steps;
    }

    fn load(&mut self, env: &Environment) -> Result<()> {
        let n = self.g.n();
        self.machine.elems.clear();
        self.machine.sets.clear();
        self.machine.steps = 0;
        for x in &self.elem_names {
            let v = *env
                .elements
                .get(x)
                .ok_or_else(|| Error::Semantic(format!("unassigned free variable '{x}'")))?;
            if v >= n {
                return semantic(format!("variable '{x}' is assigned a vertex outside the graph"));
            }
            self.machine.elems.push(v);
        }
        for x in &self.set_names {
            let s = *env
                .sets
                .get(x)
                .ok_or_else(|| Error::Semantic(format!("unassigned free variable '{x}'")))?;
            if !s.is_subset(self.g.vertices()) {
                return semantic(format!("set '{x}' contains a vertex outside the graph"));
            }
            self.machine.sets.push(Partial {
                inn: s,
                known: self.g.vertices(),
            });
        }
        Ok(())
    }

    pub fn eval(&mut self, env: &Environment) -> Result<bool> {
        self.load(env)?;
        let root = std::mem::replace(&mut self.root, Node::Const(false));
        let r = self.machine.eval(&root);
        self.root = root;
        Ok(r? == Tri::True)
    }

    pub fn eval_with_witness(&mut self, env: &Environment) -> Result<Evaluation> {
        self.load(env)?;
        let root = std::mem::replace(&mut self.root, Node::Const(false));
        let mut witness = Vec::new();
        let r = self.machine.eval_witness(&root, &mut witness);
        self.root = root;
        Ok(Evaluation {
            value: r?,
            witness,
        })
    }

    /// Steps used by the last evaluation.
    pub fn steps(&self) -> u64 {
        self.machine.steps
    }
}

fn free_names(f: &Formula, env: &Environment) -> Result<(Vec<String>, Vec<String>)> {
    let mut elems = Vec::new();
    let mut sets = Vec::new();
    for x in f.free_vars() {
        if crate::logic::is_set_var(&x) {
            if !env.sets.contains_key(&x) {
                return semantic(format!("unassigned free variable '{x}'"));
            }
            sets.push(x);
        } else {
            if !env.elements.contains_key(&x) {
                return semantic(format!("unassigned free variable '{x}'"));
            }
            elems.push(x);
        }
    }
    Ok((elems, sets))
}

/// Truth of `f` on `g` under `env`.
pub fn evaluate(g: &Graph, f: &Formula, env: &Environment) -> Result<bool> {
    Ok(evaluate_with_witness(g, f, env)?.value)
}

/// Truth of `f` and the first witness of its leading existential quantifiers.
pub fn evaluate_with_witness(g: &Graph, f: &Formula, env: &Environment) -> Result<Evaluation> {
    let (elems, sets) = free_names(f, env)?;
    let e: Vec<&str> = elems.iter().map(|s| s.as_str()).collect();
    let s: Vec<&str> = sets.iter().map(|s| s.as_str()).collect();
    Evaluator::new(g, f, &e, &s)?.eval_with_witness(env)
}

#[cfg(test)]
mod tests;
