//! Concrete syntax with as few parentheses as the grammar allows.

use super::ast::Formula;
use std::fmt::{self, Display, Formatter};

/// Binding strength; quantifiers are loosest since their bodies extend maximally.
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Exists(..) | Formula::Forall(..) | Formula::SetExists(..) | Formula::SetForall(..) => 0,
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(_) => 5,
        _ => 6,
    }
}

fn infix_atom(f: &Formula) -> bool {
    matches!(f, Formula::Eq(..) | Formula::Member(..) | Formula::CardMod { .. })
}

fn write_wrapped(out: &mut Formatter<'_>, f: &Formula, wrap: bool) -> fmt::Result {
    if wrap {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

impl Display for Formula {
    fn fmt(&self, out: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(out, "true"),
            Formula::False => write!(out, "false"),
            Formula::Edge(a, b) => write!(out, "E({a},{b})"),
            Formula::Eq(a, b) => write!(out, "{a} = {b}"),
            Formula::Member(x, s) => write!(out, "{x} in {s}"),
            Formula::Color(c, x) => write!(out, "color({c},{x})"),
            Formula::CardMod {
                set,
                modulus,
                residue,
            } => write!(out, "card({set}) % {modulus} = {residue}"),
            Formula::Dp(pairs) => {
                let parts: Vec<String> = pairs.iter().map(|(a, b)| format!("{a},{b}")).collect();
                write!(out, "dp({})", parts.join("; "))
            }
            Formula::Conn { s, t, deleted } => {
                if deleted.is_empty() {
                    write!(out, "conn({s},{t})")
                } else {
                    write!(out, "conn({s},{t} | {})", deleted.join(","))
                }
            }
            Formula::TtwLe { k, vars } => write!(out, "ttwle({k}; {})", vars.join(",")),
            Formula::Not(a) => {
                out.write_str("!")?;
                write_wrapped(out, a, prec(a) < 5 || infix_atom(a))
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                let p = prec(self);
                let right_assoc = matches!(self, Formula::Implies(..));
                let op = match self {
                    Formula::And(..) => " & ",
                    Formula::Or(..) => " | ",
                    Formula::Implies(..) => " -> ",
                    _ => " <-> ",
                };
                let (pa, pb) = (prec(a), prec(b));
                write_wrapped(out, a, pa == 0 || pa < p || (pa == p && right_assoc))?;
                out.write_str(op)?;
                write_wrapped(out, b, pb == 0 || pb < p || (pb == p && !right_assoc))
            }
            Formula::Exists(x, a) => write!(out, "exists {x}. {a}"),
            Formula::Forall(x, a) => write!(out, "forall {x}. {a}"),
            Formula::SetExists(b, x, a) => write!(out, "Exists[{}<={}] {x}. {a}", b.kind, b.k),
            Formula::SetForall(b, x, a) => write!(out, "Forall[{}<={}] {x}. {a}", b.kind, b.k),
        }
    }
}
