//! Formulas: syntax tree, parser, printer, prenex form, ranks and fragments.

mod ast;
mod parser;
mod prenex;
mod printer;

pub use ast::{is_set_var, Formula, SetBound};
pub use parser::{parse_formula, parse_formula_with_free};
pub use prenex::{is_prenex, to_prenex};
pub(crate) use prenex::Fresh;

use crate::params::ParamKind;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// Largest modulus accepted without a warning.
pub const MAX_QUIET_MODULUS: u32 = 6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Ranks {
    /// Length of the quantifier prefix of the prenex form.
    pub quantifier_rank: usize,
    /// Largest number of pairs in a `dp` atom.
    pub dp_rank: usize,
    /// Largest bound on a set quantifier.
    pub p_rank: usize,
}

/// Syntactic fragment of a formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FragmentTag {
    Fo,
    FoConn,
    FoDp,
    /// Parameter-bounded set quantifiers or modular counting; the kinds used.
    Cmso(Vec<ParamKind>),
    CmsoDp(Vec<ParamKind>),
}

impl fmt::Display for FragmentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kinds = |ks: &[ParamKind]| {
            if ks.is_empty() {
                "none".to_string()
            } else {
                ks.iter().map(|k| k.name()).collect::<Vec<_>>().join(",")
            }
        };
        match self {
            FragmentTag::Fo => write!(f, "FO"),
            FragmentTag::FoConn => write!(f, "FO+conn"),
            FragmentTag::FoDp => write!(f, "FO+dp"),
            FragmentTag::Cmso(ks) => write!(f, "CMSO/{}", kinds(ks)),
            FragmentTag::CmsoDp(ks) => write!(f, "CMSO/{}+dp", kinds(ks)),
        }
    }
}

impl Serialize for FragmentTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn max_over(f: &Formula, measure: &dyn Fn(&Formula) -> usize) -> usize {
    let mut best = 0;
    f.visit(&mut |g| best = best.max(measure(g)));
    best
}

pub fn ranks(f: &Formula) -> Ranks {
    let p = to_prenex(f);
    let mut quantifier_rank = 0;
    let mut cur = &p;
    while cur.is_quantifier() {
        quantifier_rank += 1;
        cur = cur.children()[0];
    }
    Ranks {
        quantifier_rank,
        dp_rank: max_over(f, &|g| match g {
            Formula::Dp(pairs) => pairs.len(),
            _ => 0,
        }),
        p_rank: max_over(f, &|g| match g {
            Formula::SetExists(b, ..) | Formula::SetForall(b, ..) => b.k,
            _ => 0,
        }),
    }
}

pub fn fragment_of(f: &Formula) -> FragmentTag {
    let mut kinds = BTreeSet::new();
    let (mut card, mut dp, mut conn, mut ttwle) = (false, false, false, false);
    f.visit(&mut |g| match g {
        Formula::SetExists(b, ..) | Formula::SetForall(b, ..) => {
            kinds.insert(b.kind.name());
        }
        Formula::CardMod { .. } => card = true,
        Formula::Dp(_) => dp = true,
        Formula::Conn { .. } => conn = true,
        Formula::TtwLe { .. } => ttwle = true,
        _ => {}
    });
    if !kinds.is_empty() || card {
        let ks: Vec<ParamKind> = ParamKind::ALL
            .into_iter()
            .filter(|k| kinds.contains(k.name()))
            .collect();
        if dp || conn {
            FragmentTag::CmsoDp(ks)
        } else {
            FragmentTag::Cmso(ks)
        }
    } else if dp || ttwle {
        FragmentTag::FoDp
    } else if conn {
        FragmentTag::FoConn
    } else {
        FragmentTag::Fo
    }
}

/// Length of the printed formula without whitespace; numbers count by digits.
pub fn encoding_length(f: &Formula) -> usize {
    f.to_string().chars().filter(|c| !c.is_whitespace()).count()
}

/// Non-fatal remarks about a parsed formula.
pub fn warnings(f: &Formula) -> Vec<String> {
    let mut out = Vec::new();
    f.visit(&mut |g| {
        if let Formula::CardMod { set, modulus, .. } = g {
            if *modulus > MAX_QUIET_MODULUS {
                out.push(format!(
                    "modulus {modulus} in card({set}) exceeds {MAX_QUIET_MODULUS}"
                ));
            }
        }
    });
    out
}

#[cfg(test)]
mod tests;
