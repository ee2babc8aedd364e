//! Batteries: fixed lists of closed formulas whose truth vector stands in for
//! the type of a boundaried graph.

use super::{evaluate, Environment};
use crate::error::{envelope, semantic, Result};
use crate::graph::BoundariedGraph;
use crate::logic::{parse_formula, Formula};
use rayon::prelude::*;

/// Largest boundary for which all completions are enumerated.
pub const MAX_EXT_BOUNDARY: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Battery {
    pub formulas: Vec<Formula>,
}

impl Battery {
    pub fn new(formulas: Vec<Formula>) -> Result<Self> {
        for f in &formulas {
            if let Some(x) = f.free_vars().into_iter().next() {
                return semantic(format!("battery formula '{f}' has free variable '{x}'"));
            }
        }
        Ok(Battery { formulas })
    }

    /// One closed formula per non-empty line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut formulas = Vec::new();
        for line in text.lines() {
            let content = line.split('#').next().unwrap_or("").trim();
            if !content.is_empty() {
                formulas.push(parse_formula(content)?);
            }
        }
        Battery::new(formulas)
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }
}

/// Truth vector of the battery on `G` with boundary and annotation colors.
pub fn battery_type(bg: &BoundariedGraph, battery: &Battery) -> Result<Vec<bool>> {
    let g = bg.colored_graph();
    let env = Environment::new();
    battery
        .formulas
        .iter()
        .map(|f| evaluate(&g, f, &env))
        .collect()
}

/// Truth vectors on every completion `G^I`, with `I` ranging over sets of
/// boundary label pairs in increasing bitmask order over
/// [`BoundariedGraph::label_pairs`].
pub fn ext_battery_type(
    bg: &BoundariedGraph,
    battery: &Battery,
) -> Result<Vec<(Vec<(usize, usize)>, Vec<bool>)>> {
    if bg.boundary.len() > MAX_EXT_BOUNDARY {
        return envelope(format!(
            "extended types are limited to boundaries of size {MAX_EXT_BOUNDARY}"
        ));
    }
    let pairs = bg.label_pairs();
    (0u32..1 << pairs.len())
        .into_par_iter()
        .map(|mask| {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let bits = battery_type(&bg.with_boundary_edges(&chosen), battery)?;
            Ok((chosen, bits))
        })
        .collect()
}
