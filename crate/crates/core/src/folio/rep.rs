use super::{pair_bit, signature, CanonicalForm, FolioProbe, CANON_MAX_FREE, CANON_MAX_VERTICES};
use crate::error::Result;
use crate::eval::{ext_battery_type, Battery};
use crate::graph::BoundariedGraph;
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Largest candidate size tried by [`find_representative`].
pub const REP_MAX_VERTICES: usize = CANON_MAX_VERTICES;
/// Largest number of raw labelled candidates generated for one size.
pub const REP_RAW_BUDGET: u64 = 1 << 22;

/// Smallest compatible graph, then least in canonical order, whose extended
/// `level`-folio (and extended battery type, if a battery is given) equals
/// that of `bg`. `None` if no candidate with at most `max_size` vertices
/// qualifies or the candidate budget runs out first.
pub fn find_representative(
    bg: &BoundariedGraph,
    level: usize,
    max_size: usize,
    battery: Option<&Battery>,
) -> Result<Option<BoundariedGraph>> {
    search(bg, level, max_size, battery, false)
}

/// As [`find_representative`]; with `same_connectivity` the candidate's
/// non-boundary part must be connected exactly when that of `bg` is.
pub(crate) fn search(
    bg: &BoundariedGraph,
    level: usize,
    max_size: usize,
    battery: Option<&Battery>,
    same_connectivity: bool,
) -> Result<Option<BoundariedGraph>> {
    let probe = FolioProbe::new(bg, level)?;
    let target = match battery {
        Some(b) => Some(ext_battery_type(bg, b)?),
        None => None,
    };
    let free_connected = |g: &BoundariedGraph| g.graph.is_connected_set(g.graph.vertices() - g.boundary_set());
    let want_connected = free_connected(bg);
    let sig = signature(bg);
    let t = sig.t;
    let base: Vec<(usize, usize)> = (0..t)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| sig.edges >> pair_bit(i, j) & 1 == 1)
        .collect();
    for n in t..=max_size.min(REP_MAX_VERTICES) {
        let m = n - t;
        if m > CANON_MAX_FREE {
            break;
        }
        let pairs: Vec<(usize, usize)> = (t..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        let raw_bits = pairs.len() + m;
        if raw_bits >= 63 || 1u64 << raw_bits > REP_RAW_BUDGET {
            return Ok(None);
        }
        let forms: BTreeSet<CanonicalForm> = (0u64..1 << pairs.len())
            .into_par_iter()
            .flat_map_iter(|mask| {
                let mut edges = base.clone();
                edges.extend(
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &p)| p),
                );
                (0u64..1 << m)
                    .map(move |fa| CanonicalForm::from_local(n, t, sig.annot | fa << t, &edges))
            })
            .collect();
        let forms: Vec<CanonicalForm> = forms.into_iter().collect();
        let found = forms.par_iter().find_map_first(|form| {
            let cand = form.to_boundaried();
            if same_connectivity && free_connected(&cand) != want_connected {
                return None;
            }
            match probe.matches(&cand) {
                Ok(true) => {}
                Ok(false) => return None,
                Err(e) => return Some(Err(e)),
            }
            if let (Some(b), Some(want)) = (battery, &target) {
                match ext_battery_type(&cand, b) {
                    Ok(ty) if &ty == want => {}
                    Ok(_) => return None,
                    Err(e) => return Some(Err(e)),
                }
            }
            Some(Ok(cand))
        });
        if let Some(res) = found {
            return res.map(Some);
        }
    }
    Ok(None)
}
