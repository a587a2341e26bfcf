use serde::Serialize;

use super::{compute_crossings, crossing_counts, Crossing, DrawnGraph};
use crate::error::DrawingError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Removal {
    pub edge: usize,
    /// Crossings on the edge at the moment it was removed.
    pub count: usize,
}

/// Removes a most-crossed edge (smallest id on ties) until no crossings remain.
pub fn greedy_uncross(d: &DrawnGraph) -> Result<Vec<Removal>, DrawingError> {
    let cr = compute_crossings(d)?;
    Ok(greedy_uncross_with(d.m(), &cr))
}

pub fn greedy_uncross_with(m: usize, crossings: &[Crossing]) -> Vec<Removal> {
    let mut counts = crossing_counts(crossings, m);
    let mut partners: Vec<Vec<usize>> = vec![Vec::new(); m];
    for c in crossings {
        partners[c.edge_a].push(c.edge_b);
        partners[c.edge_b].push(c.edge_a);
    }
    let mut alive = vec![true; m];
    let mut trace = Vec::new();
    loop {
        let mut best: Option<usize> = None;
        for e in 0..m {
            if alive[e] && counts[e] > 0 && best.is_none_or(|b| counts[e] > counts[b]) {
                best = Some(e);
            }
        }
        let Some(e) = best else { break };
        trace.push(Removal { edge: e, count: counts[e] });
        alive[e] = false;
        for &f in &partners[e] {
            if alive[f] {
                counts[f] -= 1;
            }
        }
    }
    trace
}
