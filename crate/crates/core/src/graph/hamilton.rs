//! Hamiltonian cycle built from the vertex partition
//! `V1` (all-even zero-divisors), `V2` (other zero-divisors), `V3` (units).
//!
//! For `n > 1` the cycle is: a path through `V2`, a step into `V3`, a path
//! alternating `V3`/`V1` that absorbs all of `V1`, the remaining units, and
//! the closing edge back to the start of the `V2` path. For `n = 1` the
//! cycle leaves `(1,1,1,1)` through one unit, sweeps every other vertex and
//! returns through a second unit. Every edge is checked; a segment whose
//! literal ordering breaks is rebuilt with a rotation-extension path search
//! and the repair is recorded.

use serde::{Deserialize, Serialize};

use super::{BitSet, GraphSnapshot};
use crate::error::{Error, Result};
use crate::families::FamilyId;
use crate::ring::Quat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianCycle {
    /// Vertex indices; the last one is adjacent to the first.
    pub order: Vec<usize>,
    /// Places where the literal construction failed and was repaired.
    pub deviations: Vec<String>,
}

pub fn hamiltonian_cycle(g: &GraphSnapshot) -> Result<HamiltonianCycle> {
    let by = |id: FamilyId| -> Vec<usize> { (0..g.len()).filter(|&i| id.contains(&g.vertex(i))).collect() };
    let (v1, v2, v3) = (by(FamilyId::V1), by(FamilyId::V2), by(FamilyId::V3));
    if v3.len() < 2 {
        return Err(Error::Unsupported("cycle construction needs two unit vertices".into()));
    }
    let mut deviations = Vec::new();

    let order = if g.modulus().exponent() == 1 {
        let ones = g
            .index_of(&Quat::from_ints([1, 1, 1, 1], g.modulus()))
            .expect("(1,1,1,1) is a vertex");
        let (u, v) = (v3[0], v3[v3.len() - 1]);
        let middle: Vec<usize> = (0..g.len()).filter(|&i| i != ones && i != u && i != v).collect();
        let middle = checked_segment(g, middle, Some(u), Some(v), "middle sweep", &mut deviations)?;
        let mut order = vec![ones, u];
        order.extend(middle);
        order.push(v);
        order
    } else {
        if v3.len() <= v1.len() {
            return Err(Error::Unsupported("fewer units than all-even vertices".into()));
        }
        let first_unit = v3[0];
        let last_unit = v3[v3.len() - 1];
        let h1 = checked_segment(g, v2, Some(last_unit), Some(first_unit), "V2 path", &mut deviations)?;
        let mut order = h1;
        for (u, w) in v3.iter().zip(&v1) {
            order.push(*u);
            order.push(*w);
        }
        order.extend_from_slice(&v3[v1.len()..]);
        order
    };

    validate_cycle(g, &order)?;
    Ok(HamiltonianCycle { order, deviations })
}

/// Keeps `segment` when its internal edges and the edges to `before` /
/// `after` exist; otherwise searches for a replacement path over the same
/// vertices.
fn checked_segment(
    g: &GraphSnapshot,
    segment: Vec<usize>,
    before: Option<usize>,
    after: Option<usize>,
    label: &str,
    deviations: &mut Vec<String>,
) -> Result<Vec<usize>> {
    let walk: Vec<usize> = before.into_iter().chain(segment.iter().copied()).chain(after).collect();
    let Some(broken) = walk.windows(2).find(|w| !g.adjacent(w[0], w[1])) else {
        return Ok(segment);
    };
    let (a, b) = (g.vertex(broken[0]), g.vertex(broken[1]));
    let path = hamiltonian_path(g, &segment, before, after)?;
    deviations.push(format!(
        "{label}: lexicographic order breaks at ({a}) - ({b}); rebuilt by path search"
    ));
    Ok(path)
}

/// Hamiltonian path through `set` by greedy extension with rotations. When
/// given, the first vertex must be adjacent to `before` and the last to `after`.
pub fn hamiltonian_path(
    g: &GraphSnapshot,
    set: &[usize],
    before: Option<usize>,
    after: Option<usize>,
) -> Result<Vec<usize>> {
    if set.is_empty() {
        return Ok(vec![]);
    }
    let mut members = BitSet::empty(g.len());
    for &v in set {
        members.insert(v);
    }
    let ok_start = |v: usize| before.is_none_or(|b| g.adjacent(b, v));
    let ok_end = |v: usize| after.is_none_or(|a| g.adjacent(a, v));

    let budget = 20 * set.len() + 100;
    for &start in set.iter().filter(|&&s| ok_start(s)) {
        let mut path = vec![start];
        let mut on_path = BitSet::empty(g.len());
        on_path.insert(start);
        let mut rotations = 0;

        let free_neighbor = |v: usize, on_path: &BitSet| {
            let mut cand = BitSet::from_words(g.row(v));
            cand.intersect_with(members.words());
            cand.difference_with(on_path.words());
            cand.first()
        };

        while rotations <= budget {
            let end = *path.last().expect("non-empty");
            if path.len() == set.len() {
                if ok_end(end) {
                    return Ok(path);
                }
                // rotate to find an endpoint adjacent to `after`
            } else if let Some(next) = free_neighbor(end, &on_path) {
                path.push(next);
                on_path.insert(next);
                continue;
            }
            // Posa rotation: end ~ path[i] lets path[i+1] become the new end.
            let pivots: Vec<usize> = (0..path.len().saturating_sub(2))
                .filter(|&i| g.adjacent(end, path[i]))
                .collect();
            if pivots.is_empty() {
                break;
            }
            let pick = pivots
                .iter()
                .copied()
                .find(|&i| {
                    let cand = path[i + 1];
                    if path.len() == set.len() {
                        ok_end(cand)
                    } else {
                        free_neighbor(cand, &on_path).is_some()
                    }
                })
                .unwrap_or(pivots[rotations % pivots.len()]);
            path[pick + 1..].reverse();
            rotations += 1;
        }
    }
    Err(Error::PathSearchFailed(set.len()))
}

/// Checks length, that every vertex appears once, and every edge including
/// the closing one.
pub fn validate_cycle(g: &GraphSnapshot, order: &[usize]) -> Result<()> {
    if order.len() != g.len() {
        return Err(Error::InvalidCycle(format!(
            "cycle has {} vertices, graph has {}",
            order.len(),
            g.len()
        )));
    }
    let mut seen = BitSet::empty(g.len());
    for &v in order {
        if v >= g.len() || seen.contains(v) {
            return Err(Error::InvalidCycle(format!(
                "vertex index {v} repeated or out of range"
            )));
        }
        seen.insert(v);
    }
    for (x, &a) in order.iter().enumerate() {
        let b = order[(x + 1) % order.len()];
        if !g.adjacent(a, b) {
            return Err(Error::InvalidCycle(format!(
                "({}) and ({}) are not adjacent",
                g.vertex(a),
                g.vertex(b)
            )));
        }
    }
    Ok(())
}
