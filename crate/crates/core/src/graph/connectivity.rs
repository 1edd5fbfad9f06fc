//! Vertex and edge connectivity by max-flow (Menger), for small snapshots.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{BitSet, GraphSnapshot};
use crate::error::{Error, Result};

/// Largest graph the exact routines accept.
pub const EXACT_LIMIT: usize = 64;

const INF: u32 = u32::MAX / 2;

/// Dense residual network; plenty for a few dozen nodes.
struct FlowNetwork {
    cap: Vec<Vec<u32>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        Self {
            cap: vec![vec![0; nodes]; nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, c: u32) {
        self.cap[from][to] = self.cap[from][to].saturating_add(c).min(INF);
    }

    /// Edmonds-Karp; stops early once `limit` units have been pushed.
    fn max_flow(mut self, s: usize, t: usize, limit: u32) -> u32 {
        let nodes = self.cap.len();
        let mut flow = 0;
        while flow < limit {
            let mut prev = vec![usize::MAX; nodes];
            prev[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for (v, p) in prev.iter_mut().enumerate() {
                    if *p == usize::MAX && self.cap[u][v] > 0 {
                        *p = u;
                        queue.push_back(v);
                    }
                }
            }
            if prev[t] == usize::MAX {
                break;
            }
            let mut push = INF;
            let mut v = t;
            while v != s {
                push = push.min(self.cap[prev[v]][v]);
                v = prev[v];
            }
            let mut v = t;
            while v != s {
                let u = prev[v];
                self.cap[u][v] -= push;
                self.cap[v][u] = self.cap[v][u].saturating_add(push);
                v = u;
            }
            flow += push;
        }
        flow
    }
}

fn local_vertex_connectivity(g: &GraphSnapshot, s: usize, t: usize) -> u32 {
    let v = g.len();
    // node 2x is x_in, 2x + 1 is x_out
    let mut net = FlowNetwork::new(2 * v);
    for x in 0..v {
        let c = if x == s || x == t { INF } else { 1 };
        net.add(2 * x, 2 * x + 1, c);
        for y in g.neighbors(x) {
            net.add(2 * x + 1, 2 * y, INF);
        }
    }
    net.max_flow(2 * s + 1, 2 * t, v as u32)
}

fn local_edge_connectivity(g: &GraphSnapshot, s: usize, t: usize) -> u32 {
    let mut net = FlowNetwork::new(g.len());
    for x in 0..g.len() {
        for y in g.neighbors(x) {
            net.add(x, y, 1);
        }
    }
    net.max_flow(s, t, g.len() as u32)
}

/// Minimum over non-adjacent pairs of the number of internally disjoint
/// paths; `|V| - 1` for complete graphs.
pub fn vertex_connectivity(g: &GraphSnapshot) -> Result<usize> {
    check_size(g)?;
    let mut best = g.len().saturating_sub(1);
    for s in 0..g.len() {
        for t in s + 1..g.len() {
            if !g.adjacent(s, t) {
                best = best.min(local_vertex_connectivity(g, s, t) as usize);
            }
        }
    }
    Ok(best)
}

/// Minimum over `t` of the edge-disjoint path count between vertex 0 and `t`.
pub fn edge_connectivity(g: &GraphSnapshot) -> Result<usize> {
    check_size(g)?;
    Ok((1..g.len())
        .map(|t| local_edge_connectivity(g, 0, t) as usize)
        .min()
        .unwrap_or(0))
}

fn check_size(g: &GraphSnapshot) -> Result<()> {
    if g.len() > EXACT_LIMIT {
        return Err(Error::Unsupported(format!(
            "exact connectivity is limited to {EXACT_LIMIT} vertices, graph has {}",
            g.len()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    pub kappa: usize,
    pub lambda: usize,
    pub delta: usize,
}

/// Exact `kappa` and `lambda`; only supported for `n = 1`.
pub fn connectivity(g: &GraphSnapshot) -> Result<Connectivity> {
    if g.modulus().exponent() != 1 {
        return Err(Error::Unsupported(format!(
            "exact connectivity is computed only for n = 1, got n = {}",
            g.modulus().exponent()
        )));
    }
    let delta = g.degrees().into_iter().min().unwrap_or(0);
    Ok(Connectivity {
        kappa: vertex_connectivity(g)?,
        lambda: edge_connectivity(g)?,
        delta,
    })
}

/// Upper bounds available without max-flow on large graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityBounds {
    /// Size of a vertex set whose removal disconnects the graph, if found;
    /// bounds `kappa` from above.
    pub separator_size: Option<usize>,
    /// Minimum degree; bounds `lambda` from above.
    pub delta: usize,
    /// Number of unit vertices.
    pub units: usize,
}

impl ConnectivityBounds {
    /// `kappa <= |S| <= delta` with `lambda <= delta` always.
    pub fn consistent(&self) -> bool {
        self.separator_size.is_some_and(|s| s <= self.delta)
    }
}

/// Tries the unit vertices as a separator.
pub fn connectivity_bounds(g: &GraphSnapshot) -> ConnectivityBounds {
    let units = g.unit_indices();
    let mut remaining = BitSet::full(g.len());
    for &u in &units {
        remaining.remove(u);
    }
    let separator_size = (!is_connected_within(g, &remaining)).then_some(units.len());
    let delta = g.degrees().into_iter().min().unwrap_or(0);
    ConnectivityBounds {
        separator_size,
        delta,
        units: units.len(),
    }
}

fn is_connected_within(g: &GraphSnapshot, set: &BitSet) -> bool {
    let Some(start) = set.first() else { return true };
    let mut seen = BitSet::empty(g.len());
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        let mut next = BitSet::from_words(g.row(u));
        next.intersect_with(set.words());
        next.difference_with(seen.words());
        for w in next.iter() {
            seen.insert(w);
            stack.push(w);
        }
    }
    seen.len() == set.len()
}
