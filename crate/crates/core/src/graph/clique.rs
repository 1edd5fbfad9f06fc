//! Clique number, chromatic number and perfection.
//!
//! Exact routines: a bitset branch-and-bound maximum clique search with a
//! greedy-colouring bound (any size), and backtracking colouring on graphs
//! of at most 64 vertices. For larger graphs only a candidate clique and a
//! greedy colouring are produced.

use serde::{Deserialize, Serialize};

use super::{BitSet, GraphSnapshot};
use crate::error::{Error, Result};
use crate::families::clique_family;
use crate::ring::{classify, ElementClass};

/// Greedy colour classes of `p`: vertices in colour order, with the colour
/// number (1-based) of each.
fn colour_sort(g: &GraphSnapshot, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut uncoloured = p.clone();
    let mut order = Vec::with_capacity(p.len());
    let mut colours = Vec::with_capacity(p.len());
    let mut k = 0;
    while !uncoloured.is_empty() {
        k += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(g.row(v));
            uncoloured.remove(v);
            order.push(v);
            colours.push(k);
        }
    }
    (order, colours)
}

fn expand(g: &GraphSnapshot, r: &mut Vec<usize>, mut p: BitSet, best: &mut Vec<usize>) {
    let (order, colours) = colour_sort(g, &p);
    for idx in (0..order.len()).rev() {
        if r.len() + colours[idx] <= best.len() {
            return;
        }
        let v = order[idx];
        r.push(v);
        let mut next = p.clone();
        next.intersect_with(g.row(v));
        if next.is_empty() {
            if r.len() > best.len() {
                *best = r.clone();
            }
        } else {
            expand(g, r, next, best);
        }
        r.pop();
        p.remove(v);
    }
}

/// A maximum clique among `candidates`.
pub fn max_clique_within(g: &GraphSnapshot, candidates: &BitSet) -> Vec<usize> {
    let mut best = Vec::new();
    expand(g, &mut Vec::new(), candidates.clone(), &mut best);
    best.sort_unstable();
    best
}

pub fn max_clique(g: &GraphSnapshot) -> Vec<usize> {
    max_clique_within(g, &BitSet::full(g.len()))
}

/// Neighbourhoods as single-word masks, for graphs of at most 64 vertices.
#[derive(Clone, Debug)]
pub struct SmallGraph {
    adj: Vec<u64>,
}

impl SmallGraph {
    pub fn from_snapshot(g: &GraphSnapshot) -> Result<Self> {
        if g.len() > 64 {
            return Err(Error::Unsupported(format!(
                "exact colouring is limited to 64 vertices, graph has {}",
                g.len()
            )));
        }
        Ok(Self {
            adj: (0..g.len()).map(|i| g.row(i)[0]).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Clique number of the subgraph induced by `mask`.
    pub fn clique_number(&self, mask: u64) -> u32 {
        fn go(adj: &[u64], r: u32, p: u64, best: &mut u32) {
            if p == 0 {
                *best = (*best).max(r);
                return;
            }
            if r + p.count_ones() <= *best {
                return;
            }
            let v = p.trailing_zeros() as usize;
            go(adj, r + 1, p & adj[v], best);
            go(adj, r, p & !(1 << v), best);
        }
        let mut best = 0;
        go(&self.adj, 0, mask, &mut best);
        best
    }

    /// Chromatic number of the subgraph induced by `mask`.
    pub fn chromatic_number(&self, mask: u64) -> u32 {
        if mask == 0 {
            return 0;
        }
        let mut verts: Vec<usize> = (0..64).filter(|&i| mask >> i & 1 == 1).collect();
        verts.sort_by_key(|&v| std::cmp::Reverse((self.adj[v] & mask).count_ones()));
        let lower = self.clique_number(mask);
        (lower..=verts.len() as u32)
            .find(|&k| self.colourable(&verts, mask, k))
            .expect("n colours always suffice")
    }

    fn colourable(&self, verts: &[usize], mask: u64, k: u32) -> bool {
        fn go(adj: &[u64], verts: &[usize], mask: u64, classes: &mut Vec<u64>, k: u32, i: usize) -> bool {
            if i == verts.len() {
                return true;
            }
            let v = verts[i];
            for c in 0..classes.len() {
                if classes[c] & adj[v] & mask == 0 {
                    classes[c] |= 1 << v;
                    if go(adj, verts, mask, classes, k, i + 1) {
                        return true;
                    }
                    classes[c] &= !(1 << v);
                }
            }
            // opening a new class is symmetric, so only try it once
            if (classes.len() as u32) < k {
                classes.push(1 << v);
                if go(adj, verts, mask, classes, k, i + 1) {
                    return true;
                }
                classes.pop();
            }
            false
        }
        go(&self.adj, verts, mask, &mut Vec::new(), k, 0)
    }

    /// Checks `chi = omega` on every induced subgraph; returns the first
    /// failing vertex mask, if any.
    pub fn perfection_counterexample(&self) -> Option<u64> {
        let n = self.len();
        assert!(n < 32, "perfection check enumerates 2^n subsets");
        (1u64..1 << n).find(|&mask| self.clique_number(mask) != self.chromatic_number(mask))
    }
}

/// Largest-degree-first greedy colouring; returns a colour per vertex.
pub fn greedy_colouring(g: &GraphSnapshot) -> Vec<usize> {
    let degrees = g.degrees();
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degrees[v]), v));
    let mut classes: Vec<BitSet> = Vec::new();
    let mut colour = vec![usize::MAX; g.len()];
    for v in order {
        let c = match classes.iter().position(|class| !class.intersects(g.row(v))) {
            Some(c) => c,
            None => {
                classes.push(BitSet::empty(g.len()));
                classes.len() - 1
            }
        };
        classes[c].insert(v);
        colour[v] = c;
    }
    colour
}

pub fn is_proper_colouring(g: &GraphSnapshot, colour: &[usize]) -> bool {
    (0..g.len()).all(|v| g.neighbors(v).all(|w| colour[v] != colour[w]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCandidate {
    pub size: usize,
    pub is_clique: bool,
    pub non_adjacent_pairs: usize,
    pub first_non_adjacent: Option<(String, String)>,
}

/// Clique family plus every unit vertex, checked pair by pair.
pub fn family_clique_candidate(g: &GraphSnapshot) -> Result<(Vec<usize>, CliqueCandidate)> {
    let mut members: Vec<usize> = clique_family(g.modulus())?
        .iter()
        .map(|a| g.index_of(a).expect("family members are vertices"))
        .collect();
    members.extend((0..g.len()).filter(|&i| classify(&g.vertex(i)) == ElementClass::Unit));
    members.sort_unstable();
    members.dedup();
    let summary = check_clique(g, &members);
    Ok((members, summary))
}

pub fn check_clique(g: &GraphSnapshot, members: &[usize]) -> CliqueCandidate {
    let mut non_adjacent = 0;
    let mut first = None;
    for (x, &i) in members.iter().enumerate() {
        for &j in &members[x + 1..] {
            if !g.adjacent(i, j) {
                non_adjacent += 1;
                first.get_or_insert((g.vertex(i).to_string(), g.vertex(j).to_string()));
            }
        }
    }
    CliqueCandidate {
        size: members.len(),
        is_clique: non_adjacent == 0,
        non_adjacent_pairs: non_adjacent,
        first_non_adjacent: first,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueColouring {
    pub omega_exact: Option<usize>,
    pub chi_exact: Option<usize>,
    pub perfect: Option<bool>,
    pub family_candidate: CliqueCandidate,
    pub greedy_colours: usize,
}

/// Exact values when the graph has at most 64 vertices (`n = 1`);
/// otherwise the family candidate and a greedy colouring.
pub fn clique_and_colouring(g: &GraphSnapshot) -> Result<CliqueColouring> {
    let (_, family_candidate) = family_clique_candidate(g)?;
    let colours = greedy_colouring(g);
    debug_assert!(is_proper_colouring(g, &colours));
    let greedy_colours = colours.iter().max().map_or(0, |c| c + 1);
    let mut out = CliqueColouring {
        omega_exact: None,
        chi_exact: None,
        perfect: None,
        family_candidate,
        greedy_colours,
    };
    if g.len() <= 64 {
        let small = SmallGraph::from_snapshot(g)?;
        let all = if g.len() == 64 { u64::MAX } else { (1u64 << g.len()) - 1 };
        let omega = max_clique(g).len();
        debug_assert_eq!(omega as u32, small.clique_number(all));
        out.omega_exact = Some(omega);
        out.chi_exact = Some(small.chromatic_number(all) as usize);
        if g.len() < 32 {
            out.perfect = Some(small.perfection_counterexample().is_none());
        }
    }
    Ok(out)
}
