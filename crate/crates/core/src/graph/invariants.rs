use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BitSet, GraphSnapshot};
use crate::error::{Error, Result};
use crate::ring::Quat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence {
    /// Ascending.
    pub sorted: Vec<usize>,
    pub min: usize,
    pub max: usize,
}

pub fn degree_sequence(g: &GraphSnapshot) -> DegreeSequence {
    let mut sorted = g.degrees();
    sorted.sort_unstable();
    let min = sorted.first().copied().unwrap_or(0);
    let max = sorted.last().copied().unwrap_or(0);
    DegreeSequence { sorted, min, max }
}

/// Eccentricity of `s`, or the first unreachable vertex.
pub fn eccentricity(g: &GraphSnapshot, s: usize) -> std::result::Result<u32, usize> {
    let v = g.len();
    let mut visited = BitSet::empty(v);
    visited.insert(s);
    let mut seen = 1;
    let mut frontier = vec![s];
    let mut dist = 0;
    while seen < v {
        let mut next = BitSet::empty(v);
        for &u in &frontier {
            next.union_with(g.row(u));
            next.difference_with(visited.words());
            if seen + next.len() == v {
                break;
            }
        }
        if next.is_empty() {
            let unreached = (0..v).find(|&i| !visited.contains(i)).expect("unvisited vertex");
            return Err(unreached);
        }
        dist += 1;
        seen += next.len();
        visited.union_with(next.words());
        frontier = next.iter().collect();
    }
    Ok(dist)
}

/// `(diameter, radius)` from a breadth-first search at every vertex.
pub fn diameter_radius(g: &GraphSnapshot) -> Result<(u32, u32)> {
    let ecc: Vec<std::result::Result<u32, usize>> = (0..g.len()).into_par_iter().map(|s| eccentricity(g, s)).collect();
    let mut diameter = 0;
    let mut radius = u32::MAX;
    for (s, e) in ecc.into_iter().enumerate() {
        match e {
            Ok(d) => {
                diameter = diameter.max(d);
                radius = radius.min(d);
            }
            Err(t) => {
                return Err(Error::Disconnected {
                    from: g.vertex(s),
                    to: g.vertex(t),
                })
            }
        }
    }
    Ok((diameter, radius.min(diameter)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GirthCertificate {
    pub length: usize,
    /// Vertex indices of a shortest cycle.
    pub cycle: Vec<usize>,
}

/// Shortest cycle, or `None` for a forest.
pub fn girth(g: &GraphSnapshot) -> Option<GirthCertificate> {
    if let Some(t) = find_triangle(g) {
        return Some(GirthCertificate {
            length: 3,
            cycle: t.to_vec(),
        });
    }
    (0..g.len())
        .filter_map(|s| shortest_cycle_through(g, s))
        .min_by_key(|c| c.length)
}

fn find_triangle(g: &GraphSnapshot) -> Option<[usize; 3]> {
    for i in 0..g.len() {
        for j in g.neighbors(i).filter(|&j| j > i) {
            let mut common = BitSet::from_words(g.row(i));
            common.intersect_with(g.row(j));
            if let Some(k) = common.first() {
                return Some([i, j, k]);
            }
        }
    }
    None
}

/// Breadth-first search from `s`; the first non-tree edge closes the
/// shortest cycle seen from `s`.
fn shortest_cycle_through(g: &GraphSnapshot, s: usize) -> Option<GirthCertificate> {
    let v = g.len();
    let mut dist = vec![usize::MAX; v];
    let mut parent = vec![usize::MAX; v];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    let mut best: Option<(usize, usize, usize)> = None;
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            } else if parent[u] != w {
                let len = dist[u] + dist[w] + 1;
                if best.is_none_or(|(l, _, _)| len < l) {
                    best = Some((len, u, w));
                }
            }
        }
    }
    let (length, u, w) = best?;
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while x != s {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let mut cycle = path_to_root(u);
    cycle.reverse();
    let mut tail = path_to_root(w);
    // drop the shared ancestry so the walk is a simple cycle
    while cycle.len() > 1 && tail.len() > 1 && cycle[1] == tail[tail.len() - 2] {
        cycle.remove(0);
        tail.pop();
    }
    tail.pop();
    cycle.extend(tail);
    debug_assert!(cycle.len() <= length);
    Some(GirthCertificate {
        length: cycle.len(),
        cycle,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerianCheck {
    pub eulerian: bool,
    pub odd_vertices: usize,
    /// An odd-degree vertex and its degree; `(1,1,1,1)` is preferred.
    pub witness: Option<(String, usize)>,
}

pub fn eulerian_check(g: &GraphSnapshot) -> EulerianCheck {
    let degrees = g.degrees();
    let odd: Vec<usize> = (0..g.len()).filter(|&i| degrees[i] % 2 == 1).collect();
    let preferred = g.index_of(&Quat::from_ints([1, 1, 1, 1], g.modulus()));
    let witness = preferred
        .filter(|i| degrees[*i] % 2 == 1)
        .or_else(|| odd.first().copied())
        .map(|i| (g.vertex(i).to_string(), degrees[i]));
    let connected = g.is_empty() || eccentricity(g, 0).is_ok();
    EulerianCheck {
        eulerian: connected && odd.is_empty(),
        odd_vertices: odd.len(),
        witness,
    }
}

/// Five mutually adjacent vertices, searching unit vertices first.
pub fn find_k5(g: &GraphSnapshot) -> Option<[usize; 5]> {
    let units = g.unit_indices();
    let rest = (0..g.len()).filter(|i| !units.contains(i));
    let order: Vec<usize> = units.iter().copied().chain(rest).collect();

    fn extend(g: &GraphSnapshot, order: &[usize], chosen: &mut Vec<usize>, from: usize) -> bool {
        if chosen.len() == 5 {
            return true;
        }
        for (pos, &v) in order.iter().enumerate().skip(from) {
            if chosen.iter().all(|&c| g.adjacent(c, v)) {
                chosen.push(v);
                if extend(g, order, chosen, pos + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    let mut chosen = Vec::with_capacity(5);
    extend(g, &order, &mut chosen, 0).then(|| [chosen[0], chosen[1], chosen[2], chosen[3], chosen[4]])
}

pub fn is_clique(g: &GraphSnapshot, vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(x, &i)| vertices[x + 1..].iter().all(|&j| g.adjacent(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::ring::Modulus;

    #[test]
    fn n1_invariants() {
        let g = build_graph(Modulus::new(1).unwrap()).unwrap();
        let d = degree_sequence(&g);
        assert_eq!((d.min, d.max), (7, 13));
        assert_eq!(diameter_radius(&g).unwrap(), (2, 1));
        assert_eq!(girth(&g).unwrap().length, 3);
        let e = eulerian_check(&g);
        assert!(!e.eulerian);
        assert_eq!(e.witness, Some(("1,1,1,1".to_string(), 7)));
        let k5 = find_k5(&g).unwrap();
        assert!(is_clique(&g, &k5));
    }

    fn cycle_graph(len: usize, chords: &[(usize, usize)]) -> GraphSnapshot {
        let mut edges: Vec<(usize, usize)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        edges.extend_from_slice(chords);
        GraphSnapshot::from_edges(Modulus::new(2).unwrap(), len, &edges)
    }

    #[test]
    fn girth_without_triangles() {
        assert_eq!(girth(&cycle_graph(5, &[])).unwrap().length, 5);
        let g = cycle_graph(8, &[(0, 4)]);
        let c = girth(&g).unwrap();
        assert_eq!(c.length, 5);
        assert_eq!(c.cycle.len(), 5);
        for w in 0..c.cycle.len() {
            assert!(g.adjacent(c.cycle[w], c.cycle[(w + 1) % c.cycle.len()]));
        }
        let path = GraphSnapshot::from_edges(Modulus::new(2).unwrap(), 4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(girth(&path).is_none());
        assert_eq!(diameter_radius(&path).unwrap(), (3, 2));
    }

    #[test]
    fn disconnected_is_reported() {
        let g = GraphSnapshot::from_edges(Modulus::new(2).unwrap(), 4, &[(0, 1), (2, 3)]);
        assert!(matches!(diameter_radius(&g), Err(Error::Disconnected { .. })));
        assert!(!eulerian_check(&g).eulerian);
        assert!(find_k5(&g).is_none());
    }
}
