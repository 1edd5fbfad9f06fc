//! Explicit snapshots of the non-zero divisor graph and everything computed
//! from them.

mod bitmatrix;
pub mod clique;
pub mod connectivity;
pub mod embed;
pub mod export;
pub mod hamilton;
pub mod invariants;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use bitmatrix::{BitMatrix, BitSet};

use crate::adjacency::adjacent_brute;
use crate::error::{Error, Result};
use crate::families::enumerate_vertices;
use crate::ring::{classify, valuation, ElementClass, Modulus, Quat};

/// Largest `n` built by default.
pub const SNAPSHOT_CAP: u32 = 3;
/// Largest `n` built when explicitly forced (about 512 MB of adjacency).
pub const SNAPSHOT_FORCED_CAP: u32 = 4;

const AUDIT_SAMPLES: usize = 20_000;

#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    /// Permit `n = 4`.
    pub allow_large: bool,
}

/// Vertex-indexed adjacency of the graph for one modulus.
///
/// Vertices are stored in lexicographic order; `u ~ v` iff `uv != 0` or
/// `vu != 0`.
#[derive(Clone, Debug)]
pub struct GraphSnapshot {
    modulus: Modulus,
    vertices: Vec<Quat>,
    index: Vec<u32>,
    adj: BitMatrix,
}

pub fn build_graph(m: Modulus) -> Result<GraphSnapshot> {
    build_graph_with(m, BuildOptions::default())
}

pub fn build_graph_with(m: Modulus, opts: BuildOptions) -> Result<GraphSnapshot> {
    let cap = if opts.allow_large {
        SNAPSHOT_FORCED_CAP
    } else {
        SNAPSHOT_CAP
    };
    m.ensure_at_most(cap, "explicit graph snapshots")?;
    let n = m.exponent();
    let vertices = enumerate_vertices(m)?;

    let mut index = vec![u32::MAX; m.ring_size() as usize];
    for (i, v) in vertices.iter().enumerate() {
        index[v.code() as usize] = i as u32;
    }

    // (k, alpha) per vertex, so each pair costs one exact product.
    let normalized: Vec<(u32, [i64; 4])> = vertices
        .iter()
        .map(|v| {
            let lift = v.lift();
            let k = lift.iter().map(|&x| valuation(x, n)).min().unwrap_or(n);
            (k, lift.map(|x| x >> k))
        })
        .collect();
    let left = |(ka, a): (u32, [i64; 4]), (kb, b): (u32, [i64; 4])| -> bool {
        if ka + kb >= n {
            return false;
        }
        let p = crate::ring::product_components(a, b);
        let nu = p.iter().map(|&x| valuation(x, n)).min().unwrap_or(n);
        ka + kb + nu < n
    };

    let mut adj = BitMatrix::new(vertices.len());
    adj.rows_mut()
        .collect::<Vec<_>>()
        .into_par_iter()
        .enumerate()
        .for_each(|(i, row)| {
            let a = normalized[i];
            for (j, &b) in normalized.iter().enumerate() {
                if i != j && (left(a, b) || left(b, a)) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
        });

    let g = GraphSnapshot {
        modulus: m,
        vertices,
        index,
        adj,
    };
    g.audit(AUDIT_SAMPLES, 0)?;
    Ok(g)
}

impl GraphSnapshot {
    /// Arbitrary graph on the first `len` vertices of the modulus, for tests.
    #[cfg(test)]
    pub(crate) fn from_edges(m: Modulus, len: usize, edges: &[(usize, usize)]) -> Self {
        let vertices: Vec<Quat> = Quat::all(m).filter(crate::ring::is_vertex).take(len).collect();
        let mut index = vec![u32::MAX; m.ring_size() as usize];
        for (i, v) in vertices.iter().enumerate() {
            index[v.code() as usize] = i as u32;
        }
        let mut adj = BitMatrix::new(len);
        for &(a, b) in edges {
            adj.set(a, b);
            adj.set(b, a);
        }
        Self {
            modulus: m,
            vertices,
            index,
            adj,
        }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Quat] {
        &self.vertices
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Quat {
        self.vertices[i]
    }

    pub fn index_of(&self, a: &Quat) -> Option<usize> {
        if a.modulus() != self.modulus {
            return None;
        }
        match self.index[a.code() as usize] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj.get(i, j)
    }

    /// Packed neighbor set of `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        self.adj.row(i)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.adj.row(i);
        (0..self.len()).filter(move |&j| row[j / 64] >> (j % 64) & 1 == 1)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj.row_count(i)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.len()).into_par_iter().map(|i| self.degree(i)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn unit_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| classify(&self.vertices[i]) == ElementClass::Unit)
            .collect()
    }

    /// True if the matrix is symmetric with an empty diagonal.
    pub fn is_simple(&self) -> bool {
        (0..self.len())
            .into_par_iter()
            .all(|i| !self.adjacent(i, i) && self.neighbors(i).all(|j| self.adjacent(j, i)))
    }

    /// Compares `samples` seeded random pairs (every pair when that is
    /// fewer) against the product oracle.
    pub fn audit(&self, samples: usize, seed: u64) -> Result<()> {
        let v = self.len();
        let check = |i: usize, j: usize| -> Result<()> {
            if i == j {
                return Ok(());
            }
            let (a, b) = (self.vertices[i], self.vertices[j]);
            if adjacent_brute(&a, &b)? != self.adjacent(i, j) {
                return Err(Error::AuditMismatch { a, b });
            }
            Ok(())
        };
        if v * v <= samples {
            for i in 0..v {
                for j in 0..v {
                    check(i, j)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                check(rng.random_range(0..v), rng.random_range(0..v))?;
            }
        }
        Ok(())
    }
}
