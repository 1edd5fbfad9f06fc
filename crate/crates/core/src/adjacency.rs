//! Adjacency in the non-zero divisor graph.
//!
//! Two routes are provided. The brute-force route multiplies the quaternions
//! and checks for zero. The valuation route factors the common power of two
//! out of each operand (`a = 2^k alpha`, `b = 2^l beta`), evaluates the
//! product of the reduced parts exactly over the integers, and declares
//! `ab != 0` exactly when `k + l + nu < n`, where `nu` is the smallest
//! 2-adic valuation among the reduced product components.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{check_same, classify, is_vertex, product_components, valuation, Quat};

/// Largest `n` for which neighbours are counted by multiplying against every element.
pub const BRUTE_DEGREE_CAP: u32 = 5;

/// `a = 2^k * alpha` with at least one odd component in `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalizedQuat {
    pub k: u32,
    pub alpha: Quat,
}

pub fn normalize(a: &Quat) -> Result<NormalizedQuat> {
    if a.is_zero() {
        return Err(Error::ZeroQuaternion);
    }
    let n = a.modulus().exponent();
    let k = a.lift().iter().map(|&x| valuation(x, n)).min().unwrap_or(n);
    let alpha = Quat::from_ints(a.lift().map(|x| x >> k), a.modulus());
    Ok(NormalizedQuat { k, alpha })
}

/// Exact integer products of normalized operands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductVector(pub [i64; 4]);

impl ProductVector {
    pub fn of(alpha: &Quat, beta: &Quat) -> Self {
        Self(product_components(alpha.lift(), beta.lift()))
    }

    /// Smallest valuation among the components, capped at `cap`.
    pub fn min_valuation(&self, cap: u32) -> u32 {
        self.0.iter().map(|&x| valuation(x, cap)).min().unwrap_or(cap)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Valuations {
    pub k: u32,
    pub l: u32,
    pub nu: u32,
}

impl Valuations {
    #[inline]
    pub fn total(&self) -> u32 {
        self.k + self.l + self.nu
    }
}

pub fn nu_min(a: &Quat, b: &Quat) -> Result<Valuations> {
    check_same(a, b)?;
    let na = normalize(a)?;
    let nb = normalize(b)?;
    let nu = ProductVector::of(&na.alpha, &nb.alpha).min_valuation(a.modulus().exponent());
    Ok(Valuations { k: na.k, l: nb.k, nu })
}

/// Hot-path form of the valuation criterion for `ab != 0`.
///
/// No validation: both operands must be non-zero and share a modulus.
#[inline]
pub fn left_criterion(a: &Quat, b: &Quat) -> bool {
    let n = a.modulus().exponent();
    let (la, lb) = (a.lift(), b.lift());
    let k = la.iter().map(|&x| valuation(x, n)).min().unwrap_or(n);
    let l = lb.iter().map(|&x| valuation(x, n)).min().unwrap_or(n);
    if k + l >= n {
        return false;
    }
    let p = product_components(la.map(|x| x >> k), lb.map(|x| x >> l));
    let nu = p.iter().map(|&x| valuation(x, n)).min().unwrap_or(n);
    k + l + nu < n
}

fn check_pair(a: &Quat, b: &Quat) -> Result<()> {
    check_same(a, b)?;
    for q in [a, b] {
        if !is_vertex(q) {
            return Err(Error::NotAVertex {
                quat: *q,
                class: classify(q),
            });
        }
    }
    if a == b {
        return Err(Error::EqualVertices(*a));
    }
    Ok(())
}

/// `ab != 0`, decided by valuations alone.
pub fn adjacent_fast(a: &Quat, b: &Quat) -> Result<bool> {
    check_pair(a, b)?;
    Ok(nu_min(a, b)?.total() < a.modulus().exponent())
}

/// `ab != 0`, decided by multiplying.
pub fn adjacent_left(a: &Quat, b: &Quat) -> Result<bool> {
    check_pair(a, b)?;
    Ok(!a.product(b).is_zero())
}

/// Graph adjacency: `ab != 0` or `ba != 0`.
pub fn adjacent_brute(a: &Quat, b: &Quat) -> Result<bool> {
    check_pair(a, b)?;
    Ok(!a.product(b).is_zero() || !b.product(a).is_zero())
}

/// Number of vertices `b != a` with `ab != 0`, by multiplying against
/// every element of the ring.
pub fn left_degree_brute(a: &Quat) -> Result<u64> {
    if !is_vertex(a) {
        return Err(Error::NotAVertex {
            quat: *a,
            class: classify(a),
        });
    }
    let m = a.modulus();
    m.ensure_at_most(BRUTE_DEGREE_CAP, "brute-force degree")?;
    Ok(Quat::all(m)
        .filter(|b| b != a && is_vertex(b) && !a.product(b).is_zero())
        .count() as u64)
}
