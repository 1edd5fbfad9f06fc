//! Smith normal form of 4x4 integer matrices and the annihilator counts
//! built on top of it.
//!
//! The number of solutions of `M x = 0 (mod 2^n)` is `prod gcd(d_i, 2^n)`
//! over the invariant factors `d_i` of `M`. Applied to the left
//! multiplication matrix of `a`, that counts the `b` with `ab = 0`, which in
//! turn gives the degree of `a` without enumerating the ring.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{classify, det4, is_vertex, left_mul_matrix, IntMatrix4, Modulus, Quat, ENUMERATION_CAP};

pub type Matrix4 = [[i128; 4]; 4];

pub const IDENTITY4: Matrix4 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

/// Invariant factors `d1 | d2 | d3 | d4`, stored non-negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfDiagonal(pub [u128; 4]);

impl SnfDiagonal {
    /// Every integer divides zero, so trailing zeros are fine.
    pub fn is_divisibility_chain(&self) -> bool {
        self.0.windows(2).all(|w| match (w[0], w[1]) {
            (0, b) => b == 0,
            (a, b) => b % a == 0,
        })
    }

    pub fn product(&self) -> u128 {
        self.0.iter().product()
    }
}

/// Transforms are arbitrary precision: alternating row and column passes
/// multiply them by the large invariant factors, and for entries of a few
/// hundred they no longer fit in 128 bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub diagonal: SnfDiagonal,
    /// Row transform.
    pub u: BigMatrix4,
    /// Column transform.
    pub v: BigMatrix4,
}

impl SnfDecomposition {
    /// `U M V = D` exactly and both transforms are unimodular.
    pub fn recomposes(&self, m: &IntMatrix4) -> bool {
        let product = big_mat_mul(&big_mat_mul(&self.u, &to_big(&widen(m))), &self.v);
        let diagonal_ok = (0..4).all(|i| {
            (0..4).all(|j| {
                let want = if i == j {
                    BigInt::from(self.diagonal.0[i])
                } else {
                    BigInt::zero()
                };
                product[i][j] == want
            })
        });
        diagonal_ok && big_determinant(&self.u).abs().is_one() && big_determinant(&self.v).abs().is_one()
    }
}

pub type BigMatrix4 = [[BigInt; 4]; 4];

pub fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut out = [[0i128; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn big_mat_mul(a: &BigMatrix4, b: &BigMatrix4) -> BigMatrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| &a[i][k] * &b[k][j]).sum()))
}

pub fn determinant(m: &Matrix4) -> i128 {
    det4(m)
}

pub fn big_determinant(m: &BigMatrix4) -> BigInt {
    fn expand(m: &BigMatrix4, rows: &[usize], cols: &[usize]) -> BigInt {
        let Some((&r, rest)) = rows.split_first() else {
            return BigInt::one();
        };
        let mut total = BigInt::zero();
        for (k, &c) in cols.iter().enumerate() {
            if Zero::is_zero(&m[r][c]) {
                continue;
            }
            let others: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = &m[r][c] * expand(m, rest, &others);
            if k % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    expand(m, &[0, 1, 2, 3], &[0, 1, 2, 3])
}

pub fn widen(m: &IntMatrix4) -> Matrix4 {
    m.0.map(|r| r.map(i128::from))
}

pub fn to_big(m: &Matrix4) -> BigMatrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| BigInt::from(m[i][j])))
}

fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

/// What the reduction runs on: checked `i128` on the fast path, `BigInt`
/// when the transforms are wanted or `i128` overflows. Every operation
/// returns `None` on overflow.
trait Entry: Clone + Sized {
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// `x s + y t`
    fn combine(x: &Self, s: &Self, y: &Self, t: &Self) -> Option<Self>;
    /// Exact quotient; `self` must be a multiple of `d`.
    fn div_exact(&self, d: &Self) -> Option<Self>;
    fn div_floor(&self, d: &Self) -> Option<Self>;
    fn is_multiple_of(&self, d: &Self) -> bool;
    /// `(g, s, t)` with `g = gcd >= 0` and `g = s self + t other`.
    fn ext_gcd(&self, other: &Self) -> Option<(Self, Self, Self)>;
}

impl Entry for i128 {
    fn from_i64(x: i64) -> Self {
        x.into()
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn combine(x: &Self, s: &Self, y: &Self, t: &Self) -> Option<Self> {
        x.checked_mul(*s)?.checked_add(y.checked_mul(*t)?)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn div_floor(&self, d: &Self) -> Option<Self> {
        // only ever called with a positive pivot, where this is the floor
        self.checked_div_euclid(*d)
    }
    fn is_multiple_of(&self, d: &Self) -> bool {
        *d != 0 && self.checked_rem(*d) == Some(0)
    }
    fn ext_gcd(&self, other: &Self) -> Option<(Self, Self, Self)> {
        let (mut r0, mut r1) = (*self, *other);
        let (mut s0, mut s1) = (1i128, 0i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0.checked_div_euclid(r1)?;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0.checked_sub(q.checked_mul(s1)?)?);
            (t0, t1) = (t1, t0.checked_sub(q.checked_mul(t1)?)?);
        }
        if r0 < 0 {
            Some((r0.checked_neg()?, -s0, -t0))
        } else {
            Some((r0, s0, t0))
        }
    }
}

impl Entry for BigInt {
    fn from_i64(x: i64) -> Self {
        x.into()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn combine(x: &Self, s: &Self, y: &Self, t: &Self) -> Option<Self> {
        Some(x * s + y * t)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn div_floor(&self, d: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, d))
    }
    fn is_multiple_of(&self, d: &Self) -> bool {
        !Zero::is_zero(d) && Integer::is_multiple_of(self, d)
    }
    fn ext_gcd(&self, other: &Self) -> Option<(Self, Self, Self)> {
        let e = self.extended_gcd(other);
        Some(if Signed::is_negative(&e.gcd) {
            (-e.gcd, -e.x, -e.y)
        } else {
            (e.gcd, e.x, e.y)
        })
    }
}

type Op<T> = [T; 4];

/// Replaces rows `x` and `y` by `(s x + t y, c x + d y)`.
#[allow(clippy::needless_range_loop)]
fn combine_rows<T: Entry>(m: &mut [[T; 4]; 4], x: usize, y: usize, [s, t, c, d]: &Op<T>) -> Option<()> {
    for j in 0..4 {
        let (rx, ry) = (&m[x][j], &m[y][j]);
        let (nx, ny) = (T::combine(rx, s, ry, t)?, T::combine(rx, c, ry, d)?);
        m[x][j] = nx;
        m[y][j] = ny;
    }
    Some(())
}

fn transpose<T: Clone>(m: &[[T; 4]; 4]) -> [[T; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

/// Where the elementary operations of the reduction get replayed.
trait Transforms<T> {
    fn rows(&mut self, x: usize, y: usize, op: &Op<T>);
    fn cols(&mut self, x: usize, y: usize, op: &Op<T>);
}

impl<T> Transforms<T> for () {
    fn rows(&mut self, _: usize, _: usize, _: &Op<T>) {}
    fn cols(&mut self, _: usize, _: usize, _: &Op<T>) {}
}

struct Recorder {
    u: BigMatrix4,
    /// `V` transposed, so column operations are row operations here.
    vt: BigMatrix4,
}

impl Transforms<BigInt> for Recorder {
    fn rows(&mut self, x: usize, y: usize, op: &Op<BigInt>) {
        combine_rows(&mut self.u, x, y, op).expect("BigInt never overflows");
    }
    fn cols(&mut self, x: usize, y: usize, op: &Op<BigInt>) {
        combine_rows(&mut self.vt, x, y, op).expect("BigInt never overflows");
    }
}

/// Applies a row operation to `a`, reporting it as a row operation on the
/// original matrix, or as a column operation when `a` is its transpose.
fn apply<T: Entry>(
    a: &mut [[T; 4]; 4],
    t: &mut impl Transforms<T>,
    transposed: bool,
    x: usize,
    y: usize,
    op: Op<T>,
) -> Option<()> {
    combine_rows(a, x, y, &op)?;
    if transposed {
        t.cols(x, y, &op);
    } else {
        t.rows(x, y, &op);
    }
    Some(())
}

fn op<T: Entry>(coefficients: [i64; 4]) -> Op<T> {
    coefficients.map(T::from_i64)
}

/// Row Hermite form of `a` in place. Entries above each pivot are reduced
/// into `[0, pivot)`, which keeps the working matrix small.
fn row_hermite<T: Entry>(a: &mut [[T; 4]; 4], t: &mut impl Transforms<T>, transposed: bool) -> Option<()> {
    let (zero, one) = (T::from_i64(0), T::from_i64(1));
    let mut r = 0;
    for c in 0..4 {
        if r == 4 {
            break;
        }
        for i in r + 1..4 {
            let (p, b) = (a[r][c].clone(), a[i][c].clone());
            if b.is_zero() {
                continue;
            }
            let step = if b.is_multiple_of(&p) {
                [one.clone(), zero.clone(), b.div_exact(&p)?.neg()?, one.clone()]
            } else {
                let (g, s, x) = p.ext_gcd(&b)?;
                [s, x, b.div_exact(&g)?.neg()?, p.div_exact(&g)?]
            };
            apply(a, t, transposed, r, i, step)?;
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            apply(a, t, transposed, r, (r + 1) % 4, op([-1, 0, 0, 1]))?;
        }
        let p = a[r][c].clone();
        for i in 0..r {
            let q = a[i][c].div_floor(&p)?;
            if !q.is_zero() {
                apply(
                    a,
                    t,
                    transposed,
                    i,
                    r,
                    [one.clone(), q.neg()?, zero.clone(), one.clone()],
                )?;
            }
        }
        r += 1;
    }
    Some(())
}

fn is_diagonal<T: Entry>(a: &[[T; 4]; 4]) -> bool {
    (0..4).all(|i| (0..4).all(|j| i == j || a[i][j].is_zero()))
}

/// First `(i, j)`, `i < j`, whose diagonal entries break the divisibility
/// chain, zeros counting as divisible by everything.
fn chain_violation<T: Entry>(a: &[[T; 4]; 4]) -> Option<(usize, usize)> {
    (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).find(|&(i, j)| {
        let (x, y) = (&a[i][i], &a[j][j]);
        if x.is_zero() {
            !y.is_zero()
        } else {
            !y.is_multiple_of(x)
        }
    })
}

/// Alternates row and column Hermite forms until the matrix is diagonal.
/// A diagonal that breaks the divisibility chain at `(i, j)` gets row `j`
/// added to row `i` and goes round again; the column pass then replaces
/// `d_i` by a proper divisor, so this terminates. `None` on overflow.
fn reduce<T: Entry>(m: &IntMatrix4, t: &mut impl Transforms<T>) -> Option<[T; 4]> {
    let mut a: [[T; 4]; 4] = m.0.map(|r| r.map(T::from_i64));
    let mut rows_next = true;
    loop {
        if is_diagonal(&a) {
            let Some((i, j)) = chain_violation(&a) else { break };
            apply(&mut a, t, false, i, j, op([1, 1, 0, 1]))?;
            rows_next = false;
        }
        if rows_next {
            row_hermite(&mut a, t, false)?;
        } else {
            let mut at = transpose(&a);
            row_hermite(&mut at, t, true)?;
            a = transpose(&at);
        }
        rows_next = !rows_next;
    }
    for i in 0..4 {
        if a[i][i].is_negative() {
            apply(&mut a, t, false, i, (i + 1) % 4, op([-1, 0, 0, 1]))?;
        }
    }
    Some([0, 1, 2, 3].map(|i| a[i][i].clone()))
}

fn big_to_u128(d: BigInt) -> u128 {
    u128::try_from(d).expect("invariant factor exceeds u128")
}

/// Invariant factors only; what the degree computations use. Runs in
/// `i128` and redoes the work in `BigInt` if that overflows.
pub fn smith_diagonal(m: &IntMatrix4) -> SnfDiagonal {
    match reduce::<i128>(m, &mut ()) {
        Some(d) => SnfDiagonal(d.map(|x| x as u128)),
        None => SnfDiagonal(
            reduce::<BigInt>(m, &mut ())
                .expect("BigInt never overflows")
                .map(big_to_u128),
        ),
    }
}

/// Integer Smith normal form with unimodular transforms, `U M V = D`.
pub fn smith_normal_form(m: &IntMatrix4) -> SnfDecomposition {
    let identity = to_big(&IDENTITY4);
    let mut rec = Recorder {
        u: identity.clone(),
        vt: identity,
    };
    let d = reduce::<BigInt>(m, &mut rec).expect("BigInt never overflows");
    SnfDecomposition {
        diagonal: SnfDiagonal(d.map(big_to_u128)),
        u: rec.u,
        v: transpose(&rec.vt),
    }
}

/// Invariant factors from determinantal divisors: `d_1 ... d_k` is the gcd
/// of all `k x k` minors. Independent of the elimination above.
pub fn determinantal_divisors(m: &IntMatrix4) -> SnfDiagonal {
    fn minor(a: &Matrix4, rows: &[usize], cols: &[usize]) -> i128 {
        let Some((&r, rest)) = rows.split_first() else { return 1 };
        cols.iter()
            .enumerate()
            .map(|(k, &c)| {
                let others: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let sign = if k % 2 == 0 { 1 } else { -1 };
                sign * a[r][c] * minor(a, rest, &others)
            })
            .sum()
    }
    fn subsets(k: usize) -> Vec<Vec<usize>> {
        (0u32..16)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..4).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }
    let a = widen(m);
    let mut previous = 1i128;
    let mut out = [0u128; 4];
    for k in 1..=4 {
        let mut g = 0;
        for rows in subsets(k) {
            for cols in subsets(k) {
                g = gcd(g, minor(&a, &rows, &cols));
            }
        }
        if g == 0 {
            break;
        }
        out[k - 1] = (g / previous) as u128;
        previous = g;
    }
    SnfDiagonal(out)
}

/// `prod gcd(d_i, 2^n)` with `gcd(0, 2^n) = 2^n`.
pub fn solution_count(diagonal: &SnfDiagonal, n: u32) -> u64 {
    let exponent: u32 = diagonal
        .0
        .iter()
        .map(|&d| if d == 0 { n } else { d.trailing_zeros().min(n) })
        .sum();
    1u64 << exponent
}

/// Number of `b` with `ab = 0`.
pub fn annihilator_count(a: &Quat) -> u64 {
    solution_count(&smith_diagonal(&left_mul_matrix(a)), a.modulus().exponent())
}

/// Degree of a vertex from its annihilator count.
///
/// The degree counts vertices `b != a` with `ab != 0`: everything outside
/// the annihilator, minus the excluded elements `1` and `-1` (one element
/// when `n = 1`), minus `a` itself when `a^2 != 0`.
pub fn degree_formula(a: &Quat) -> Result<u64> {
    if !is_vertex(a) {
        return Err(Error::NotAVertex {
            quat: *a,
            class: classify(a),
        });
    }
    let m = a.modulus();
    let excluded = if m.exponent() == 1 { 1 } else { 2 };
    let self_loop = u64::from(!a.product(a).is_zero());
    Ok(m.ring_size() - annihilator_count(a) - excluded - self_loop)
}

/// Degree -> number of vertices with that degree, from the formula alone.
pub fn degree_histogram(m: Modulus) -> Result<BTreeMap<u64, u64>> {
    m.ensure_at_most(ENUMERATION_CAP, "formula degree sweep")?;
    let size = m.ring_size();
    let chunks: Vec<BTreeMap<u64, u64>> = (0..size)
        .into_par_iter()
        .fold(BTreeMap::new, |mut hist, code| {
            let a = Quat::from_code(code, m);
            if is_vertex(&a) {
                let d = degree_formula(&a).expect("vertex");
                *hist.entry(d).or_insert(0) += 1;
            }
            hist
        })
        .collect();
    let mut out = BTreeMap::new();
    for chunk in chunks {
        for (d, c) in chunk {
            *out.entry(d).or_insert(0) += c;
        }
    }
    Ok(out)
}

/// Exhaustive count of `b` with `ab = 0`.
pub fn kernel_count_brute(a: &Quat) -> Result<u64> {
    let m = a.modulus();
    m.ensure_at_most(4, "brute-force kernel counting")?;
    Ok(Quat::all(m).filter(|b| a.product(b).is_zero()).count() as u64)
}
