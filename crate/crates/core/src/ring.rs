//! Residues modulo `2^n` and Hamilton quaternions over them.
//!
//! A quaternion `a1 + a2 i + a3 j + a4 k` is stored as four canonical
//! residues in `[0, 2^n)`. Products are evaluated on exact 64-bit integers
//! and reduced afterwards; with `n <= 15` every intermediate stays far below
//! overflow.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus exponent.
pub const MAX_EXPONENT: u32 = 15;

/// Largest exponent for which whole-ring enumeration is allowed (`2^24` elements).
pub const ENUMERATION_CAP: u32 = 6;

/// The modulus `2^n`, identified by its exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_EXPONENT {
            return Err(Error::ModulusOutOfRange { n, max: MAX_EXPONENT });
        }
        Ok(Self(n))
    }

    #[inline]
    pub fn exponent(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn value(self) -> u32 {
        1 << self.0
    }

    #[inline]
    pub fn mask(self) -> u32 {
        self.value() - 1
    }

    /// `2^{n-1}`.
    #[inline]
    pub fn half(self) -> u32 {
        1 << (self.0 - 1)
    }

    /// Number of quaternions, `2^{4n}`.
    #[inline]
    pub fn ring_size(self) -> u64 {
        1u64 << (4 * self.0)
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        (x & self.mask() as i64) as u32
    }

    /// Errors with [`Error::CapExceeded`] when `n > cap`.
    pub fn ensure_at_most(self, cap: u32, what: &'static str) -> Result<()> {
        if self.0 > cap {
            Err(Error::CapExceeded { what, n: self.0, cap })
        } else {
            Ok(())
        }
    }
}

impl TryFrom<u32> for Modulus {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Self::new(n)
    }
}

impl From<Modulus> for u32 {
    fn from(m: Modulus) -> u32 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{}", self.0)
    }
}

/// An element of `Z/2^n` in canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u32,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: u32, modulus: Modulus) -> Result<Self> {
        if value >= modulus.value() {
            return Err(Error::NonCanonical {
                value: value.into(),
                n: modulus.exponent(),
            });
        }
        Ok(Self { value, modulus })
    }

    /// Reduces an arbitrary integer into canonical form.
    pub fn from_int(x: i64, modulus: Modulus) -> Self {
        Self {
            value: modulus.reduce(x),
            modulus,
        }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn is_unit(self) -> bool {
        self.value & 1 == 1
    }
}

/// 2-adic valuation of a residue, with `nu2(0) = n`.
pub fn nu2(x: Residue) -> u32 {
    valuation(x.value.into(), x.modulus.exponent())
}

/// 2-adic valuation of an integer, capped at `cap` (so `0` maps to `cap`).
#[inline]
pub fn valuation(x: i64, cap: u32) -> u32 {
    if x == 0 {
        cap
    } else {
        x.trailing_zeros().min(cap)
    }
}

/// Components of the product `a * b` as exact integers, in the order of the
/// coefficients of `1, i, j, k`.
#[inline]
pub fn product_components(a: [i64; 4], b: [i64; 4]) -> [i64; 4] {
    let [a1, a2, a3, a4] = a;
    let [b1, b2, b3, b4] = b;
    [
        a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
        a2 * b1 + a1 * b2 - a4 * b3 + a3 * b4,
        a3 * b1 + a4 * b2 + a1 * b3 - a2 * b4,
        a4 * b1 - a3 * b2 + a2 * b3 + a1 * b4,
    ]
}

/// A Hamilton quaternion over `Z/2^n`.
///
/// Ordering is lexicographic on the component tuple, which matches the
/// order of [`Quat::code`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quat {
    modulus: Modulus,
    c: [u32; 4],
}

impl Quat {
    pub fn new(c: [u32; 4], modulus: Modulus) -> Result<Self> {
        for &x in &c {
            if x >= modulus.value() {
                return Err(Error::NonCanonical {
                    value: x.into(),
                    n: modulus.exponent(),
                });
            }
        }
        Ok(Self { modulus, c })
    }

    /// Builds a quaternion from arbitrary integers, reducing each component.
    pub fn from_ints(c: [i64; 4], modulus: Modulus) -> Self {
        Self {
            modulus,
            c: c.map(|x| modulus.reduce(x)),
        }
    }

    pub fn zero(modulus: Modulus) -> Self {
        Self { modulus, c: [0; 4] }
    }

    pub fn one(modulus: Modulus) -> Self {
        Self {
            modulus,
            c: [1, 0, 0, 0],
        }
    }

    pub fn minus_one(modulus: Modulus) -> Self {
        Self {
            modulus,
            c: [modulus.mask(), 0, 0, 0],
        }
    }

    /// `(2^{n-1}, 2^{n-1}, 2^{n-1}, 2^{n-1})`.
    pub fn all_half(modulus: Modulus) -> Self {
        Self {
            modulus,
            c: [modulus.half(); 4],
        }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn components(&self) -> [u32; 4] {
        self.c
    }

    pub fn component(&self, i: usize) -> Residue {
        Residue {
            value: self.c[i],
            modulus: self.modulus,
        }
    }

    /// Canonical non-negative integer lift of each component.
    #[inline]
    pub fn lift(&self) -> [i64; 4] {
        self.c.map(i64::from)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    /// Position in lexicographic order among all `2^{4n}` quaternions.
    #[inline]
    pub fn code(&self) -> u64 {
        let n = self.modulus.exponent();
        self.c.iter().fold(0u64, |acc, &x| (acc << n) | u64::from(x))
    }

    #[inline]
    pub fn from_code(code: u64, modulus: Modulus) -> Self {
        let n = modulus.exponent();
        let mask = u64::from(modulus.mask());
        let c = [
            ((code >> (3 * n)) & mask) as u32,
            ((code >> (2 * n)) & mask) as u32,
            ((code >> n) & mask) as u32,
            (code & mask) as u32,
        ];
        Self { modulus, c }
    }

    /// Every quaternion over the modulus, in lexicographic order.
    pub fn all(modulus: Modulus) -> impl DoubleEndedIterator<Item = Quat> + Clone {
        (0..modulus.ring_size()).map(move |code| Quat::from_code(code, modulus))
    }

    /// Product without the modulus check; callers guarantee matching moduli.
    #[inline]
    pub fn product(&self, rhs: &Quat) -> Quat {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = product_components(self.lift(), rhs.lift());
        Quat::from_ints(p, self.modulus)
    }

    /// Component-wise sum.
    pub fn add(&self, rhs: &Quat) -> Result<Quat> {
        check_same(self, rhs)?;
        let mut out = [0i64; 4];
        for (o, (x, y)) in out.iter_mut().zip(self.lift().iter().zip(rhs.lift())) {
            *o = x + y;
        }
        Ok(Quat::from_ints(out, self.modulus))
    }

    pub fn odd_count(&self) -> u32 {
        self.c.iter().map(|x| x & 1).sum()
    }

    /// Parses the text form `a1,a2,a3,a4` of canonical residues.
    pub fn parse(input: &str, modulus: Modulus) -> Result<Self> {
        let parts: Vec<&str> = input.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse {
                input: input.to_owned(),
                reason: format!("expected 4 components, found {}", parts.len()),
            });
        }
        let mut c = [0i64; 4];
        for (slot, part) in c.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|e: std::num::ParseIntError| Error::Parse {
                input: input.to_owned(),
                reason: e.to_string(),
            })?;
        }
        Self::from_canonical(c, modulus)
    }

    /// Like [`Quat::new`] but from signed input, rejecting anything outside `[0, 2^n)`.
    pub fn from_canonical(c: [i64; 4], modulus: Modulus) -> Result<Self> {
        let mut out = [0u32; 4];
        for (slot, &x) in out.iter_mut().zip(&c) {
            if x < 0 || x >= i64::from(modulus.value()) {
                return Err(Error::NonCanonical {
                    value: x,
                    n: modulus.exponent(),
                });
            }
            *slot = x as u32;
        }
        Ok(Self { modulus, c: out })
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.c;
        write!(f, "{a},{b},{c},{d}")
    }
}

pub(crate) fn check_same(a: &Quat, b: &Quat) -> Result<()> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch {
            left: a.modulus.exponent(),
            right: b.modulus.exponent(),
        });
    }
    Ok(())
}

/// Ring product `a * b`.
pub fn quat_mul(a: &Quat, b: &Quat) -> Result<Quat> {
    check_same(a, b)?;
    Ok(a.product(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementClass {
    Zero,
    Unit,
    ZeroDivisor,
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementClass::Zero => "zero",
            ElementClass::Unit => "unit",
            ElementClass::ZeroDivisor => "zero-divisor",
        })
    }
}

/// A quaternion is a unit exactly when its norm `a1^2+a2^2+a3^2+a4^2` is
/// odd, i.e. when an odd number of its components are odd.
pub fn classify(a: &Quat) -> ElementClass {
    if a.is_zero() {
        ElementClass::Zero
    } else if a.odd_count() % 2 == 1 {
        ElementClass::Unit
    } else {
        ElementClass::ZeroDivisor
    }
}

/// Vertices of the non-zero divisor graph: everything except `0`, `1` and `-1`.
pub fn is_vertex(a: &Quat) -> bool {
    let m = a.modulus;
    !(a.is_zero() || *a == Quat::one(m) || *a == Quat::minus_one(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementCounts {
    pub units: u64,
    pub zero_divisors: u64,
}

/// Counts units and zero-divisors (zero included) by classifying every element.
pub fn count_elements(m: Modulus) -> Result<ElementCounts> {
    m.ensure_at_most(ENUMERATION_CAP, "exhaustive element classification")?;
    let units = Quat::all(m).filter(|q| classify(q) == ElementClass::Unit).count() as u64;
    Ok(ElementCounts {
        units,
        zero_divisors: m.ring_size() - units,
    })
}

/// Exact 4x4 integer matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix4(pub [[i64; 4]; 4]);

impl IntMatrix4 {
    pub const IDENTITY: Self = Self([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    pub const ZERO: Self = Self([[0; 4]; 4]);

    pub fn rows(&self) -> &[[i64; 4]; 4] {
        &self.0
    }

    pub fn apply(&self, x: [i64; 4]) -> [i64; 4] {
        self.0.map(|row| row.iter().zip(&x).map(|(r, v)| r * v).sum())
    }

    pub fn determinant(&self) -> i128 {
        det4(&self.0.map(|r| r.map(i128::from)))
    }
}

/// Laplace expansion along the first row.
pub(crate) fn det4(m: &[[i128; 4]; 4]) -> i128 {
    fn det3(m: [[i128; 3]; 3]) -> i128 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
    (0..4)
        .map(|col| {
            let mut minor = [[0i128; 3]; 3];
            for (r, row) in m[1..].iter().enumerate() {
                let mut k = 0;
                for (c, &v) in row.iter().enumerate() {
                    if c != col {
                        minor[r][k] = v;
                        k += 1;
                    }
                }
            }
            let sign = if col % 2 == 0 { 1 } else { -1 };
            sign * m[0][col] * det3(minor)
        })
        .sum()
}

/// Matrix of the linear map `b -> a * b`, using signed lifts of the
/// canonical components of `a`.
pub fn left_mul_matrix(a: &Quat) -> IntMatrix4 {
    let [a1, a2, a3, a4] = a.lift();
    IntMatrix4([
        [a1, -a2, -a3, -a4],
        [a2, a1, -a4, a3],
        [a3, a4, a1, -a2],
        [a4, -a3, a2, a1],
    ])
}
