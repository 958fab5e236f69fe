//! Exact 2x2 integer matrices and the small amount of number theory the
//! rest of the crate leans on.
//!
//! The four named matrices `A`, `B`, `C`, `D` are the actions of the graph
//! surgeries on the vector `(t, u) = (tau(G/e), tau(G - e))` of a witness:
//!
//! ```text
//! A = [1 1]   B = [2 0]   C = [2 1]   D = [1 0]
//!     [0 1]       [1 2]       [1 1]       [1 1]
//! ```
//!
//! `A` is subdivision of the marked edge, `B` stacks a triangle keeping the
//! mark, `C` stacks a triangle moving the mark, and `D = A^-1 C` shows up
//! when words are rewritten in continued-fraction form. All arithmetic is
//! arbitrary precision; nothing in this module ever rounds.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Errors from vector application and gcd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// Applying a matrix produced a negative coordinate; feasibility
    /// vectors live in the non-negative quadrant.
    NegativeEntry,
    /// `ext_gcd(0, 0)` has no well-defined cofactors.
    BothZero,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NegativeEntry => {
                write!(f, "matrix application left the non-negative quadrant")
            }
            AlgebraError::BothZero => write!(f, "ext_gcd(0, 0) is undefined"),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// A 2x2 matrix with arbitrary-precision integer entries, row major:
/// `[[a11, a12], [a21, a22]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a11: BigInt,
    pub a12: BigInt,
    pub a21: BigInt,
    pub a22: BigInt,
}

fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

impl Mat2 {
    pub fn new(a11: i64, a12: i64, a21: i64, a22: i64) -> Self {
        Mat2 {
            a11: bi(a11),
            a12: bi(a12),
            a21: bi(a21),
            a22: bi(a22),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    /// Subdivision matrix `A = [[1, 1], [0, 1]]`; sends `(t, u)` to `(t + u, u)`.
    pub fn a() -> Self {
        Mat2::new(1, 1, 0, 1)
    }

    /// Triangle-keep matrix `B = [[2, 0], [1, 2]]`; sends `(t, u)` to `(2t, t + 2u)`.
    pub fn b() -> Self {
        Mat2::new(2, 0, 1, 2)
    }

    /// Triangle-move matrix `C = [[2, 1], [1, 1]]`; sends `(t, u)` to `(2t + u, t + u)`.
    pub fn c() -> Self {
        Mat2::new(2, 1, 1, 1)
    }

    /// Lower shear `D = [[1, 0], [1, 1]]`. Satisfies `C = A * D`.
    pub fn d() -> Self {
        Mat2::new(1, 0, 1, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a11 * &self.a22 - &self.a12 * &self.a21
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a11: &self.a11 * &rhs.a11 + &self.a12 * &rhs.a21,
            a12: &self.a11 * &rhs.a12 + &self.a12 * &rhs.a22,
            a21: &self.a21 * &rhs.a11 + &self.a22 * &rhs.a21,
            a22: &self.a21 * &rhs.a12 + &self.a22 * &rhs.a22,
        }
    }

    /// `self^k` by repeated squaring; `k = 0` gives the identity.
    pub fn pow(&self, k: u64) -> Mat2 {
        let mut result = Mat2::identity();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Applies the matrix to a feasibility vector, staying exact. Errors
    /// with [`AlgebraError::NegativeEntry`] if either output coordinate
    /// would be negative (possible for hand-built matrices, never for
    /// products of `A`, `B`, `C`, `D`).
    pub fn apply(&self, v: &FeasVec) -> Result<FeasVec, AlgebraError> {
        let t = BigInt::from(v.t.clone());
        let u = BigInt::from(v.u.clone());
        let nt = &self.a11 * &t + &self.a12 * &u;
        let nu = &self.a21 * &t + &self.a22 * &u;
        if nt.is_negative() || nu.is_negative() {
            return Err(AlgebraError::NegativeEntry);
        }
        Ok(FeasVec {
            t: nt.to_biguint().expect("checked non-negative"),
            u: nu.to_biguint().expect("checked non-negative"),
        })
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a11, self.a12, self.a21, self.a22
        )
    }
}

/// The pair `(t, u) = (tau(G/e), tau(G - e))` carried by a witness graph.
/// `t` is the contraction count and `u` the deletion count; the spanning
/// tree count of the witness itself is `t + u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeasVec {
    pub t: BigUint,
    pub u: BigUint,
}

impl FeasVec {
    pub fn new(t: impl Into<BigUint>, u: impl Into<BigUint>) -> Self {
        FeasVec {
            t: t.into(),
            u: u.into(),
        }
    }

    /// The vector `(1, 0)` of a single edge: contracting gives one tree,
    /// deleting disconnects.
    pub fn start() -> Self {
        FeasVec::new(1u32, 0u32)
    }

    /// Spanning-tree count of the graph carrying this vector.
    pub fn tau(&self) -> BigUint {
        &self.t + &self.u
    }

    pub fn gcd(&self) -> BigUint {
        self.t.gcd(&self.u)
    }
}

impl fmt::Display for FeasVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, self.u)
    }
}

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(a, b) >= 0` and
/// `a*x + b*y = g`. Errors if both arguments are zero.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt), AlgebraError> {
    if a.is_zero() && b.is_zero() {
        return Err(AlgebraError::BothZero);
    }
    let e = a.extended_gcd(b);
    let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
    if g.is_negative() {
        g = -g;
        x = -x;
        y = -y;
    }
    debug_assert_eq!(a * &x + b * &y, g);
    Ok((g, x, y))
}

/// Number of surgery words `A^a1 C ... A^at C` (all `ai >= 0`, `t >= 0`)
/// of total weight at most `n`: exactly `2^n`.
pub fn count_simple_words(n: u32) -> BigUint {
    BigUint::one() << n
}

/// Number of two-family block words (blocks `A^a C` with `a >= 0` and
/// `B^a C` with `a >= 1`, block weight `a + 1`) of total weight at most
/// `n`. Satisfies `m_0 = 1`, `m_1 = 2`, `m_n = 2 m_(n-1) + m_(n-2)`, the
/// series of `1 / (1 - 2x - x^2)`.
pub fn count_full_words(n: u32) -> BigUint {
    let mut prev = BigUint::one(); // m_0
    if n == 0 {
        return prev;
    }
    let mut cur = BigUint::from(2u32); // m_1
    for _ in 2..=n {
        let next = (&cur << 1) + &prev;
        prev = cur;
        cur = next;
    }
    cur
}
