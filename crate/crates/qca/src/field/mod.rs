//! Exact arithmetic: rationals, polynomials and rational functions in `q`,
//! rational functions in the spectral variable `u`, truncated Laurent
//! series, and the evaluation-grid identity verifier.
//!
//! Nothing here uses floating point. Every value has a canonical form, so
//! structural equality is mathematical equality.

mod cyclo;
mod laurent;
mod laurent_poly;
mod poly;
mod ratfunc;
mod scalar;
mod text;
mod verify;

pub use cyclo::CycloFrac;
pub use laurent::{Expansion, LaurentSeries, SeriesError};
pub use laurent_poly::{LaurentPoly, LaurentQ};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use scalar::{qbinom, qint, QCtx, QMode, Scalar};
pub use text::{format_ratu, format_scalar, parse_ratu, parse_scalar, ParseError};
pub use verify::{
    verify_identity, Comparable, EvalError, GridPolicy, Point, SampleRing, Verdict, VerifyError, Witness,
};

pub use malachite_nz::integer::Integer;
pub use malachite_q::Rational as Q;

use malachite_base::num::arithmetic::traits::Reciprocal;
use malachite_base::num::basic::traits::{One, Zero};
use std::fmt::Debug;

/// Rational functions of the spectral variable with `Scalar` coefficients.
pub type RatU = RatFunc<Scalar>;

/// Commutative (or at least associative, unital) ring operations used by
/// the generic linear algebra. Method names avoid clashing with `std::ops`.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self) {
        let p = a.times(b);
        *self = self.plus(&p);
    }

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn recip(&self) -> Option<Self>;

    fn divide(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self.times(&r))
    }

    fn from_q(v: &Q) -> Self;

    fn pow_i(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow_u(e as u32))
        } else {
            self.recip().map(|r| r.pow_u((-e) as u32))
        }
    }
}

/// Source of powers of `q` in some coefficient ring.
pub trait QPow<T> {
    fn q_pow(&self, k: i64) -> T;
}

impl Ring for Q {
    fn zero() -> Self {
        Q::ZERO
    }
    fn one() -> Self {
        Q::ONE
    }
    fn from_i64(v: i64) -> Self {
        Q::from(v)
    }
    fn is_zero(&self) -> bool {
        *self == Q::ZERO
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self += a * b;
        }
    }
}

impl Field for Q {
    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.reciprocal())
        }
    }
    fn from_q(v: &Q) -> Self {
        v.clone()
    }
}

impl Ring for Integer {
    fn zero() -> Self {
        Integer::ZERO
    }
    fn one() -> Self {
        Integer::ONE
    }
    fn from_i64(v: i64) -> Self {
        Integer::from(v)
    }
    fn is_zero(&self) -> bool {
        *self == Integer::ZERO
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Pinned `q`: powers of a fixed rational.
#[derive(Clone, Debug, PartialEq)]
pub struct PinnedQ(pub Q);

impl QPow<Q> for PinnedQ {
    fn q_pow(&self, k: i64) -> Q {
        self.0.pow_i(k).expect("pinned q is nonzero")
    }
}

/// `q^n` as a rational, used when a pinned value is needed in tests.
pub fn q_of(num: i64, den: i64) -> Q {
    Q::from_signeds(num, den)
}
