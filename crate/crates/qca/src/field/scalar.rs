//! The base field: rational functions of `q` (symbolic mode) or exact
//! rationals (pinned mode).

use super::{Field, QPow, RatFunc, RatU, Ring, Q};
use std::fmt;

/// How `q` is treated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QMode {
    /// `q` is an indeterminate; scalars are elements of `Q(q)`.
    Symbolic,
    /// `q` is replaced by a fixed rational that is not a root of unity.
    Pinned(Q),
}

impl QMode {
    /// The pinned value used when none is given: `3/5`.
    pub fn default_pinned() -> Self {
        QMode::Pinned(Q::from_signeds(3, 5))
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, QMode::Symbolic)
    }

    pub fn label(&self) -> String {
        match self {
            QMode::Symbolic => "symbolic".to_string(),
            QMode::Pinned(v) => format!("pinned:{v}"),
        }
    }
}

/// An element of `Q(q)`. Constant functions are always stored as
/// `Rational`, so derived equality is exact equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Q),
    Function(Box<RatFunc<Q>>),
}

impl Scalar {
    pub fn rational(v: Q) -> Self {
        Scalar::Rational(v)
    }

    pub fn int(v: i64) -> Self {
        Scalar::Rational(Q::from(v))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::Rational(Q::from_signeds(n, d))
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Scalar::Function(Box::new(RatFunc::var()))
    }

    pub fn from_ratfunc(r: RatFunc<Q>) -> Self {
        match r.constant_value() {
            Some(c) => Scalar::Rational(c),
            None => Scalar::Function(Box::new(r)),
        }
    }

    pub fn to_ratfunc(&self) -> RatFunc<Q> {
        match self {
            Scalar::Rational(v) => RatFunc::constant(v.clone()),
            Scalar::Function(f) => (**f).clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Scalar::Rational(v) => Some(v),
            Scalar::Function(_) => None,
        }
    }

    /// Substitutes a value for `q`; `None` at a pole.
    pub fn eval_q(&self, q: &Q) -> Option<Q> {
        match self {
            Scalar::Rational(v) => Some(v.clone()),
            Scalar::Function(f) => f.eval(q),
        }
    }

    /// Numerator and denominator degrees in `q` (zero for rationals).
    pub fn q_degrees(&self) -> (usize, usize) {
        match self {
            Scalar::Rational(_) => (0, 0),
            Scalar::Function(f) => (f.num().deg0(), f.den().deg0()),
        }
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::Rational(Q::zero())
    }
    fn one() -> Self {
        Scalar::Rational(Q::one())
    }
    fn from_i64(v: i64) -> Self {
        Scalar::int(v)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(v) if v.is_zero())
    }
    fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(v) if v.is_one())
    }
    fn plus(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ if self.is_zero() => other.clone(),
            _ if other.is_zero() => self.clone(),
            _ => Scalar::from_ratfunc(self.to_ratfunc().add(&other.to_ratfunc())),
        }
    }
    fn minus(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            _ => self.plus(&other.negated()),
        }
    }
    fn times(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ if self.is_zero() || other.is_zero() => Scalar::zero(),
            (Scalar::Rational(a), Scalar::Function(f)) | (Scalar::Function(f), Scalar::Rational(a)) => {
                let num = f.num().scale(a);
                Scalar::Function(Box::new(RatFunc::from_canonical_parts(num, f.den().clone())))
            }
            _ => Scalar::from_ratfunc(self.to_ratfunc().mul(&other.to_ratfunc())),
        }
    }
    fn negated(&self) -> Self {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Function(f) => Scalar::Function(Box::new(f.neg())),
        }
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match (&mut *self, a, b) {
            (Scalar::Rational(s), Scalar::Rational(x), Scalar::Rational(y)) => *s += x * y,
            _ => {
                let p = a.times(b);
                *self = self.plus(&p);
            }
        }
    }
}

impl Field for Scalar {
    fn recip(&self) -> Option<Self> {
        match self {
            Scalar::Rational(a) => a.recip().map(Scalar::Rational),
            Scalar::Function(f) => f.inv().map(Scalar::from_ratfunc),
        }
    }
    fn from_q(v: &Q) -> Self {
        Scalar::Rational(v.clone())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_scalar(self))
    }
}

/// Mode-aware constructor for powers of `q` and derived constants.
#[derive(Clone, Debug, PartialEq)]
pub struct QCtx {
    pub mode: QMode,
}

impl QCtx {
    pub fn new(mode: QMode) -> Self {
        QCtx { mode }
    }

    pub fn symbolic() -> Self {
        QCtx { mode: QMode::Symbolic }
    }

    pub fn pinned(v: Q) -> Self {
        QCtx { mode: QMode::Pinned(v) }
    }

    pub fn q(&self) -> Scalar {
        self.q_pow(1)
    }

    /// `xi = q^(-2n-2)`.
    pub fn xi(&self, n: usize) -> Scalar {
        self.q_pow(-2 * n as i64 - 2)
    }

    /// Embeds a scalar as a constant function of `u`.
    pub fn ratu(&self, s: Scalar) -> RatU {
        RatFunc::constant(s)
    }
}

impl QPow<Scalar> for QCtx {
    fn q_pow(&self, k: i64) -> Scalar {
        match &self.mode {
            QMode::Symbolic => Scalar::from_ratfunc(RatFunc::var_pow(k)),
            QMode::Pinned(v) => Scalar::Rational(v.pow_i(k).expect("pinned q is nonzero")),
        }
    }
}

impl QPow<RatU> for QCtx {
    fn q_pow(&self, k: i64) -> RatU {
        RatFunc::constant(QPow::<Scalar>::q_pow(self, k))
    }
}

/// The q-integer `[k]_{q^b} = (q^{bk} - q^{-bk}) / (q^b - q^{-b})`, written
/// as a Laurent sum so it also works in rings without division.
pub fn qint<T: Ring>(qp: &impl QPow<T>, b: i64, k: i64) -> T {
    let m = k.abs();
    let mut acc = T::zero();
    for j in 0..m {
        acc = acc.plus(&qp.q_pow(b * (m - 1 - 2 * j)));
    }
    if k < 0 {
        acc.negated()
    } else {
        acc
    }
}

/// The q-binomial `[r choose l]_{q^b}`.
pub fn qbinom<T: Field>(qp: &impl QPow<T>, b: i64, r: i64, l: i64) -> T {
    if l < 0 || l > r {
        return T::zero();
    }
    let mut num = T::one();
    let mut den = T::one();
    for j in 0..l {
        num = num.times(&qint(qp, b, r - j));
        den = den.times(&qint(qp, b, j + 1));
    }
    num.divide(&den).expect("q-integers are nonzero off roots of unity")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_numbers() {
        let c = QCtx::symbolic();
        let q = c.q();
        let two: Scalar = qint(&c, 1, 2);
        assert_eq!(two, q.plus(&q.recip().unwrap()));
        assert_eq!(qint::<Scalar>(&c, 1, -2), two.negated());
        let b: Scalar = qbinom(&c, 1, 3, 1);
        assert_eq!(b, qint(&c, 1, 3));
        let b2: Scalar = qbinom(&c, 2, 2, 1);
        assert_eq!(b2, qint(&c, 2, 2));
    }

    #[test]
    fn symbolic_constants_collapse() {
        let q = Scalar::q();
        let one = q.times(&q.recip().unwrap());
        assert_eq!(one, Scalar::one());
        assert!(matches!(q.minus(&q), Scalar::Rational(_)));
    }

    #[test]
    fn pinned_powers() {
        let c = QCtx::pinned(Q::from_signeds(3, 5));
        assert_eq!(c.xi(1), Scalar::frac(625, 81));
    }
}
