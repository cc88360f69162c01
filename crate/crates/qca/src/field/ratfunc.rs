//! Reduced univariate rational functions over a field.

use super::{Field, Poly, Ring};

/// `num/den` with `gcd(num, den) = 1` and `den` monic. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Field> RatFunc<C> {
    /// Builds and reduces `num/den`; `None` if `den` is zero.
    pub fn new(num: Poly<C>, den: Poly<C>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalize(num, den))
    }

    /// Trusts the caller that the pair is already canonical.
    pub fn from_canonical_parts(num: Poly<C>, den: Poly<C>) -> Self {
        debug_assert!(den.lead().is_some_and(|l| l.is_one()));
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    /// `x^k` for any integer `k`.
    pub fn var_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(Poly::monomial(C::one(), k as usize))
        } else {
            RatFunc { num: Poly::one(), den: Poly::monomial(C::one(), (-k) as usize) }
        }
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value when constant.
    pub fn constant_value(&self) -> Option<C> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    fn normalize(num: Poly<C>, den: Poly<C>) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        if den.is_constant() {
            let inv = den.coeff(0).recip().expect("nonzero");
            return RatFunc { num: num.scale(&inv), den: Poly::one() };
        }
        if den.is_monomial() {
            // Laurent fast path: only powers of x can cancel.
            let k = den.low_order().min(num.low_order());
            let inv = den.lead().unwrap().recip().expect("nonzero");
            return RatFunc {
                num: num.shift_down(k).scale(&inv),
                den: Poly::monomial(C::one(), den.low_order() - k),
            };
        }
        let k = den.low_order().min(num.low_order());
        let (num, den) = if k > 0 { (num.shift_down(k), den.shift_down(k)) } else { (num, den) };
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let inv = den.lead().unwrap().recip().expect("nonzero");
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalize(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalize(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        if self.den.is_one_poly() && other.den.is_one_poly() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        Self::normalize(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Value at `x`; `None` at a pole.
    pub fn eval(&self, x: &C) -> Option<C> {
        let d = self.den.eval(x);
        self.num.eval(x).divide(&d)
    }

    /// The function `r(c*x)`.
    pub fn scale_var(&self, c: &C) -> Self {
        Self::normalize(self.num.scale_var(c), self.den.scale_var(c))
    }

    /// Order of vanishing at `x = 0` (negative for a pole).
    pub fn valuation(&self) -> i64 {
        if self.num.is_zero() {
            return i64::MAX;
        }
        self.num.low_order() as i64 - self.den.low_order() as i64
    }

    /// `deg num - deg den`, i.e. minus the order at infinity.
    pub fn degree_excess(&self) -> i64 {
        self.num.deg0() as i64 - self.den.deg0() as i64
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Option<RatFunc<D>> {
        RatFunc::new(self.num.map(&f), self.den.map(&f))
    }
}

impl<C: Ring> Poly<C> {
    fn is_one_poly(&self) -> bool {
        self.coeffs().len() == 1 && self.coeffs()[0].is_one()
    }
}

impl<C: Field> Ring for RatFunc<C> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn is_one(&self) -> bool {
        self.num.is_one_poly() && self.den.is_one_poly()
    }
}

impl<C: Field> Field for RatFunc<C> {
    fn recip(&self) -> Option<Self> {
        self.inv()
    }
    fn from_q(v: &super::Q) -> Self {
        Self::constant(C::from_q(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn p(v: &[i64]) -> Poly<Q> {
        Poly::from_coeffs(v.iter().map(|&c| Q::from(c)).collect())
    }

    #[test]
    fn reduces_to_canonical_form() {
        // (x^2 - 1) / (2x + 2) = (x - 1)/2
        let r = RatFunc::new(p(&[-1, 0, 1]), p(&[2, 2])).unwrap();
        assert_eq!(r.den(), &p(&[1]));
        assert_eq!(r.num(), &Poly::from_coeffs(vec![Q::from_signeds(-1, 2), Q::from_signeds(1, 2)]));
    }

    #[test]
    fn laurent_fast_path() {
        let a = RatFunc::<Q>::var_pow(-3);
        let b = RatFunc::<Q>::var_pow(5);
        assert_eq!(a.mul(&b), RatFunc::var_pow(2));
        let s = a.add(&RatFunc::one());
        assert_eq!(s.den(), &p(&[0, 0, 0, 1]));
        assert_eq!(s.valuation(), -3);
    }

    #[test]
    fn inverse_roundtrip() {
        let r = RatFunc::new(p(&[1, 2, 3]), p(&[5, 0, 1])).unwrap();
        assert!(r.mul(&r.inv().unwrap()).is_one());
        assert_eq!(r.eval(&Q::from(1)), Some(Q::from(1)));
    }
}
