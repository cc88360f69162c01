//! Laurent polynomials in `q` with integer coefficients.
//!
//! Polynomial identities (Yang-Baxter, RLL, crossing after clearing
//! denominators) evaluated at integer sample points stay inside this ring,
//! which is much cheaper than general rational functions of `q`.

use super::{Integer, Poly, QPow, RatFunc, Ring, Scalar, Q};

/// `sum_k c_k q^(low + k)`; no zero coefficients at either end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Integer>,
}

impl LaurentPoly {
    pub fn monomial(c: Integer, k: i64) -> Self {
        Self::from_parts(k, vec![c])
    }

    pub fn from_parts(low: i64, mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return LaurentPoly { low: 0, coeffs: Vec::new() };
        }
        coeffs.drain(..lead);
        LaurentPoly { low: low + lead as i64, coeffs }
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn to_scalar(&self) -> Scalar {
        if self.coeffs.is_empty() {
            return Scalar::zero();
        }
        let num = Poly::from_coeffs(self.coeffs.iter().map(Q::from).collect());
        let r = if self.low >= 0 {
            RatFunc::from_poly(num.shift_up(self.low as usize))
        } else {
            RatFunc::new(num, Poly::monomial(Q::one(), (-self.low) as usize)).expect("nonzero")
        };
        Scalar::from_ratfunc(r)
    }

    pub fn scale_int(&self, c: i64) -> Self {
        let c = Integer::from(c);
        Self::from_parts(self.low, self.coeffs.iter().map(|a| a * &c).collect())
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::monomial(Integer::one(), 0)
    }
    fn from_i64(v: i64) -> Self {
        Self::monomial(Integer::from(v), 0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i64).max(other.low + other.coeffs.len() as i64);
        let mut out = vec![Integer::zero(); (high - low) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[(other.low - low) as usize + i] += c;
        }
        Self::from_parts(low, out)
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Integer::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_parts(self.low + other.low, out)
    }
    fn negated(&self) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = a.times(b);
            return;
        }
        let plow = a.low + b.low;
        let plen = a.coeffs.len() + b.coeffs.len() - 1;
        let low = self.low.min(plow);
        let high = (self.low + self.coeffs.len() as i64).max(plow + plen as i64);
        if low < self.low || high > self.low + self.coeffs.len() as i64 {
            let mut grown = vec![Integer::zero(); (high - low) as usize];
            let off = (self.low - low) as usize;
            for (i, c) in self.coeffs.drain(..).enumerate() {
                grown[off + i] = c;
            }
            self.coeffs = grown;
            self.low = low;
        }
        let off = (plow - self.low) as usize;
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    self.coeffs[off + i + j] += x * y;
                }
            }
        }
        let coeffs = std::mem::take(&mut self.coeffs);
        *self = Self::from_parts(self.low, coeffs);
    }
}

/// Symbolic `q` realised as monomials in [`LaurentPoly`].
#[derive(Clone, Copy, Debug, Default)]
pub struct LaurentQ;

impl QPow<LaurentPoly> for LaurentQ {
    fn q_pow(&self, k: i64) -> LaurentPoly {
        LaurentPoly::monomial(Integer::one(), k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{qint, QCtx};

    #[test]
    fn arithmetic_matches_rational_functions() {
        let q = LaurentQ;
        let a: LaurentPoly = qint(&q, 1, 3);
        let b = LaurentQ.q_pow(-2).plus(&LaurentPoly::from_i64(5));
        let prod = a.times(&b);
        let c = QCtx::symbolic();
        let sa: Scalar = qint(&c, 1, 3);
        let sb = QPow::<Scalar>::q_pow(&c, -2).plus(&Scalar::int(5));
        assert_eq!(prod.to_scalar(), sa.times(&sb));
        let mut acc = b.clone();
        acc.add_product(&a, &b);
        assert_eq!(acc, b.plus(&prod));
        assert!(a.minus(&a).is_zero());
    }
}
