//! Dense univariate polynomials over a ring.

use super::{Field, Ring};

/// Dense polynomial `c0 + c1*x + ...`, trailing zeros stripped.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Poly<C> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn monomial(c: C, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Number of vanishing low-order coefficients (the `x`-adic valuation).
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// True when the polynomial is `c*x^k` for a single `k`.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = o.plus(s);
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.negated()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => out.push(a.minus(b)),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.negated()),
                (None, None) => unreachable!(),
            }
        }
        Self::from_coeffs(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j].add_product(a, b);
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `x^k`; the caller guarantees `k <= low_order()`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(k <= self.low_order() || self.is_zero());
        if self.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs[k..].to_vec() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    /// The polynomial `p(c*x)`.
    pub fn scale_var(&self, c: &C) -> Self {
        let mut pw = C::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.times(&pw));
            pw = pw.times(c);
        }
        Self::from_coeffs(out)
    }

    /// Coefficients reversed with respect to `deg`: `x^deg * p(1/x)`.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut out = vec![C::zero(); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[deg - i] = c.clone();
        }
        Self::from_coeffs(out)
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Field> Poly<C> {
    /// Long division; `None` when dividing by zero.
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead_inv = d.lead()?.recip()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![C::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].times(&lead_inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    if !dc.is_zero() {
                        rem[k + j] = rem[k + j].minus(&c.times(dc));
                    }
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d)?;
        r.is_zero().then_some(q)
    }

    /// Scaled to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip().expect("nonzero lead")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }
}

impl<C: Ring> Poly<C> {
    /// Formats with the given variable name, e.g. `1 + -2*q^3`.
    pub fn format_with(&self, var: &str, coeff: impl Fn(&C) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = coeff(c);
            parts.push(match i {
                0 => cs,
                1 => format!("{cs}*{var}"),
                _ => format!("{cs}*{var}^{i}"),
            });
        }
        parts.join(" + ")
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
    fn strips_and_multiplies() {
        let a = p(&[1, 1, 0, 0]);
        assert_eq!(a.degree(), Some(1));
        assert_eq!(a.mul(&a), p(&[1, 2, 1]));
        assert_eq!(a.sub(&a), Poly::zero());
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let g = a.mul(&p(&[2, 1])).gcd(&b.mul(&p(&[3, 1])));
        assert_eq!(g, b);
    }

    #[test]
    fn horner_and_scale_var() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.eval(&Q::from(2)), Q::from(17));
        assert_eq!(a.scale_var(&Q::from(2)), p(&[1, 4, 12]));
        assert_eq!(a.reversed(3), p(&[0, 3, 2, 1]));
    }
}
