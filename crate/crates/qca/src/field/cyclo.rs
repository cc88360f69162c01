//! Rational functions of `q` whose denominators are products of
//! cyclotomic polynomials and powers of `q`.
//!
//! The scalar series `f(u)` only ever divides by `1 ± q^m`, so keeping the
//! denominator factored replaces gcd computations by trial division with
//! irreducible factors.

use super::{Field, Poly, RatFunc, Ring, Scalar, Q};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

/// `q^shift * num(q) / prod_d Phi_d(q)^e_d`, with `num(0) != 0` and no
/// `Phi_d` in the denominator dividing `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloFrac {
    shift: i64,
    num: Poly<Q>,
    den: BTreeMap<u64, u32>,
}

fn cyclotomic(d: u64) -> Poly<Q> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Poly<Q>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    // q^d - 1 = prod_{e | d} Phi_e
    let mut p = Poly::monomial(Q::one(), d as usize).sub(&Poly::one());
    for e in 1..d {
        if d % e == 0 {
            p = p.div_exact(&cyclotomic(e)).expect("cyclotomic factor divides");
        }
    }
    cache.lock().unwrap().insert(d, p.clone());
    p
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m % d == 0).collect()
}

impl CycloFrac {
    pub fn from_laurent(shift: i64, num: Poly<Q>) -> Self {
        let mut out = CycloFrac { shift, num, den: BTreeMap::new() };
        out.strip_q();
        out
    }

    pub fn constant(c: Q) -> Self {
        Self::from_laurent(0, Poly::constant(c))
    }

    pub fn q_pow(k: i64) -> Self {
        Self::from_laurent(k, Poly::one())
    }

    /// `1 / (1 + c*q^m)` for `c = +1` or `-1` and `m != 0`.
    pub fn recip_binomial(c: i64, m: i64) -> Self {
        assert!(m != 0 && (c == 1 || c == -1));
        let a = m.unsigned_abs();
        // q^a + 1 = prod over d | 2a, d does not divide a; q^a - 1 = prod over d | a.
        let factors: Vec<u64> = if c == 1 {
            divisors(2 * a).into_iter().filter(|d| a % d != 0).collect()
        } else {
            divisors(a)
        };
        let mut den = BTreeMap::new();
        for d in factors {
            *den.entry(d).or_insert(0) += 1;
        }
        // m > 0: 1/(1 + c q^a) = c' / (q^a + c) with c' = 1 if c = 1, -1 otherwise.
        // m < 0: 1/(1 + c q^-a) = q^a / (q^a + c).
        let (shift, sign) = if m > 0 { (0, c) } else { (a as i64, 1) };
        CycloFrac { shift, num: Poly::constant(Q::from(sign)), den }
    }

    fn strip_q(&mut self) {
        let k = self.num.low_order();
        if k > 0 && !self.num.is_zero() {
            self.num = self.num.shift_down(k);
            self.shift += k as i64;
        }
        if self.num.is_zero() {
            self.shift = 0;
            self.den.clear();
        }
    }

    fn reduce(&mut self) {
        self.strip_q();
        if self.num.is_zero() {
            return;
        }
        let keys: Vec<u64> = self.den.keys().copied().collect();
        for d in keys {
            let phi = cyclotomic(d);
            loop {
                let e = self.den[&d];
                if e == 0 {
                    break;
                }
                match self.num.div_exact(&phi) {
                    Some(qt) => {
                        self.num = qt;
                        *self.den.get_mut(&d).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, e| *e > 0);
    }

    fn lift_num(&self, den: &BTreeMap<u64, u32>) -> Poly<Q> {
        let mut p = self.num.clone();
        for (d, &e) in den {
            let have = self.den.get(d).copied().unwrap_or(0);
            for _ in have..e {
                p = p.mul(&cyclotomic(*d));
            }
        }
        p
    }

    pub fn to_scalar(&self) -> Scalar {
        let mut den = Poly::one();
        for (d, &e) in &self.den {
            den = den.mul(&cyclotomic(*d).pow(e));
        }
        let (num, den) = if self.shift >= 0 {
            (self.num.shift_up(self.shift as usize), den)
        } else {
            (self.num.clone(), den.shift_up((-self.shift) as usize))
        };
        // Factors are irreducible and monic, so only the leading
        // coefficient needs normalising.
        Scalar::from_ratfunc(RatFunc::from_canonical_parts(num, den))
    }

    /// Value at a rational `q`; `None` at a pole.
    pub fn eval(&self, q: &Q) -> Option<Q> {
        let mut v = self.num.eval(q).times(&q.pow_i(self.shift)?);
        for (d, &e) in &self.den {
            let f = cyclotomic(*d).eval(q);
            v = v.divide(&f.pow_u(e))?;
        }
        Some(v)
    }
}

impl Ring for CycloFrac {
    fn zero() -> Self {
        Self::constant(Q::zero())
    }
    fn one() -> Self {
        Self::constant(Q::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(Q::from(v))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut den = self.den.clone();
        for (d, &e) in &other.den {
            let slot = den.entry(*d).or_insert(0);
            *slot = (*slot).max(e);
        }
        let a = self.lift_num(&den);
        let b = other.lift_num(&den);
        let shift = self.shift.min(other.shift);
        let num = a
            .shift_up((self.shift - shift) as usize)
            .add(&b.shift_up((other.shift - shift) as usize));
        let mut out = CycloFrac { shift, num, den };
        out.reduce();
        out
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (d, &e) in &other.den {
            *den.entry(*d).or_insert(0) += e;
        }
        let mut out = CycloFrac { shift: self.shift + other.shift, num: self.num.mul(&other.num), den };
        out.reduce();
        out
    }
    fn negated(&self) -> Self {
        CycloFrac { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{QCtx, QPow};

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic(1).coeffs().len(), 2);
        assert_eq!(cyclotomic(6).eval(&Q::from(2)), Q::from(3));
        assert_eq!(cyclotomic(12).degree(), Some(4));
    }

    #[test]
    fn binomial_reciprocals_agree_with_scalars() {
        let c = QCtx::symbolic();
        for &(s, m) in &[(1i64, 3i64), (-1, 4), (1, -6), (-1, -2)] {
            let x = CycloFrac::recip_binomial(s, m).to_scalar();
            let y = Scalar::one().plus(&QPow::<Scalar>::q_pow(&c, m).times(&Scalar::int(s))).recip().unwrap();
            assert_eq!(x, y, "1/(1 + {s} q^{m})");
        }
    }

    #[test]
    fn sums_cancel_factors() {
        // 1/(1+q) + q/(1+q) = 1
        let a = CycloFrac::recip_binomial(1, 1);
        let b = a.times(&CycloFrac::q_pow(1));
        assert_eq!(a.plus(&b), CycloFrac::one());
    }
}
