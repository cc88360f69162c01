//! Truncated Laurent series in the spectral variable.

use super::{Field, Poly, RatFunc, Ring};
use thiserror::Error;

/// Where a rational function is expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Expansion {
    /// Power series in `u`.
    Zero,
    /// Power series in `u^-1`.
    Infinity,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("pole of order {order} at {point:?} lies below the requested window (factor {factor})")]
    PoleOutsideWindow { point: Expansion, order: i64, factor: String },
    #[error("windows are not closed on a common side; product is undefined")]
    IncompatibleWindows,
    #[error("leading coefficient is not invertible")]
    NotInvertible,
}

/// Coefficients `c_k` of `u^k` known exactly for `lo <= k <= hi`.
/// `closed_below` means every coefficient below `lo` vanishes, and
/// `closed_above` the same above `hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<C> {
    pub point: Expansion,
    lo: i64,
    hi: i64,
    coeffs: Vec<C>,
    closed_below: bool,
    closed_above: bool,
}

impl<C: Ring> LaurentSeries<C> {
    pub fn from_coeffs(point: Expansion, lo: i64, coeffs: Vec<C>, closed_below: bool, closed_above: bool) -> Self {
        let hi = lo + coeffs.len() as i64 - 1;
        LaurentSeries { point, lo, hi, coeffs, closed_below, closed_above }
    }

    /// A power series at zero known through `u^hi`.
    pub fn power_series(coeffs: Vec<C>) -> Self {
        Self::from_coeffs(Expansion::Zero, 0, coeffs, true, false)
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn is_closed_below(&self) -> bool {
        self.closed_below
    }

    pub fn is_closed_above(&self) -> bool {
        self.closed_above
    }

    /// Coefficient of `u^k` when it is known.
    pub fn coeff(&self, k: i64) -> Option<C> {
        if k < self.lo {
            return self.closed_below.then(C::zero);
        }
        if k > self.hi {
            return self.closed_above.then(C::zero);
        }
        Some(self.coeffs[(k - self.lo) as usize].clone())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    fn combine(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let lo = match (self.closed_below, other.closed_below) {
            (true, true) => self.lo.min(other.lo),
            (true, false) => other.lo,
            (false, true) => self.lo,
            (false, false) => self.lo.max(other.lo),
        };
        let hi = match (self.closed_above, other.closed_above) {
            (true, true) => self.hi.max(other.hi),
            (true, false) => other.hi,
            (false, true) => self.hi,
            (false, false) => self.hi.min(other.hi),
        };
        let coeffs = (lo..=hi)
            .map(|k| f(&self.coeff(k).expect("in window"), &other.coeff(k).expect("in window")))
            .collect();
        LaurentSeries {
            point: self.point,
            lo,
            hi,
            coeffs,
            closed_below: self.closed_below && other.closed_below,
            closed_above: self.closed_above && other.closed_above,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.plus(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.minus(b))
    }

    /// Product. Defined when both series are closed on the same side; the
    /// window is the sum of windows cut to the range where every
    /// contributing coefficient is known.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let (lo, hi, below, above) = if self.closed_below && other.closed_below {
            let lo = self.lo + other.lo;
            if self.closed_above && other.closed_above {
                (lo, self.hi + other.hi, true, true)
            } else {
                let mut hi = i64::MAX;
                if !self.closed_above {
                    hi = hi.min(self.hi + other.lo);
                }
                if !other.closed_above {
                    hi = hi.min(other.hi + self.lo);
                }
                (lo, hi, true, false)
            }
        } else if self.closed_above && other.closed_above {
            let hi = self.hi + other.hi;
            let mut lo = i64::MIN;
            if !self.closed_below {
                lo = lo.max(self.lo + other.hi);
            }
            if !other.closed_below {
                lo = lo.max(other.lo + self.hi);
            }
            (lo, hi, false, true)
        } else {
            return Err(SeriesError::IncompatibleWindows);
        };
        let mut coeffs = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        for k in lo..=hi {
            let mut acc = C::zero();
            for i in self.lo..=self.hi {
                let j = k - i;
                if j < other.lo || j > other.hi {
                    continue;
                }
                acc.add_product(&self.coeffs[(i - self.lo) as usize], &other.coeffs[(j - other.lo) as usize]);
            }
            coeffs.push(acc);
        }
        Ok(LaurentSeries { point: self.point, lo, hi, coeffs, closed_below: below, closed_above: above })
    }

    pub fn scale(&self, c: &C) -> Self {
        LaurentSeries { coeffs: self.coeffs.iter().map(|a| a.times(c)).collect(), ..self.clone() }
    }

    /// Multiply by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { lo: self.lo + k, hi: self.hi + k, ..self.clone() }
    }

    /// Substitute `u -> c*u`, given a way to form `c^k` for any integer `k`.
    pub fn scale_var(&self, pow: impl Fn(i64) -> C) -> Self {
        let coeffs = (self.lo..=self.hi).zip(&self.coeffs).map(|(k, a)| a.times(&pow(k))).collect();
        LaurentSeries { coeffs, ..self.clone() }
    }

    /// Restrict the exact window.
    pub fn truncate(&self, lo: i64, hi: i64) -> Self {
        let lo2 = lo.max(self.lo);
        let hi2 = hi.min(self.hi);
        let coeffs = (lo2..=hi2).map(|k| self.coeff(k).unwrap()).collect();
        LaurentSeries {
            point: self.point,
            lo: lo2,
            hi: hi2,
            coeffs,
            closed_below: self.closed_below && lo2 == self.lo,
            closed_above: self.closed_above && hi2 == self.hi,
        }
    }
}

impl<C: Field> LaurentSeries<C> {
    /// Expansion of a rational function, exact on `[lo, hi]`.
    pub fn expand(r: &RatFunc<C>, point: Expansion, lo: i64, hi: i64) -> Result<Self, SeriesError> {
        match point {
            Expansion::Zero => {
                let nv = r.num().low_order() as i64;
                let dv = r.den().low_order() as i64;
                let v = if r.num().is_zero() { lo } else { nv - dv };
                if v < 0 && lo > v {
                    return Err(SeriesError::PoleOutsideWindow { point, order: -v, factor: format!("u^{}", -v) });
                }
                let n0 = r.num().shift_down(nv as usize);
                let d0 = r.den().shift_down(dv as usize);
                let len = (hi - v + 1).max(0) as usize;
                let ser = power_series_quotient(&n0, &d0, len)?;
                let coeffs = (lo..=hi)
                    .map(|k| if k < v { C::zero() } else { ser[(k - v) as usize].clone() })
                    .collect();
                Ok(LaurentSeries { point, lo, hi, coeffs, closed_below: lo <= v, closed_above: false })
            }
            Expansion::Infinity => {
                let a = r.num().deg0() as i64;
                let b = r.den().deg0() as i64;
                let top = if r.num().is_zero() { hi } else { a - b };
                if top > 0 && hi < top {
                    return Err(SeriesError::PoleOutsideWindow { point, order: top, factor: format!("u^{top}") });
                }
                let nrev = r.num().reversed(a as usize);
                let drev = r.den().reversed(b as usize);
                let len = (top - lo + 1).max(0) as usize;
                let ser = power_series_quotient(&nrev, &drev, len)?;
                let coeffs = (lo..=hi)
                    .map(|k| if k > top { C::zero() } else { ser[(top - k) as usize].clone() })
                    .collect();
                Ok(LaurentSeries { point, lo, hi, coeffs, closed_below: false, closed_above: hi >= top })
            }
        }
    }

    /// Multiplicative inverse of a series closed below with invertible
    /// lowest coefficient.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if !self.closed_below {
            return Err(SeriesError::IncompatibleWindows);
        }
        let lead = self.coeffs.first().and_then(|c| c.recip()).ok_or(SeriesError::NotInvertible)?;
        let len = self.coeffs.len();
        let mut out: Vec<C> = Vec::with_capacity(len);
        for j in 0..len {
            let mut acc = if j == 0 { C::one() } else { C::zero() };
            for i in 1..=j {
                acc = acc.minus(&self.coeffs[i].times(&out[j - i]));
            }
            out.push(acc.times(&lead));
        }
        Ok(LaurentSeries {
            point: self.point,
            lo: -self.lo,
            hi: -self.lo + len as i64 - 1,
            coeffs: out,
            closed_below: true,
            closed_above: false,
        })
    }
}

/// First `len` coefficients of `n(u)/d(u)` with `d(0) != 0`.
fn power_series_quotient<C: Field>(n: &Poly<C>, d: &Poly<C>, len: usize) -> Result<Vec<C>, SeriesError> {
    let d0inv = d.coeff(0).recip().ok_or(SeriesError::NotInvertible)?;
    let mut out: Vec<C> = Vec::with_capacity(len);
    for j in 0..len {
        let mut acc = n.coeff(j);
        for i in 1..=j.min(d.deg0()) {
            let di = &d.coeffs()[i];
            if !di.is_zero() {
                acc = acc.minus(&di.times(&out[j - i]));
            }
        }
        out.push(acc.times(&d0inv));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Poly, Q};

    fn rat(n: &[i64], d: &[i64]) -> RatFunc<Q> {
        let p = |v: &[i64]| Poly::from_coeffs(v.iter().map(|&c| Q::from(c)).collect());
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn delta_function_from_two_expansions() {
        // a/(a-u) with a = 3
        let r = rat(&[3], &[3, -1]);
        let k = 5;
        let z = LaurentSeries::expand(&r, Expansion::Zero, -k, k).unwrap();
        let i = LaurentSeries::expand(&r, Expansion::Infinity, -k, k).unwrap();
        let d = z.sub(&i);
        for j in -k..=k {
            assert_eq!(d.coeff(j).unwrap(), Q::from(3).pow_i(-j).unwrap());
        }
    }

    #[test]
    fn product_windows() {
        let r = rat(&[1], &[1, -1]);
        let s = LaurentSeries::expand(&r, Expansion::Zero, 0, 6).unwrap();
        let t = LaurentSeries::expand(&rat(&[1, -1], &[1]), Expansion::Zero, 0, 3).unwrap();
        let p = s.mul(&t).unwrap();
        assert_eq!(p.window(), (0, 3));
        assert_eq!(p.coeff(0).unwrap(), Q::from(1));
        assert_eq!(p.coeff(2).unwrap(), Q::from(0));
        assert!(s.inverse().unwrap().coeff(1).unwrap() == Q::from(-1));
    }

    #[test]
    fn pole_outside_window_is_rejected() {
        let r = rat(&[1], &[0, 0, 1]);
        assert!(LaurentSeries::expand(&r, Expansion::Zero, -1, 3).is_err());
        assert!(LaurentSeries::expand(&r, Expansion::Zero, -2, 3).is_ok());
    }
}
