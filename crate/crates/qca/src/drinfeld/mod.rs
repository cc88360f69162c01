//! Drinfeld-type generating series extracted from Gauss data, and the
//! relation suites they satisfy.
//!
//! Conventions in the evaluation module: `X^+_i(u)` is the difference of
//! the expansions of `e_{i,i+1}(u)` at zero and at infinity, `X^-_i(u)`
//! the same for `f_{i+1,i}(u)`, and `X_{i,k}` is the coefficient of
//! `u^-k`. For `k_i(u) = h_i(u)^-1 h_{i+1}(u)`, `k^0_{i,p}` and
//! `k^inf_{i,p}` are the coefficients of `u^-p` of the two expansions.

mod center;
mod main_map;
mod relations;

pub use center::check_center;
pub use main_map::check_main_map;
pub use relations::check_drinfeld;

use crate::field::{Expansion, Field, LaurentSeries, QCtx, QPow, RatU, Ring, Scalar, SeriesError};
use crate::gauss::{eval_op, GaussData, GaussError};
use crate::tensor::TensorOperator;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DrinfeldError {
    #[error("series expansion: {0}")]
    Series(#[from] SeriesError),
    #[error("h_{0} has no invertible constant term")]
    NotInvertible(usize),
    #[error("gauss data: {0}")]
    Gauss(#[from] GaussError),
    #[error("mode {mode} of {name} lies outside the extracted window")]
    Window { name: String, mode: i64 },
}

/// Operators indexed by consecutive integer modes.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeTable {
    lo: i64,
    modes: Vec<TensorOperator<Scalar>>,
}

impl ModeTable {
    pub fn new(lo: i64, modes: Vec<TensorOperator<Scalar>>) -> Self {
        ModeTable { lo, modes }
    }

    /// Inclusive mode range.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.lo + self.modes.len() as i64 - 1)
    }

    pub fn get(&self, k: i64) -> Option<&TensorOperator<Scalar>> {
        if k < self.lo {
            return None;
        }
        self.modes.get((k - self.lo) as usize)
    }

    /// Multiplies mode `k` by `f(k)`.
    pub fn scaled(&self, f: impl Fn(i64) -> Scalar) -> Self {
        let modes = self.modes.iter().enumerate().map(|(j, m)| m.scale(&f(self.lo + j as i64))).collect();
        ModeTable { lo: self.lo, modes }
    }

    pub fn is_zero(&self) -> bool {
        self.modes.iter().all(|m| m.is_zero())
    }
}

/// Coefficients of `u^p` for `lo <= p <= hi` of an operator-valued rational
/// function expanded at `point`.
pub fn expand_operator(op: &TensorOperator<RatU>, point: Expansion, lo: i64, hi: i64) -> Result<Vec<TensorOperator<Scalar>>, SeriesError> {
    let size = op.size();
    let mut out: Vec<TensorOperator<Scalar>> = (lo..=hi).map(|_| TensorOperator::zeros(op.dims())).collect();
    for (idx, r) in op.entries().iter().enumerate() {
        if r.num().is_zero() {
            continue;
        }
        let s = LaurentSeries::expand(r, point, lo, hi)?;
        for (j, p) in (lo..=hi).enumerate() {
            let c = s.coeff(p).expect("inside the window");
            if !c.is_zero() {
                out[j].set(idx / size, idx % size, c);
            }
        }
    }
    Ok(out)
}

/// Modes `k` in `[-w, w]` of the distribution `r_0(u) - r_inf(u)`.
pub fn delta_modes(op: &TensorOperator<RatU>, w: i64) -> Result<ModeTable, SeriesError> {
    let zero = expand_operator(op, Expansion::Zero, -w, w)?;
    let inf = expand_operator(op, Expansion::Infinity, -w, w)?;
    // mode k sits at u^-k, i.e. index w - k
    let modes = (-w..=w).map(|k| {
        let j = (w - k) as usize;
        zero[j].sub(&inf[j]).expect("shape")
    });
    Ok(ModeTable::new(-w, modes.collect()))
}

/// Modes `p` in `[-w, w]` of one expansion, `p` labelling `u^-p`.
pub fn series_modes(op: &TensorOperator<RatU>, point: Expansion, w: i64) -> Result<ModeTable, SeriesError> {
    let mut c = expand_operator(op, point, -w, w)?;
    c.reverse();
    Ok(ModeTable::new(-w, c))
}

/// Generating series of the Gaussian generators of one module.
#[derive(Clone, Debug)]
pub struct DrinfeldSeries {
    pub n: usize,
    pub ctx: QCtx,
    /// Window `K` of the `X` mode tables.
    pub window: i64,
    pub xp: Vec<ModeTable>,
    pub xm: Vec<ModeTable>,
    /// `h_1 .. h_{n+1}` and their inverses.
    pub h: Vec<TensorOperator<RatU>>,
    pub h_inv: Vec<TensorOperator<RatU>>,
    /// `k_i(u) = h_i^-1 h_{i+1}` for `i = 1..n`.
    pub k: Vec<TensorOperator<RatU>>,
    /// Expansion at zero, modes `[-2K-2, 2K+2]`.
    pub k_zero: Vec<ModeTable>,
    /// Expansion at infinity, modes `[-2K-2, 2K+2]`.
    pub k_inf: Vec<ModeTable>,
}

/// Reads off the series from the Gauss data of `L(u)` on `aux x W`.
pub fn extract_drinfeld(g: &GaussData<RatU>, n: usize, ctx: &QCtx, window: usize) -> Result<DrinfeldSeries, DrinfeldError> {
    let w = window as i64;
    if g.h.len() < n + 1 {
        return Err(DrinfeldError::Gauss(GaussError::IndexConstraint(format!("need {} diagonal factors, have {}", n + 1, g.h.len()))));
    }
    let h: Vec<_> = g.h[..=n].to_vec();
    let h_inv: Vec<_> = g.h_inv[..=n].to_vec();
    for (j, hj) in h.iter().enumerate() {
        let c0 = eval_op(hj, &Scalar::zero()).ok_or(DrinfeldError::NotInvertible(j + 1))?;
        c0.inverse().map_err(|_| DrinfeldError::NotInvertible(j + 1))?;
    }
    let mut xp = Vec::with_capacity(n);
    let mut xm = Vec::with_capacity(n);
    for i in 1..=n {
        xp.push(delta_modes(g.e_entry(i, i + 1), w)?);
        xm.push(delta_modes(g.f_entry(i + 1, i), w)?);
    }
    let k: Vec<_> = (0..n).map(|i| h_inv[i].mul(&h[i + 1]).expect("shape")).collect();
    let kw = 2 * w + 2;
    let k_zero = k.iter().map(|r| series_modes(r, Expansion::Zero, kw)).collect::<Result<_, _>>()?;
    let k_inf = k.iter().map(|r| series_modes(r, Expansion::Infinity, kw)).collect::<Result<_, _>>()?;
    Ok(DrinfeldSeries { n, ctx: ctx.clone(), window: w, xp, xm, h, h_inv, k, k_zero, k_inf })
}

impl DrinfeldSeries {
    pub fn q(&self, k: i64) -> Scalar {
        QPow::<Scalar>::q_pow(&self.ctx, k)
    }

    /// `q_i`, 1-based.
    pub fn qi(&self, i: usize) -> Scalar {
        if i < self.n {
            self.q(1)
        } else {
            self.q(2)
        }
    }

    /// `q_i - q_i^-1`.
    pub fn qi_diff(&self, i: usize) -> Scalar {
        let qi = self.qi(i);
        qi.minus(&qi.recip().expect("q is nonzero"))
    }

    /// The spectral shift `s_i` of the main map: `X_i(u q^{s_i})`.
    pub fn shift(&self, i: usize) -> i64 {
        if i < self.n {
            i as i64
        } else {
            self.n as i64 + 1
        }
    }

    pub fn x(&self, plus: bool, i: usize) -> &ModeTable {
        if plus {
            &self.xp[i - 1]
        } else {
            &self.xm[i - 1]
        }
    }

    /// `x^±_{i,k} = q^{-s_i k} X^±_{i,k} / (q_i - q_i^-1)`.
    pub fn x_main(&self, plus: bool, i: usize) -> ModeTable {
        let s = self.shift(i);
        let c = self.qi_diff(i).recip().expect("q_i is not a root of unity");
        self.x(plus, i).scaled(|k| self.q(-s * k).times(&c))
    }

    /// `psi_{i,p} = q^{-s_i p} k^inf_{i,p}`.
    pub fn psi(&self, i: usize) -> ModeTable {
        let s = self.shift(i);
        self.k_inf[i - 1].scaled(|p| self.q(-s * p))
    }

    /// `phi_{i,p} = q^{-s_i p} k^0_{i,p}`.
    pub fn phi(&self, i: usize) -> ModeTable {
        let s = self.shift(i);
        self.k_zero[i - 1].scaled(|p| self.q(-s * p))
    }
}

/// Mode lookup that reports a window violation.
fn mode<'a>(t: &'a ModeTable, name: &str, k: i64) -> Result<&'a TensorOperator<Scalar>, DrinfeldError> {
    t.get(k).ok_or_else(|| DrinfeldError::Window { name: name.to_string(), mode: k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Poly, RatFunc};

    fn ratu(num: &[i64], den: &[i64]) -> RatU {
        let p = |v: &[i64]| Poly::from_coeffs(v.iter().map(|&c| Scalar::int(c)).collect());
        RatFunc::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn toy_entry_gives_delta_modes() {
        // a/(a - u) with a = 3: X_k = a^k
        let op = TensorOperator::diagonal(vec![ratu(&[3], &[3, -1])]);
        let t = delta_modes(&op, 4).unwrap();
        for k in -4..=4 {
            assert_eq!(*t.get(k).unwrap().get(0, 0), Scalar::int(3).pow_i(k).unwrap());
        }
    }

    #[test]
    fn polynomial_entry_has_no_modes() {
        let op = TensorOperator::diagonal(vec![ratu(&[1, 2, 5], &[1])]);
        assert!(delta_modes(&op, 3).unwrap().is_zero());
    }

    #[test]
    fn series_modes_label_negative_powers() {
        // 1/(1 - u) at zero: u^p for p >= 0, i.e. modes p <= 0
        let op = TensorOperator::diagonal(vec![ratu(&[1], &[1, -1])]);
        let t = series_modes(&op, Expansion::Zero, 3).unwrap();
        assert!(t.get(1).unwrap().is_zero());
        assert_eq!(*t.get(-2).unwrap().get(0, 0), Scalar::int(1));
    }
}
