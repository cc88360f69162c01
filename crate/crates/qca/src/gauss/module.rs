//! A fused evaluation module together with its exact Gauss data.

use super::{gauss_decompose, GaussData, GaussError, NCMatrix};
use crate::field::{Comparable, EvalError, Point, QCtx, QMode, RatU, Scalar};
use crate::rep::{eval_params, fused_l, Sign};
use crate::tensor::TensorOperator;
use crate::CheckOptions;
use std::collections::BTreeMap;

/// Largest `(2n)^(m+1)` for which exact Gauss elimination runs with
/// symbolic `q`; beyond it the coefficient gcds in `Q(q)[u]` dominate.
const SYMBOLIC_GAUSS_LIMIT: usize = 16;

/// The `q` mode actually used and whether it replaced a symbolic request.
pub fn effective_mode(n: usize, m: usize, mode: &QMode) -> (QMode, bool) {
    if mode.is_symbolic() && (2 * n).pow(m as u32 + 1) > SYMBOLIC_GAUSS_LIMIT {
        (QMode::default_pinned(), true)
    } else {
        (mode.clone(), false)
    }
}

/// `L(u)` on `aux x W` with `W` the `m`-fold evaluation module, and its
/// Gauss decomposition over the field of rational functions in `u`.
#[derive(Clone, Debug)]
pub struct FusedModule {
    pub n: usize,
    pub m: usize,
    pub ctx: QCtx,
    pub q: Scalar,
    pub xi: Scalar,
    pub params: Vec<Scalar>,
    pub l: NCMatrix<RatU>,
    pub gauss: GaussData<RatU>,
    /// Symbolic `q` was requested but pinned `q` is used.
    pub pinned_fallback: bool,
}

impl FusedModule {
    pub fn build(n: usize, m: usize, opts: &CheckOptions) -> Result<Self, GaussError> {
        let (mode, pinned_fallback) = effective_mode(n, m, &opts.mode);
        let ctx = QCtx::new(mode);
        let params = eval_params(m, opts);
        let lop = fused_l(n, &params, Sign::Plus, &ctx).map_err(|e| GaussError::Setup(e.to_string()))?;
        let l = NCMatrix::from_operator(&lop.matrix);
        let gauss = gauss_decompose(&l)?;
        Ok(FusedModule { n, m, q: ctx.q(), xi: ctx.xi(n), ctx, params, l, gauss, pinned_fallback })
    }

    /// Report parameters, recording the effective `q` mode.
    pub fn report_params(&self, opts: &CheckOptions) -> BTreeMap<String, String> {
        let mut p = opts.params();
        p.insert("n".into(), self.n.to_string());
        p.insert("m".into(), self.m.to_string());
        p.insert("q-mode".into(), self.ctx.mode.label());
        if self.pinned_fallback {
            p.insert("q-fallback".into(), format!("symbolic requested; exact elimination uses {}", self.ctx.mode.label()));
        }
        let ps: Vec<String> = self.params.iter().map(|a| a.as_rational().map(|r| r.to_string()).unwrap_or_else(|| crate::field::format_scalar(a))).collect();
        p.insert("params".into(), ps.join(","));
        p
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn wdims(&self) -> &[usize] {
        self.l.wdims()
    }

    pub fn h_l(&self) -> usize {
        self.l.height()
    }

    /// `L(x)`.
    pub fn l_at(&self, x: &Scalar) -> Result<NCMatrix<Scalar>, EvalError> {
        self.l.eval(x).ok_or(EvalError::Singular)
    }

    /// `q^k`.
    pub fn qp(&self, k: i64) -> Scalar {
        crate::field::QPow::<Scalar>::q_pow(&self.ctx, k)
    }
}

/// Grid coordinate as a scalar.
pub fn coord(p: &Point, name: &str) -> Scalar {
    Scalar::rational(p.get(name).clone())
}

pub fn eval_at(op: &TensorOperator<RatU>, x: &Scalar) -> Result<TensorOperator<Scalar>, EvalError> {
    super::eval_op(op, x).ok_or(EvalError::Singular)
}

/// Labelled operator values compared entry by entry.
#[derive(Clone, Debug, PartialEq)]
pub struct OpList(pub Vec<(String, TensorOperator<Scalar>)>);

impl OpList {
    pub fn new() -> Self {
        OpList(Vec::new())
    }

    pub fn push(&mut self, label: impl Into<String>, op: TensorOperator<Scalar>) {
        self.0.push((label.into(), op));
    }
}

impl Default for OpList {
    fn default() -> Self {
        Self::new()
    }
}

impl Comparable for OpList {
    fn first_difference(&self, other: &Self) -> Option<String> {
        if self.0.len() != other.0.len() {
            return Some(format!("lists differ in length: {} vs {}", self.0.len(), other.0.len()));
        }
        for ((la, a), (_, b)) in self.0.iter().zip(&other.0) {
            if let Some(d) = a.first_difference(b) {
                return Some(format!("{la}: {d}"));
            }
        }
        None
    }
}
