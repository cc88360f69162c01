//! Constant and spectral-parameter R-matrices of type C and their
//! intrinsic identities.
//!
//! Identities are certified on cleared, homogenised matrices. With
//! `u = x/y`, the matrix
//!
//! ```text
//! H(x, y) = (x - y)(x - xi y) R + (q - q^-1)(x - xi y) y P - (q - q^-1)(x - y) xi y Q
//! ```
//!
//! equals `(xq - yq^-1)(x - xi y) Rbar(x/y)`, a polynomial in `x, y` whose
//! coefficients are Laurent polynomials in `q`. Evaluating at integer
//! points therefore stays inside `Z[q, q^-1]` in symbolic mode.

use crate::field::{
    verify_identity, CycloFrac, Field, GridPolicy, LaurentPoly, LaurentQ, LaurentSeries, PinnedQ, Point,
    Poly, QCtx, QMode, QPow, RatU, Ring, SampleRing, Scalar, Q,
};
use crate::report::{timed, CheckReport, Item};
use crate::tensor::{IndexData, TensorError, TensorOperator};
use crate::CheckOptions;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RMatrixError {
    #[error("rank n must be at least 1")]
    InvalidRank,
    #[error("unknown variant `{0}` (expected full, bar, hat or typeA)")]
    InvalidVariant(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// `P`, `Q`, `R`, `D` and the constants they use, over a coefficient ring.
#[derive(Clone, Debug)]
pub struct RMatrixSet<T> {
    pub n: usize,
    pub index: IndexData,
    pub p_op: TensorOperator<T>,
    pub q_op: TensorOperator<T>,
    pub r_op: TensorOperator<T>,
    /// Diagonal of `D = diag[q^n, ..., q, q^-1, ..., q^-n]`.
    pub d: Vec<T>,
    pub d_inv: Vec<T>,
    pub q: T,
    pub q_inv: T,
    /// `xi = q^(-2n-2)`.
    pub xi: T,
    /// Negative control: adds 1 to the entry `<1,2|Rbar(u)|1,2>`.
    pub perturb: bool,
}

impl<T: Ring> RMatrixSet<T> {
    pub fn build(n: usize, qp: &impl QPow<T>) -> Result<Self, RMatrixError> {
        let index = IndexData::new(n).map_err(|_| RMatrixError::InvalidRank)?;
        let dim = index.dim();
        let dims = [dim, dim];
        let at = |a: usize, b: usize| a * dim + b;
        let q = qp.q_pow(1);
        let q_inv = qp.q_pow(-1);
        let qq = q.minus(&q_inv);
        let signed_q = |a: usize, b: usize| {
            let v = qp.q_pow(index.bar0(a) - index.bar0(b));
            if index.eps0(a) * index.eps0(b) == 1 {
                v
            } else {
                v.negated()
            }
        };

        let mut p_op = TensorOperator::zeros(&dims);
        let mut q_op = TensorOperator::zeros(&dims);
        let mut r_op = TensorOperator::zeros(&dims);
        for a in 0..dim {
            for b in 0..dim {
                p_op.set(at(a, b), at(b, a), T::one());
                q_op.set(at(index.prime0(a), a), at(index.prime0(b), b), signed_q(a, b));
                let diag = if a == b {
                    q.clone()
                } else if b == index.prime0(a) {
                    q_inv.clone()
                } else {
                    T::one()
                };
                r_op.set(at(a, b), at(a, b), diag);
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                if a < b {
                    let v = r_op.get(at(a, b), at(b, a)).plus(&qq);
                    r_op.set(at(a, b), at(b, a), v);
                }
                if a > b {
                    let (r, c) = (at(index.prime0(a), a), at(index.prime0(b), b));
                    let v = r_op.get(r, c).minus(&qq.times(&signed_q(a, b)));
                    r_op.set(r, c, v);
                }
            }
        }
        let d = (0..dim).map(|a| qp.q_pow(index.bar0(a))).collect();
        let d_inv = (0..dim).map(|a| qp.q_pow(-index.bar0(a))).collect();
        Ok(RMatrixSet { n, index, p_op, q_op, r_op, d, d_inv, q, q_inv, xi: qp.q_pow(-2 * n as i64 - 2), perturb: false })
    }

    pub fn dim(&self) -> usize {
        self.index.dim()
    }

    pub fn with_perturbation(mut self, on: bool) -> Self {
        self.perturb = on;
        self
    }

    fn qq(&self) -> T {
        self.q.minus(&self.q_inv)
    }

    /// `(xq - yq^-1)(x - xi y)`, the denominator cleared by [`Self::rbar_cleared`].
    pub fn rbar_den(&self, x: &T, y: &T) -> T {
        x.times(&self.q).minus(&y.times(&self.q_inv)).times(&x.minus(&self.xi.times(y)))
    }

    /// `H(x, y) = (xq - yq^-1)(x - xi y) Rbar(x/y)`.
    pub fn rbar_cleared(&self, x: &T, y: &T) -> TensorOperator<T> {
        let x_y = x.minus(y);
        let x_xy = x.minus(&self.xi.times(y));
        let qq = self.qq();
        let a = x_y.times(&x_xy);
        let b = qq.times(&x_xy).times(y);
        let c = qq.times(&x_y).times(&self.xi).times(y).negated();
        let mut h = self.r_op.scale(&a).add(&self.p_op.scale(&b)).expect("same shape");
        h = h.add(&self.q_op.scale(&c)).expect("same shape");
        if self.perturb {
            let k = 1; // flat index of (1,2) in 0-based (0,1)
            let v = h.get(k, k).plus(&self.rbar_den(x, y));
            h.set(k, k, v);
        }
        h
    }

    /// `(qx - q^-1 y) R_A(x/y)` on `C^n (x) C^n`.
    pub fn typea_cleared(&self, x: &T, y: &T) -> TensorOperator<T> {
        let n = self.n;
        let qq = self.qq();
        let mut m = TensorOperator::zeros(&[n, n]);
        for a in 0..n {
            for b in 0..n {
                let rc = a * n + b;
                if a == b {
                    m.set(rc, rc, self.q.times(x).minus(&self.q_inv.times(y)));
                } else {
                    m.set(rc, rc, x.minus(y));
                    let off = if a > b { qq.times(y) } else { qq.times(x) };
                    m.set(rc, b * n + a, off);
                }
            }
        }
        m
    }

    pub fn typea_den(&self, x: &T, y: &T) -> T {
        self.q.times(x).minus(&self.q_inv.times(y))
    }

    /// `D` acting on site `site` of `shape`, as a full operator.
    pub fn d_on(&self, site: usize, dims: &[usize], inverse: bool) -> TensorOperator<T> {
        let diag = TensorOperator::diagonal(if inverse { self.d_inv.clone() } else { self.d.clone() });
        TensorOperator::embed(&diag, &[site], dims).expect("site has dimension 2n")
    }
}

impl<T: Field> RMatrixSet<T> {
    /// `Rbar(x/y)` as a matrix over the field.
    pub fn rbar(&self, x: &T, y: &T) -> Option<TensorOperator<T>> {
        let inv = self.rbar_den(x, y).recip()?;
        Some(self.rbar_cleared(x, y).scale(&inv))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Full,
    Bar,
    Hat,
    TypeA,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Full => "full",
            Variant::Bar => "bar",
            Variant::Hat => "hat",
            Variant::TypeA => "typeA",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = RMatrixError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Variant::Full),
            "bar" => Ok(Variant::Bar),
            "hat" => Ok(Variant::Hat),
            "typeA" | "typea" => Ok(Variant::TypeA),
            _ => Err(RMatrixError::InvalidVariant(s.to_string())),
        }
    }
}

/// A spectral-parameter R-matrix with exact entries in `u`.
#[derive(Clone, Debug)]
pub struct ParamRMatrix {
    pub variant: Variant,
    pub n: usize,
    /// For `full` this is the exact `Rbar(u)`; the full matrix is
    /// `g(u)` times it.
    pub entries: TensorOperator<RatU>,
    /// Truncation of `g(u)` for the full variant.
    pub scalar_factor: Option<LaurentSeries<Scalar>>,
}

impl ParamRMatrix {
    /// Entries at a value of `u`; `None` at a pole.
    pub fn at(&self, u: &Scalar) -> Option<TensorOperator<Scalar>> {
        self.entries.try_map(|r| r.eval(u).ok_or(())).ok()
    }
}

/// Builds a spectral-parameter R-matrix. `trunc` is the order of `g(u)`
/// kept for the full variant.
pub fn build_param(n: usize, variant: Variant, ctx: &QCtx, trunc: usize) -> Result<ParamRMatrix, RMatrixError> {
    let set = RMatrixSet::<RatU>::build(n, ctx)?;
    let u = RatU::var();
    let one = RatU::one();
    let entries = match variant {
        Variant::Bar | Variant::Full => set.rbar(&u, &one).expect("denominator is a nonzero polynomial"),
        Variant::Hat => {
            // Rhat(u) = H(u, 1) / ((u - 1)(u - xi))
            let den = u.minus(&one).times(&u.minus(&set.xi));
            set.rbar_cleared(&u, &one).scale(&den.recip().expect("nonzero"))
        }
        Variant::TypeA => {
            let inv = set.typea_den(&u, &one).recip().expect("nonzero");
            set.typea_cleared(&u, &one).scale(&inv)
        }
    };
    let scalar_factor = match variant {
        Variant::Full => Some(g_series(n, trunc, ctx)),
        _ => None,
    };
    Ok(ParamRMatrix { variant, n, entries, scalar_factor })
}

/// How the coefficients of `f(u)` are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FMethod {
    /// From the functional equation `f(u) f(u xi) = ...`.
    Recursion,
    /// From the infinite product, summing each geometric series in closed form.
    Product,
}

fn xi_exp(n: usize) -> i64 {
    -(2 * n as i64) - 2
}

/// Coefficient of `u^k` in `1/((1-uq^-2)(1-uq^2)(1-u xi)(1-u xi^-1))`.
fn rhs_coeff(n: usize, k: usize) -> CycloFrac {
    let e = [-2, 2, xi_exp(n), -xi_exp(n)];
    let mut counts: std::collections::BTreeMap<i64, i64> = std::collections::BTreeMap::new();
    for a in 0..=k {
        for b in 0..=k - a {
            for c in 0..=k - a - b {
                let d = k - a - b - c;
                let s = e[0] * a as i64 + e[1] * b as i64 + e[2] * c as i64 + e[3] * d as i64;
                *counts.entry(s).or_insert(0) += 1;
            }
        }
    }
    laurent_cyclo(&counts)
}

fn laurent_cyclo(counts: &std::collections::BTreeMap<i64, i64>) -> CycloFrac {
    let Some((&lo, _)) = counts.iter().next() else {
        return CycloFrac::zero();
    };
    let hi = *counts.keys().last().unwrap();
    let mut coeffs = vec![Q::from(0); (hi - lo + 1) as usize];
    for (&s, &c) in counts {
        coeffs[(s - lo) as usize] = Q::from(c);
    }
    CycloFrac::from_laurent(lo, Poly::from_coeffs(coeffs))
}

/// `f_0, ..., f_k` as exact functions of `q`.
pub fn scalar_f(n: usize, k: usize, method: FMethod) -> Vec<CycloFrac> {
    scalar_f_with_xi(n, k, method, xi_exp(n))
}

/// As [`scalar_f`] with `xi = q^xi_exp`; a wrong exponent is the
/// negative control of the scalar-function suite.
fn scalar_f_with_xi(n: usize, k: usize, method: FMethod, xe: i64) -> Vec<CycloFrac> {
    let mut f = vec![CycloFrac::one()];
    match method {
        FMethod::Recursion => {
            for m in 1..=k {
                let mut acc = rhs_coeff(n, m);
                for j in 1..m {
                    let t = f[j].times(&f[m - j]).times(&CycloFrac::q_pow(xe * (m - j) as i64));
                    acc = acc.minus(&t);
                }
                f.push(acc.times(&CycloFrac::recip_binomial(1, xe * m as i64)));
            }
        }
        FMethod::Product => {
            let num = [0, -2 + xe, 2 + xe, 2 * xe];
            let den = [-xe, xe, 2, -2];
            let mut l = vec![CycloFrac::zero()];
            for j in 1..=k as i64 {
                let mut counts = std::collections::BTreeMap::new();
                for e in den {
                    *counts.entry(e * j).or_insert(0) += 1;
                }
                for e in num {
                    *counts.entry(e * j).or_insert(0) -= 1;
                }
                counts.retain(|_, c| *c != 0);
                l.push(laurent_cyclo(&counts).times(&CycloFrac::recip_binomial(-1, 2 * xe * j)));
            }
            for m in 1..=k {
                let mut acc = CycloFrac::zero();
                for j in 1..=m {
                    acc = acc.plus(&l[j].times(&f[m - j]));
                }
                f.push(acc.times(&CycloFrac::constant(Q::from_signeds(1, m as i64))));
            }
        }
    }
    f
}

fn cyclo_to_scalar(c: &CycloFrac, ctx: &QCtx) -> Scalar {
    match &ctx.mode {
        QMode::Symbolic => c.to_scalar(),
        QMode::Pinned(v) => Scalar::rational(c.eval(v).expect("pinned q is not a root of unity")),
    }
}

/// `f(u)` through order `k` as a power series.
pub fn f_series(n: usize, k: usize, ctx: &QCtx) -> LaurentSeries<Scalar> {
    let f = scalar_f(n, k, FMethod::Recursion);
    LaurentSeries::power_series(f.iter().map(|c| cyclo_to_scalar(c, ctx)).collect())
}

/// `g(u) = f(u)(u - q^-2)(u - xi)` through order `k`.
pub fn g_series(n: usize, k: usize, ctx: &QCtx) -> LaurentSeries<Scalar> {
    let g = g_coeffs(&scalar_f(n, k, FMethod::Recursion), n, 0);
    LaurentSeries::power_series(g.iter().map(|c| cyclo_to_scalar(c, ctx)).collect())
}

/// Power-series product truncated to the shorter length.
fn conv(a: &[CycloFrac], b: &[CycloFrac]) -> Vec<CycloFrac> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|k| {
            let mut acc = CycloFrac::zero();
            for i in 0..=k {
                if !a[i].is_zero() && !b[k - i].is_zero() {
                    acc = acc.plus(&a[i].times(&b[k - i]));
                }
            }
            acc
        })
        .collect()
}

/// `(c0 + c1 u)` as a truncated series of length `len`.
fn linear(c0: CycloFrac, c1: CycloFrac, len: usize) -> Vec<CycloFrac> {
    let mut v = vec![CycloFrac::zero(); len];
    if len > 0 {
        v[0] = c0;
    }
    if len > 1 {
        v[1] = c1;
    }
    v
}

/// Coefficients of `g(u q^s)` where `f` holds `f_0..f_k`.
fn g_coeffs(f: &[CycloFrac], n: usize, s: i64) -> Vec<CycloFrac> {
    let len = f.len();
    let fs: Vec<CycloFrac> = f.iter().enumerate().map(|(k, c)| c.times(&CycloFrac::q_pow(s * k as i64))).collect();
    let a = linear(CycloFrac::q_pow(-2).negated(), CycloFrac::q_pow(s), len);
    let b = linear(CycloFrac::q_pow(xi_exp(n)).negated(), CycloFrac::q_pow(s), len);
    conv(&conv(&fs, &a), &b)
}

/// Negative powers of `q` in `1/(1 - c u)` for `c = q^e`.
fn geometric(e: i64, len: usize) -> Vec<CycloFrac> {
    (0..len).map(|k| CycloFrac::q_pow(e * k as i64)).collect()
}

/// Series of `g(u) g(u xi) s(u)` where `s(u)` is the crossing scalar of
/// `Rbar`; the crossing relation for `R(u)` says this is `xi^2 q^-2`.
fn full_crossing_series(n: usize, f: &[CycloFrac]) -> Vec<CycloFrac> {
    let len = f.len();
    let xe = xi_exp(n);
    let g = g_coeffs(f, n, 0);
    let gx = g_coeffs(f, n, xe);
    // s(u) = (u - q^2)(u xi - 1) / ((1 - u)(1 - u xi q^2))
    let num = conv(
        &linear(CycloFrac::q_pow(2).negated(), CycloFrac::one(), len),
        &linear(CycloFrac::one().negated(), CycloFrac::q_pow(xe), len),
    );
    let s = conv(&conv(&num, &geometric(0, len)), &geometric(xe + 2, len));
    conv(&conv(&g, &gx), &s)
}

fn params(n: usize, m: Option<usize>, opts: &CheckOptions) -> std::collections::BTreeMap<String, String> {
    let mut p = opts.params();
    p.insert("n".into(), n.to_string());
    if let Some(m) = m {
        p.insert("m".into(), m.to_string());
    }
    p
}

fn sample<T: SampleRing>(p: &Point, name: &str) -> T {
    T::from_sample(p.get(name))
}

/// YBE for `Rbar` with `u = x1/x2`, `v = x2`, after multiplying by the
/// three denominators. Each side has degree at most 4 in `x1` and `x2`.
fn ybe_bar<T: SampleRing>(set: &RMatrixSet<T>, policy: &GridPolicy) -> Item {
    let d = set.dim();
    let dims = [d, d, d];
    let one = T::one();
    let lhs = |p: &Point| {
        let (x1, x2) = (sample::<T>(p, "x1"), sample::<T>(p, "x2"));
        let id = TensorOperator::identity(&dims);
        Ok(id
            .apply_left(&set.rbar_cleared(&x2, &one), &[1, 2])
            .and_then(|m| m.apply_left(&set.rbar_cleared(&x1, &one), &[0, 2]))
            .and_then(|m| m.apply_left(&set.rbar_cleared(&x1, &x2), &[0, 1]))
            .expect("shapes agree"))
    };
    let rhs = |p: &Point| {
        let (x1, x2) = (sample::<T>(p, "x1"), sample::<T>(p, "x2"));
        let id = TensorOperator::identity(&dims);
        Ok(id
            .apply_left(&set.rbar_cleared(&x1, &x2), &[0, 1])
            .and_then(|m| m.apply_left(&set.rbar_cleared(&x1, &one), &[0, 2]))
            .and_then(|m| m.apply_left(&set.rbar_cleared(&x2, &one), &[1, 2]))
            .expect("shapes agree"))
    };
    Item::from_verdict("ybe.bar", "solution of the Yang–Baxter equation", verify_identity(lhs, rhs, &[("x1", 4), ("x2", 4)], policy))
}

fn ybe_typea<T: SampleRing>(set: &RMatrixSet<T>, policy: &GridPolicy) -> Item {
    let d = set.n;
    let dims = [d, d, d];
    let one = T::one();
    let side = |p: &Point, left: bool| {
        let (x1, x2) = (sample::<T>(p, "x1"), sample::<T>(p, "x2"));
        let a12 = set.typea_cleared(&x1, &x2);
        let a13 = set.typea_cleared(&x1, &one);
        let a23 = set.typea_cleared(&x2, &one);
        let id = TensorOperator::identity(&dims);
        let order: [(&TensorOperator<T>, [usize; 2]); 3] =
            if left { [(&a23, [1, 2]), (&a13, [0, 2]), (&a12, [0, 1])] } else { [(&a12, [0, 1]), (&a13, [0, 2]), (&a23, [1, 2])] };
        let mut m = id;
        for (op, pos) in order {
            m = m.apply_left(op, &pos).expect("shapes agree");
        }
        Ok(m)
    };
    Item::from_verdict(
        "ybe.typeA",
        "the R-matrix used in type A",
        verify_identity(|p: &Point| side(p, true), |p: &Point| side(p, false), &[("x1", 2), ("x2", 2)], policy),
    )
}

/// `H(u,1) P H(1,u) P = (uq - q^-1)(u - xi)(q - uq^-1)(1 - xi u)`.
fn unitarity_bar<T: SampleRing>(set: &RMatrixSet<T>, policy: &GridPolicy) -> Item {
    let one = T::one();
    let lhs = |p: &Point| {
        let u = sample::<T>(p, "u");
        let h21 = set.rbar_cleared(&one, &u).swap_sites(0, 1).expect("two sites");
        Ok(set.rbar_cleared(&u, &one).mul(&h21).expect("same shape"))
    };
    let rhs = |p: &Point| {
        let u = sample::<T>(p, "u");
        let s = set.rbar_den(&u, &one).times(&set.rbar_den(&one, &u));
        Ok(TensorOperator::identity(&[set.dim(), set.dim()]).scale(&s))
    };
    Item::from_verdict("unitarity.bar", "Note the unitarity property", verify_identity(lhs, rhs, &[("u", 4)], policy))
}

/// `H(u,1) D_1 H(u xi,1)^t1 D_1^-1` against the cleared crossing scalar.
fn crossing_bar<T: SampleRing>(set: &RMatrixSet<T>, policy: &GridPolicy, drop_d: bool) -> Item {
    let one = T::one();
    let d = set.dim();
    let dims = [d, d];
    let lhs = |p: &Point| {
        let u = sample::<T>(p, "u");
        let ux = u.times(&set.xi);
        let t = set.rbar_cleared(&ux, &one).partial_transpose(0, &set.index).expect("aux site");
        let m = if drop_d {
            set.rbar_cleared(&u, &one).mul(&t).expect("same shape")
        } else {
            let dd = set.d_on(0, &dims, false);
            let di = set.d_on(0, &dims, true);
            set.rbar_cleared(&u, &one).mul(&dd).and_then(|m| m.mul(&t)).and_then(|m| m.mul(&di)).expect("same shape")
        };
        Ok(m)
    };
    let rhs = |p: &Point| {
        let u = sample::<T>(p, "u");
        // (uq - q^-1)(u - xi) xi q^-1 (u - q^2)(u xi - 1)
        let s = set
            .rbar_den(&u, &one)
            .times(&set.xi)
            .times(&set.q_inv)
            .times(&u.minus(&set.q.times(&set.q)))
            .times(&u.times(&set.xi).minus(&one));
        Ok(TensorOperator::identity(&dims).scale(&s))
    };
    Item::from_verdict("crossing.bar", "crossing symmetry relations", verify_identity(lhs, rhs, &[("u", 4)], policy))
        .with_note("scalar (u-q^2)(u xi-1)/((1-u)(1-u xi q^2))")
}

enum Ring2 {
    Symbolic(RMatrixSet<LaurentPoly>),
    Pinned(RMatrixSet<Q>),
}

fn ring_set(n: usize, mode: &QMode, perturb: bool) -> Result<Ring2, RMatrixError> {
    Ok(match mode {
        QMode::Symbolic => Ring2::Symbolic(RMatrixSet::build(n, &LaurentQ)?.with_perturbation(perturb)),
        QMode::Pinned(v) => Ring2::Pinned(RMatrixSet::build(n, &PinnedQ(v.clone()))?.with_perturbation(perturb)),
    })
}

/// Constant-matrix identities: `P^2 = 1`, `Q = D_1^-1 P^t1 D_1`, rank of
/// `Q`, `Rbar(1) = P`, `<1,1|Rbar(u)|1,1> = 1`, and the relations of the
/// hat and full variants to `Rbar`.
pub fn check_constants(n: usize, opts: &CheckOptions) -> CheckReport {
    let mut rep = CheckReport::new("constants", params(n, None, opts));
    let ctx = QCtx::new(opts.mode.clone());
    let set = match RMatrixSet::<Scalar>::build(n, &ctx) {
        Ok(s) => s,
        Err(e) => {
            rep.push(Item::error("constants.build", "consider the following elements", e));
            return rep;
        }
    };
    let d = set.dim();
    let dims = [d, d];
    rep.push(timed(|| {
        let id = TensorOperator::identity(&dims);
        Item::from_diff("constants.p-squared", "consider the following elements", vec![], set.p_op.mul(&set.p_op).ok().and_then(|m| crate::field::Comparable::first_difference(&m, &id)))
    }));
    rep.push(timed(|| {
        let pt = set.p_op.partial_transpose(0, &set.index).expect("aux site");
        let rhs = set.d_on(0, &dims, true).mul(&pt).and_then(|m| m.mul(&set.d_on(0, &dims, false))).expect("same shape");
        Item::from_diff("constants.q-from-p", "we can write Q = D^-1 P^t D", vec![], crate::field::Comparable::first_difference(&set.q_op, &rhs))
    }));
    rep.push(timed(|| {
        let r = set.q_op.rank();
        let diff = (r != 1).then(|| format!("rank of Q is {r}, expected 1"));
        Item::from_diff("constants.q-rank-one", "image of the operator is one-dimensional", vec![], diff)
    }));
    rep.push(timed(|| {
        let mut diff = None;
        for a in 0..d {
            for b in 0..d {
                if b != set.index.prime0(a) {
                    let c = a * d + b;
                    for r in 0..d * d {
                        if !set.q_op.get(r, c).is_zero() {
                            diff = Some(format!("Q|{},{}> has a component on row {}", a + 1, b + 1, r));
                        }
                    }
                }
            }
        }
        Item::from_diff("constants.q-kills", "consider the following elements", vec![], diff)
    }));

    let one_scalar = Scalar::one();
    rep.push(timed(|| {
        let p = set.rbar(&one_scalar, &one_scalar).expect("u = 1 is regular");
        Item::from_diff("rbar.at-one", "Rbar(1) = P", vec![("u".into(), "1".into())], crate::field::Comparable::first_difference(&p, &set.p_op))
    }));
    let ctx_c = ctx.clone();
    rep.push(timed(|| match build_param(n, Variant::Bar, &ctx_c, opts.trunc) {
        Ok(bar) => {
            let e = bar.entries.get(0, 0).clone();
            Item::from_diff("rbar.corner", "<1,1|Rbar(u)|1,1> = 1", vec![], crate::field::Comparable::first_difference(&e, &RatU::one()))
        }
        Err(e) => Item::error("rbar.corner", "<1,1|Rbar(u)|1,1> = 1", e),
    }));
    rep.push(timed(|| {
        let bar = build_param(n, Variant::Bar, &ctx, opts.trunc);
        let hat = build_param(n, Variant::Hat, &ctx, opts.trunc);
        match (bar, hat) {
            (Ok(bar), Ok(hat)) => {
                let u = RatU::var();
                let s = u.minus(&RatU::one()).divide(&u.times(&ctx.q_pow(1)).minus(&ctx.q_pow(-1))).expect("nonzero");
                let scaled = hat.entries.scale(&s);
                Item::from_diff("rhat.relation", "and we set Rhat", vec![], crate::field::Comparable::first_difference(&scaled, &bar.entries))
            }
            (Err(e), _) | (_, Err(e)) => Item::error("rhat.relation", "and we set Rhat", e),
        }
    }));
    rep.push(timed(|| full_relation(n, &ctx)));
    rep
}

impl<T: Field> TensorOperator<T> {
    /// Rank over the field.
    pub fn rank(&self) -> usize {
        let n = self.size();
        let mut a: Vec<Vec<T>> = (0..n).map(|r| (0..n).map(|c| self.get(r, c).clone()).collect()).collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, piv);
            let inv = a[rank][col].recip().expect("nonzero pivot");
            for r in rank + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].times(&inv);
                for c in col..n {
                    let d = f.times(&a[rank][c]);
                    a[r][c] = a[r][c].minus(&d);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// `g(u) Rbar(u)` equals the displayed `R(u)`: after dividing both by
/// `f(u)` this is a polynomial identity in `u`, checked exactly.
fn full_relation(n: usize, ctx: &QCtx) -> Item {
    let id = "rfull.relation";
    let anchor = "related by R(u)=g(u)Rbar(u)";
    let set = match RMatrixSet::<RatU>::build(n, ctx) {
        Ok(s) => s,
        Err(e) => return Item::error(id, anchor, e),
    };
    let u = RatU::var();
    let one = RatU::one();
    let qi = &set.q_inv;
    let xi = &set.xi;
    let bar = set.rbar(&u, &one).expect("regular");
    // g/f = (u - q^-2)(u - xi)
    let lhs = bar.scale(&u.minus(&qi.times(qi)).times(&u.minus(xi)));
    let u1 = u.minus(&one);
    let uxi = u.minus(xi);
    let c = qi.times(qi).minus(&one);
    let rhs = set
        .r_op
        .scale(&qi.times(&u1).times(&uxi))
        .sub(&set.p_op.scale(&c.times(&uxi)))
        .and_then(|m| m.add(&set.q_op.scale(&c.times(&u1).times(xi))))
        .expect("same shape");
    Item::from_diff(id, anchor, vec![], crate::field::Comparable::first_difference(&lhs, &rhs))
}

/// Yang-Baxter suite: `Rbar` and `R_A` certified on grids; `R` and `Rhat`
/// are scalar multiples of `Rbar` and inherit the result.
pub fn check_ybe(n: usize, opts: &CheckOptions) -> CheckReport {
    let mut rep = CheckReport::new("ybe", params(n, None, opts));
    let bar = timed(|| match ring_set(n, &opts.mode, opts.perturb) {
        Ok(Ring2::Symbolic(s)) => ybe_bar(&s, &opts.policy),
        Ok(Ring2::Pinned(s)) => ybe_bar(&s, &opts.policy),
        Err(e) => Item::error("ybe.bar", "solution of the Yang–Baxter equation", e),
    });
    let inherit = |id: &str| {
        let mut it = bar.clone();
        it.id = id.to_string();
        it.millis = 0;
        it.with_note("inherited via scalar factor")
    };
    rep.push(inherit("ybe.full"));
    rep.push(inherit("ybe.hat"));
    rep.push(bar);
    rep.push(timed(|| match ring_set(n, &opts.mode, false) {
        Ok(Ring2::Symbolic(s)) => ybe_typea(&s, &opts.policy),
        Ok(Ring2::Pinned(s)) => ybe_typea(&s, &opts.policy),
        Err(e) => Item::error("ybe.typeA", "the R-matrix used in type A", e),
    }));
    rep
}

/// Unitarity of `Rbar`; for `R` the product is the scalar `g(u)g(u^-1)`.
pub fn check_unitarity(n: usize, opts: &CheckOptions) -> CheckReport {
    let mut rep = CheckReport::new("unitarity", params(n, None, opts));
    let bar = timed(|| match ring_set(n, &opts.mode, opts.perturb) {
        Ok(Ring2::Symbolic(s)) => unitarity_bar(&s, &opts.policy),
        Ok(Ring2::Pinned(s)) => unitarity_bar(&s, &opts.policy),
        Err(e) => Item::error("unitarity.bar", "Note the unitarity property", e),
    });
    let mut full = bar.clone().with_note("R12(u)R21(u^-1) = g(u)g(u^-1), reported as scalar");
    full.id = "unitarity.full".into();
    full.millis = 0;
    rep.push(bar);
    rep.push(full);
    rep
}

/// Crossing relations. The bar scalar is certified on a grid; for the full
/// `R(u)` the scalar `g(u)g(u xi)s(u)` is expanded through the truncation
/// order and compared with `xi^2 q^-2`.
pub fn check_crossing(n: usize, opts: &CheckOptions) -> CheckReport {
    let mut rep = CheckReport::new("crossing", params(n, None, opts));
    let bar = timed(|| match ring_set(n, &opts.mode, false) {
        Ok(Ring2::Symbolic(s)) => crossing_bar(&s, &opts.policy, opts.perturb),
        Ok(Ring2::Pinned(s)) => crossing_bar(&s, &opts.policy, opts.perturb),
        Err(e) => Item::error("crossing.bar", "crossing symmetry relations", e),
    });
    let bar_ok = bar.is_pass();
    rep.push(bar);
    let ctx = QCtx::new(opts.mode.clone());
    rep.push(timed(|| {
        let id = "crossing.full";
        let anchor = "crossing symmetry relations: xi^2 q^-2";
        let f = scalar_f(n, opts.trunc, FMethod::Recursion);
        let s = full_crossing_series(n, &f);
        let target = CycloFrac::q_pow(2 * xi_exp(n) - 2);
        for (k, c) in s.iter().enumerate() {
            let want = if k == 0 { target.clone() } else { CycloFrac::zero() };
            if *c != want {
                let detail = format!(
                    "coefficient of u^{k}: lhs {} != rhs {}",
                    cyclo_to_scalar(c, &ctx),
                    cyclo_to_scalar(&want, &ctx)
                );
                return Item::fail(id, anchor, crate::field::Witness { point: vec![("order".into(), k.to_string())], detail });
            }
        }
        if !bar_ok {
            return Item::fail(
                id,
                anchor,
                crate::field::Witness { point: vec![], detail: "matrix part fails: see crossing.bar".into() },
            );
        }
        Item::pass(id, anchor).with_note(format!("scalar series equals xi^2 q^-2 through u^{}", opts.trunc))
    }));
    rep
}

/// The scalar function `f(u)`: recursion against the product formula,
/// `f_0 = 1`, and `f_1 (1 + xi) = q^2 + q^-2 + xi + xi^-1`.
pub fn check_scalar_f(n: usize, opts: &CheckOptions) -> CheckReport {
    let mut rep = CheckReport::new("scalar-f", params(n, None, opts));
    let k = opts.trunc.max(1);
    let ctx = QCtx::new(opts.mode.clone());
    let rec = scalar_f(n, k, FMethod::Recursion);
    let xe = if opts.perturb { xi_exp(n) + 1 } else { xi_exp(n) };
    let prod = timed_value(|| scalar_f_with_xi(n, k, FMethod::Product, xe));
    rep.push(Item::from_diff("scalar-f.f0", "whose coefficients f_k are rational functions", vec![], (!rec[0].is_one()).then(|| "f_0 != 1".to_string())));
    let x = xi_exp(n);
    let want = CycloFrac::q_pow(2).plus(&CycloFrac::q_pow(-2)).plus(&CycloFrac::q_pow(x)).plus(&CycloFrac::q_pow(-x));
    let got = rec[1].times(&CycloFrac::one().plus(&CycloFrac::q_pow(x)));
    rep.push(Item::from_diff(
        "scalar-f.f1",
        "uniquely determined by the relation",
        vec![],
        (got != want).then(|| format!("lhs {} != rhs {}", cyclo_to_scalar(&got, &ctx), cyclo_to_scalar(&want, &ctx))),
    ));
    let mut item = Item::pass("scalar-f.methods-agree", "infinite product formula").with_note(format!("through u^{k}"));
    for j in 0..=k {
        if rec[j] != prod.0[j] {
            item = Item::fail(
                "scalar-f.methods-agree",
                "infinite product formula",
                crate::field::Witness {
                    point: vec![("order".into(), j.to_string())],
                    detail: format!("recursion {} != product {}", cyclo_to_scalar(&rec[j], &ctx), cyclo_to_scalar(&prod.0[j], &ctx)),
                },
            );
            break;
        }
    }
    item.millis = prod.1;
    rep.push(item);
    // The product series satisfies the functional equation on its own.
    let shifted: Vec<CycloFrac> = prod.0.iter().enumerate().map(|(j, c)| c.times(&CycloFrac::q_pow(x * j as i64))).collect();
    let lhs = conv(&prod.0, &shifted);
    let mut diff = None;
    for (j, c) in lhs.iter().enumerate() {
        if *c != rhs_coeff(n, j) {
            diff = Some(format!("coefficient of u^{j} differs"));
            break;
        }
    }
    rep.push(Item::from_diff("scalar-f.functional-equation", "uniquely determined by the relation", vec![], diff));
    rep
}

fn timed_value<V>(f: impl FnOnce() -> V) -> (V, u64) {
    let start = std::time::Instant::now();
    let v = f();
    (v, start.elapsed().as_millis() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Comparable;

    #[test]
    fn d_matrix_n2() {
        let set = RMatrixSet::<Scalar>::build(2, &QCtx::symbolic()).unwrap();
        let c = QCtx::symbolic();
        let want: Vec<Scalar> = [2, 1, -1, -2].iter().map(|&k| QPow::<Scalar>::q_pow(&c, k)).collect();
        assert_eq!(set.d, want);
        assert_eq!(set.xi, QPow::<Scalar>::q_pow(&c, -6));
    }

    #[test]
    fn p_and_q_actions() {
        let set = RMatrixSet::<Scalar>::build(2, &QCtx::symbolic()).unwrap();
        // P|1,2> = |2,1>
        assert_eq!(set.p_op.matrix_element(&[1, 0], &[0, 1]).unwrap(), Scalar::one());
        // Q|1,2> = 0
        assert!((0..16).all(|r| set.q_op.get(r, 1).is_zero()));
        // Q|4,1> = sum_i q^(bar i - bar 1) eps_i eps_1 |i', i>
        let c = QCtx::symbolic();
        for i in 0..4 {
            let v = set.q_op.matrix_element(&[set.index.prime0(i), i], &[3, 0]).unwrap();
            let mut w: Scalar = c.q_pow(set.index.bar0(i) - 2);
            if set.index.eps0(i) < 0 {
                w = w.negated();
            }
            assert_eq!(v, w);
        }
    }

    #[test]
    fn rbar_examples() {
        let ctx = QCtx::symbolic();
        let bar = build_param(2, Variant::Bar, &ctx, 2).unwrap();
        assert_eq!(*bar.entries.get(0, 0), RatU::one());
        let p = bar.at(&Scalar::one()).unwrap();
        let set = RMatrixSet::<Scalar>::build(2, &ctx).unwrap();
        assert!(p.first_difference(&set.p_op).is_none());
    }

    #[test]
    fn type_a_entry() {
        let ctx = QCtx::symbolic();
        let a = build_param(2, Variant::TypeA, &ctx, 0).unwrap();
        let u = RatU::var();
        let want = u.minus(&RatU::one()).divide(&u.times(&ctx.q_pow(1)).minus(&ctx.q_pow(-1))).unwrap();
        assert_eq!(*a.entries.get(1, 1), want);
        assert_eq!(a.entries.dims(), &[2, 2]);
    }

    #[test]
    fn f_methods_agree_small() {
        for n in 1..=2 {
            assert_eq!(scalar_f(n, 5, FMethod::Recursion), scalar_f(n, 5, FMethod::Product));
        }
    }

    #[test]
    fn ybe_n1_symbolic() {
        let set = RMatrixSet::build(1, &LaurentQ).unwrap();
        assert!(ybe_bar(&set, &GridPolicy::default()).is_pass());
        let bad = RMatrixSet::build(1, &LaurentQ).unwrap().with_perturbation(true);
        let it = ybe_bar(&bad, &GridPolicy::default());
        assert!(!it.is_pass() && it.witness.is_some());
    }
}
