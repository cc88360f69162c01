//! The relation suite of the Gaussian generators at `c = 0`.
//!
//! Relations between `h_i(u)` and the distributions `X_j(v)` are checked
//! coefficientwise in `v` and as rational identities in `u`.

use super::{extract_drinfeld, mode, DrinfeldError, DrinfeldSeries, ModeTable};
use crate::field::{verify_identity, EvalError, Field, Point, RatFunc, RatU, Ring, Scalar};
use crate::gauss::{coord, eval_at, gauss_decompose, op_height, FusedModule, NCMatrix, OpList};
use crate::report::{timed, CheckReport, Item};
use crate::tensor::TensorOperator;
use crate::CheckOptions;

pub(super) const A_GAUSSIAN: &str = "relations between the gaussian generators";

/// Module, series and report header shared by the suites of this module.
pub(super) fn setup(suite: &str, n: usize, m: usize, opts: &CheckOptions, window: usize) -> Result<(FusedModule, DrinfeldSeries, CheckReport), CheckReport> {
    let fail = |e: String| {
        let mut p = opts.params();
        p.insert("n".into(), n.to_string());
        p.insert("m".into(), m.to_string());
        let mut rep = CheckReport::new(suite, p);
        rep.push(Item::error(format!("{suite}.setup"), A_GAUSSIAN, e));
        rep
    };
    let md = FusedModule::build(n, m, opts).map_err(|e| fail(e.to_string()))?;
    let ds = extract_drinfeld(&md.gauss, n, &md.ctx, window).map_err(|e| fail(e.to_string()))?;
    let mut p = md.report_params(opts);
    p.insert("window".into(), window.to_string());
    Ok((md, ds, CheckReport::new(suite, p)))
}

fn err(e: DrinfeldError) -> EvalError {
    EvalError::Other(e.to_string())
}

fn mul(a: &TensorOperator<Scalar>, b: &TensorOperator<Scalar>) -> TensorOperator<Scalar> {
    a.mul(b).expect("shape")
}

fn lin(terms: &[(&Scalar, &TensorOperator<Scalar>)]) -> TensorOperator<Scalar> {
    let mut acc = TensorOperator::zeros(terms[0].1.dims());
    for (c, t) in terms {
        if !c.is_zero() {
            acc = acc.add(&t.scale(c)).expect("shape");
        }
    }
    acc
}

/// A relation `(a1 u + a2 v) h(u) X(v) = (b1 u + b2 v) X(v) h(u)` between
/// `h_i(u)` and `X_j^±(v)`.
#[derive(Clone, Debug)]
pub(super) struct HxForm {
    pub label: String,
    pub h: usize,
    pub plus: bool,
    pub j: usize,
    pub a: [Scalar; 2],
    pub b: [Scalar; 2],
}

/// `(eps_i, alpha_j)` with 1-based labels and `i <= n`.
fn eps_alpha(n: usize, i: usize, j: usize) -> i64 {
    if j < n {
        (i == j) as i64 - (i == j + 1) as i64
    } else {
        2 * (i == n) as i64
    }
}

pub(super) fn hx_forms(ds: &DrinfeldSeries) -> Vec<HxForm> {
    let n = ds.n;
    let one = Scalar::one();
    let mone = one.negated();
    let zero = Scalar::zero();
    let commute = |label: String, h: usize, plus: bool, j: usize| HxForm { label, h, plus, j, a: [one.clone(), zero.clone()], b: [one.clone(), zero.clone()] };
    // (q^a u - q^-a v) h X^+ = (u - v) X^+ h and the mirror for X^-
    let dilation = |label: String, h: usize, plus: bool, j: usize, a: i64| {
        if a == 0 {
            return commute(label, h, plus, j);
        }
        let s = [ds.q(a), ds.q(-a).negated()];
        let t = [one.clone(), mone.clone()];
        if plus {
            HxForm { label, h, plus, j, a: s, b: t }
        } else {
            HxForm { label, h, plus, j, a: t, b: s }
        }
    };
    let mut out = Vec::new();
    for plus in [true, false] {
        let sign = if plus { "+" } else { "-" };
        for i in 1..=n {
            for j in 1..=n {
                out.push(dilation(format!("h_{i} X{sign}_{j}"), i, plus, j, eps_alpha(n, i, j)));
            }
        }
        let h = n + 1;
        out.push(dilation(format!("h_{h} X{sign}_{n}"), h, plus, n, -2));
        if n >= 2 {
            let j = n - 1;
            let qa = [ds.q(-1), ds.q(1).negated()];
            let qb = [ds.q(-2), ds.q(2).negated()];
            // h^-1 X^+ h = (q^-1 u - q v)/(q^-2 u - q^2 v) X^+ and h X^- h^-1 likewise
            let (a, b) = if plus { (qa, qb) } else { (qb, qa) };
            out.push(HxForm { label: format!("h_{h} X{sign}_{j}"), h, plus, j, a, b });
        }
        for j in 1..n.saturating_sub(1) {
            out.push(commute(format!("h_{h} X{sign}_{j}"), h, plus, j));
        }
    }
    out
}

/// Coefficient of `v^-k` on each side, for `k` in `[-K, K-1]`.
fn hx_item(id: &str, ds: &DrinfeldSeries, forms: &[HxForm], opts: &CheckOptions) -> Item {
    let w = ds.window;
    let bound = forms.iter().map(|f| op_height(&ds.h[f.h - 1])).max().unwrap_or(0) + 1;
    let side = |p: &Point, left: bool| -> Result<OpList, EvalError> {
        let u = coord(p, "u");
        let mut out = OpList::new();
        for f in forms {
            let h = eval_at(&ds.h[f.h - 1], &u)?;
            let x = ds.x(f.plus, f.j);
            let (c, h_first) = if left { (&f.a, true) } else { (&f.b, false) };
            let cu = c[0].times(&u);
            for k in -w..w {
                let prod = |t: &TensorOperator<Scalar>| if h_first { mul(&h, t) } else { mul(t, &h) };
                let xk = mode(x, "X", k).map_err(err)?;
                let xk1 = mode(x, "X", k + 1).map_err(err)?;
                out.push(format!("{} k={k}", f.label), lin(&[(&cu, &prod(xk)), (&c[1], &prod(xk1))]));
            }
        }
        Ok(out)
    };
    Item::from_verdict(id, A_GAUSSIAN, verify_identity(|p: &Point| side(p, true), |p: &Point| side(p, false), &[("u", bound)], &opts.policy))
}

/// Gaussian-generator relations at `c = 0`.
pub fn check_drinfeld(n: usize, m: usize, opts: &CheckOptions) -> CheckReport {
    let (md, ds, mut rep) = match setup("drinfeld", n, m, opts, opts.trunc) {
        Ok(v) => v,
        Err(r) => return r,
    };
    let forms = hx_forms(&ds);
    let (hn1, hi): (Vec<HxForm>, Vec<HxForm>) = forms.into_iter().partition(|f| f.h == n + 1);
    rep.push(timed(|| nonzero_modes(&ds)));
    rep.push(timed(|| h_commute(&ds, opts)));
    rep.push(timed(|| normalization(&ds)));
    for plus in [true, false] {
        let sign = if plus { "plus" } else { "minus" };
        let pick = |v: &[HxForm]| v.iter().filter(|f| f.plus == plus).cloned().collect::<Vec<_>>();
        rep.push(timed(|| hx_item(&format!("drinfeld.h-x.{sign}"), &ds, &pick(&hi), opts)));
        rep.push(timed(|| hx_item(&format!("drinfeld.hn1-x.{sign}"), &ds, &pick(&hn1), opts)));
        rep.push(timed(|| x_x(&ds, plus, opts.perturb)));
    }
    rep.push(timed(|| x_commutator(&ds)));
    rep.push(timed(toy_delta));
    rep.push(timed(|| identity_input(&md, opts.trunc)));
    rep
}

/// Every `X^±_i` has nonzero modes in the window.
fn nonzero_modes(ds: &DrinfeldSeries) -> Item {
    let id = "drinfeld.nonzero-modes";
    for plus in [true, false] {
        for i in 1..=ds.n {
            if ds.x(plus, i).is_zero() {
                let sign = if plus { "+" } else { "-" };
                return Item::from_diff(id, A_GAUSSIAN, vec![], Some(format!("X{sign}_{i} vanishes on the window")));
            }
        }
    }
    Item::pass(id, A_GAUSSIAN)
}

/// `h_i(u) h_j(v) = h_j(v) h_i(u)` for all `i, j <= n+1`.
fn h_commute(ds: &DrinfeldSeries, opts: &CheckOptions) -> Item {
    let bound = ds.h.iter().map(op_height).max().unwrap_or(0);
    let side = |p: &Point, left: bool| -> Result<OpList, EvalError> {
        let (u, v) = (coord(p, "u"), coord(p, "v"));
        let hu: Vec<_> = ds.h.iter().map(|h| eval_at(h, &u)).collect::<Result<_, _>>()?;
        let hv: Vec<_> = ds.h.iter().map(|h| eval_at(h, &v)).collect::<Result<_, _>>()?;
        let mut out = OpList::new();
        for (i, a) in hu.iter().enumerate() {
            for (j, b) in hv.iter().enumerate() {
                out.push(format!("h_{}(u) h_{}(v)", i + 1, j + 1), if left { mul(a, b) } else { mul(b, a) });
            }
        }
        Ok(out)
    };
    Item::from_verdict(
        "drinfeld.h-h",
        A_GAUSSIAN,
        verify_identity(|p: &Point| side(p, true), |p: &Point| side(p, false), &[("u", bound), ("v", bound)], &opts.policy),
    )
}

/// Constant terms of `h_i` at zero and infinity.
fn h_ends(h: &TensorOperator<RatU>) -> Option<(TensorOperator<Scalar>, TensorOperator<Scalar>)> {
    let at0 = h.try_map(|r| r.eval(&Scalar::zero()).ok_or(()));
    let at_inf = h.try_map(|r| {
        let excess = r.degree_excess();
        if r.num().is_zero() || excess < 0 {
            Ok(Scalar::zero())
        } else if excess == 0 {
            r.num().lead().cloned().zip(r.den().lead()).and_then(|(a, b)| a.divide(b)).ok_or(())
        } else {
            Err(())
        }
    });
    Some((at0.ok()?, at_inf.ok()?))
}

/// `h_{i,0}^+ h_{i,0}^-` and `h_{n,0}^+ h_{n+1,0}^+` are scalar.
fn normalization(ds: &DrinfeldSeries) -> Item {
    let id = "drinfeld.normalization";
    let mut ends = Vec::new();
    for (i, h) in ds.h.iter().enumerate() {
        match h_ends(h) {
            Some(e) => ends.push(e),
            None => return Item::from_diff(id, A_GAUSSIAN, vec![], Some(format!("h_{} has a pole at zero or infinity", i + 1))),
        }
    }
    let n = ds.n;
    let mut checks: Vec<(String, TensorOperator<Scalar>)> = ends.iter().enumerate().map(|(i, (a, b))| (format!("h_{0}[0] h_{0}[inf]", i + 1), mul(a, b))).collect();
    checks.push((format!("h_{n}[0] h_{}[0]", n + 1), mul(&ends[n - 1].0, &ends[n].0)));
    for (label, op) in checks {
        if let Some((r, c, v)) = op.scalar_defect() {
            return Item::from_diff(id, A_GAUSSIAN, vec![], Some(format!("{label} is not scalar: entry {r:?},{c:?} = {}", crate::field::format_scalar(&v))));
        }
    }
    Item::pass(id, A_GAUSSIAN).with_note("checked up to central scalar")
}

/// `(u - q^±B v) Y_i(u) Y_j(v) = (q^±B u - v) Y_j(v) Y_i(u)` with
/// `Y_i(u) = X_i(u q^{s_i})`, coefficientwise.
fn g(t: &ModeTable, k: i64) -> &TensorOperator<Scalar> {
    t.get(k).expect("inside the window")
}

fn x_x(ds: &DrinfeldSeries, plus: bool, perturb: bool) -> Item {
    let id = format!("drinfeld.x-x.{}", if plus { "plus" } else { "minus" });
    let n = ds.n;
    let b = crate::rep::cartan_data(n).expect("n >= 1").b;
    // the negative control shifts row i < n by q^{i+1}
    let shift = |i: usize| if perturb && i < n { i as i64 + 1 } else { ds.shift(i) };
    let ys: Vec<ModeTable> = (1..=n).map(|i| ds.x(plus, i).scaled(|k| ds.q(-shift(i) * k))).collect();
    let w = ds.window;
    for i in 1..=n {
        for j in 1..=n {
            let bij = if plus { b[i - 1][j - 1] } else { -b[i - 1][j - 1] };
            let qb = ds.q(bij);
            let (yi, yj) = (&ys[i - 1], &ys[j - 1]);
            for k in -w..w {
                for l in -w..w {
                    let lhs = mul(g(yi, k + 1), g(yj, l)).sub(&mul(g(yi, k), g(yj, l + 1)).scale(&qb)).expect("shape");
                    let rhs = mul(g(yj, l), g(yi, k + 1)).scale(&qb).sub(&mul(g(yj, l + 1), g(yi, k))).expect("shape");
                    if let Some(d) = crate::field::Comparable::first_difference(&lhs, &rhs) {
                        return Item::from_diff(id, A_GAUSSIAN, vec![("i".into(), i.to_string()), ("j".into(), j.to_string()), ("k".into(), k.to_string()), ("l".into(), l.to_string())], Some(d));
                    }
                }
            }
        }
    }
    Item::pass(id, A_GAUSSIAN)
}

/// `[X^+_{i,m}, X^-_{j,l}] = delta_ij (q_i - q_i^-1)(k^inf_{i,m+l} - k^0_{i,m+l})`.
fn x_commutator(ds: &DrinfeldSeries) -> Item {
    let id = "drinfeld.x-commutator";
    let w = ds.window;
    for i in 1..=ds.n {
        for j in 1..=ds.n {
            for m in -w..=w {
                for l in -w..=w {
                    let (a, b) = (ds.xp[i - 1].get(m).expect("window"), ds.xm[j - 1].get(l).expect("window"));
                    let lhs = a.commutator(b).expect("shape");
                    let rhs = if i == j {
                        let p = m + l;
                        let d = ds.k_inf[i - 1].get(p).expect("window").sub(ds.k_zero[i - 1].get(p).expect("window")).expect("shape");
                        d.scale(&ds.qi_diff(i))
                    } else {
                        TensorOperator::zeros(a.dims())
                    };
                    if let Some(d) = crate::field::Comparable::first_difference(&lhs, &rhs) {
                        return Item::from_diff(id, A_GAUSSIAN, vec![("i".into(), i.to_string()), ("j".into(), j.to_string()), ("m".into(), m.to_string()), ("l".into(), l.to_string())], Some(d));
                    }
                }
            }
        }
    }
    Item::pass(id, A_GAUSSIAN)
}

/// `a/(a - u)` has modes `a^k`, the coefficients of `delta(u/a)`.
fn toy_delta() -> Item {
    let id = "drinfeld.toy-delta";
    let a = Scalar::frac(7, 3);
    let r = RatFunc::new(crate::field::Poly::constant(a.clone()), crate::field::Poly::from_coeffs(vec![a.clone(), Scalar::int(-1)])).expect("nonzero");
    let t = match super::delta_modes(&TensorOperator::diagonal(vec![r]), 6) {
        Ok(t) => t,
        Err(e) => return Item::error(id, A_GAUSSIAN, e),
    };
    for k in -6..=6 {
        let want = a.pow_i(k).expect("nonzero");
        let got = t.get(k).expect("window").get(0, 0).clone();
        if got != want {
            return Item::from_diff(id, A_GAUSSIAN, vec![("k".into(), k.to_string())], Some(format!("mode {} != {}", crate::field::format_scalar(&got), crate::field::format_scalar(&want))));
        }
    }
    Item::pass(id, A_GAUSSIAN)
}

/// The identity operator has vanishing `X` modes and `h_j = 1`.
fn identity_input(md: &FusedModule, window: usize) -> Item {
    let id = "drinfeld.identity-input";
    let one: NCMatrix<RatU> = NCMatrix::identity(md.dim(), md.wdims());
    let g = match gauss_decompose(&one) {
        Ok(g) => g,
        Err(e) => return Item::error(id, A_GAUSSIAN, e),
    };
    let ds = match extract_drinfeld(&g, md.n, &md.ctx, window) {
        Ok(d) => d,
        Err(e) => return Item::error(id, A_GAUSSIAN, e),
    };
    if let Some(i) = (1..=md.n).find(|&i| !ds.x(true, i).is_zero() || !ds.x(false, i).is_zero()) {
        return Item::from_diff(id, A_GAUSSIAN, vec![], Some(format!("X_{i} has nonzero modes")));
    }
    let unit = TensorOperator::identity(md.wdims());
    if let Some(j) = ds.h.iter().position(|h| *h != unit) {
        return Item::from_diff(id, A_GAUSSIAN, vec![], Some(format!("h_{} is not the identity", j + 1)));
    }
    Item::pass(id, A_GAUSSIAN)
}
