//! Check suites for the Gauss decomposition, quantum minors and the
//! embeddings `psi_m`.
//!
//! Identities in `u` (and `v`) are certified on evaluation grids. Degree
//! bounds come from the exact heights of the rational matrices involved;
//! values built with a flattened inversion of an `N`-dimensional block use
//! the Cramer bound `(N + 1) h(L)`.

use super::module::{coord, eval_at, FusedModule, OpList};
use super::{
    gauss_decompose, height_of, minor_c2, minor_type_a, nc_from_scalar, op_height, pair_product, psi_direct, rhat_at, GaussData, GaussError,
    NCMatrix,
};
use crate::field::{verify_identity, Comparable, EvalError, Field, Point, RatU, Ring, Scalar, Witness};
use crate::report::{timed, CheckReport, Item};
use crate::rmatrix::RMatrixSet;
use crate::tensor::TensorOperator;
use crate::CheckOptions;

const A_QUASI: &str = "universal quasideterminant formulas";
const A_SKEW: &str = "symmetry properties are straightforward";
const A_MINOR: &str = "By the definition of quantum minors";
const A_HOM: &str = "define a homomorphism";
const A_CONSIST: &str = "equality of maps";
const A_SYLV: &str = "relations between the quasideterminants and quantum minors";
const A_RECOMP: &str = "coincides with the image of";
const A_TYPEA: &str = "number of inversions of the permutation";

fn setup_failure(suite: &str, n: usize, m: usize, opts: &CheckOptions, e: GaussError) -> CheckReport {
    let mut p = opts.params();
    p.insert("n".into(), n.to_string());
    p.insert("m".into(), m.to_string());
    let mut rep = CheckReport::new(suite, p);
    rep.push(Item::error(format!("{suite}.setup"), A_QUASI, e));
    rep
}

fn singular<T>(o: Option<T>) -> Result<T, EvalError> {
    o.ok_or(EvalError::Singular)
}

fn h_height(h: &[TensorOperator<RatU>]) -> usize {
    height_of(h.iter().flat_map(|b| b.entries().iter()))
}

/// `l_rc - sum_ab l_ra inv_ab l_bc` over the leading `k` labels.
fn bordered(lu: &NCMatrix<Scalar>, inv: Option<&NCMatrix<Scalar>>, k: usize, r: usize, c: usize) -> TensorOperator<Scalar> {
    let mut acc = lu.get(r, c).clone();
    let Some(inv) = inv else { return acc };
    for a in 0..k {
        let left = lu.get(r, a);
        if left.is_zero() {
            continue;
        }
        for b in 0..k {
            let (mid, right) = (inv.get(a, b), lu.get(b, c));
            if mid.is_zero() || right.is_zero() {
                continue;
            }
            acc = acc.sub(&left.mul(mid).expect("shape").mul(right).expect("shape")).expect("shape");
        }
    }
    acc
}

fn leading_inverse(lu: &NCMatrix<Scalar>, k: usize) -> Result<Option<NCMatrix<Scalar>>, EvalError> {
    if k == 0 {
        return Ok(None);
    }
    let lead: Vec<usize> = (0..k).collect();
    lu.submatrix(&lead, &lead).inverse().map(Some).map_err(|_| EvalError::Singular)
}

/// Gauss decomposition: reassembly, uniqueness at points, the
/// quasideterminant displays, the 2x2 elimination formulas and the
/// identity operator.
pub fn check_gauss(n: usize, m: usize, opts: &CheckOptions) -> CheckReport {
    let md = match FusedModule::build(n, m, opts) {
        Ok(md) => md,
        Err(e) => return setup_failure("gauss", n, m, opts, e),
    };
    let mut rep = CheckReport::new("gauss", md.report_params(opts));
    let mut g = md.gauss.clone();
    if opts.perturb {
        let broken = g.e.get(0, 1).add(&TensorOperator::identity(md.wdims())).expect("shape");
        g.e.set(0, 1, broken);
    }
    rep.push(timed(|| reassembly(&md, &g, opts)));
    rep.push(timed(|| redecomposition(&g)));
    for i in 1..=md.dim() {
        rep.push(timed(|| quasideterminant_displays(&md, &g, i, opts)));
    }
    rep.push(timed(|| leading_2x2(&md, &g)));
    rep.push(timed(|| identity_input(md.wdims())));
    rep
}

fn reassembly(md: &FusedModule, g: &GaussData<RatU>, opts: &CheckOptions) -> Item {
    let bound = g.f.height() + h_height(&g.h) + g.e.height() + md.h_l();
    let lhs = |p: &Point| {
        let u = coord(p, "u");
        let f = singular(g.f.eval(&u))?;
        let e = singular(g.e.eval(&u))?;
        let h: Vec<_> = g.h.iter().map(|b| eval_at(b, &u)).collect::<Result<_, _>>()?;
        Ok(f.mul(&NCMatrix::diagonal(&h)).mul(&e))
    };
    let rhs = |p: &Point| md.l_at(&coord(p, "u"));
    Item::from_verdict("gauss.reassembly", A_QUASI, verify_identity(lhs, rhs, &[("u", bound)], &opts.policy))
        .with_note("each h_i inverted exactly over the field of rational functions in u (invertibility certificate)")
}

/// Decomposing `F(u) H(u) E(u)` again at sample points returns the same
/// factors.
fn redecomposition(g: &GaussData<RatU>) -> Item {
    let id = "gauss.redecomposition";
    let mut used = 0;
    for x in 2i64.. {
        if used == 4 || x > 40 {
            break;
        }
        let u = Scalar::int(x);
        let Some(gu) = g.eval(&u) else { continue };
        let whole = gu.reassemble();
        let Ok(again) = gauss_decompose(&whole) else { continue };
        used += 1;
        let pt = vec![("u".to_string(), x.to_string())];
        for (name, a, b) in [("F", &again.f, &gu.f), ("E", &again.e, &gu.e)] {
            if let Some(d) = a.first_difference(b) {
                return Item::from_diff(id, A_QUASI, pt, Some(format!("{name} {d}")));
            }
        }
        for (i, (a, b)) in again.h.iter().zip(&gu.h).enumerate() {
            if let Some(d) = a.first_difference(b) {
                return Item::from_diff(id, A_QUASI, pt, Some(format!("h_{} {d}", i + 1)));
            }
        }
    }
    if used == 0 {
        return Item::fail(id, A_QUASI, Witness { point: vec![], detail: "no regular sample point".into() });
    }
    Item::pass(id, A_QUASI).with_note(format!("identical factors at {used} points"))
}

/// `h_i = |L_{1..i}|_ii`, `h_i e_ij = |..|_ij` and `f_ji h_i = |..|_ji`,
/// the last two in multiplied-out form.
fn quasideterminant_displays(md: &FusedModule, g: &GaussData<RatU>, i: usize, opts: &CheckOptions) -> Item {
    let k = md.dim();
    let big_n = (i - 1) * md.l.wdims().iter().product::<usize>();
    let bound = (big_n + 1) * md.h_l() + op_height(&g.h[i - 1]) + g.e.height().max(g.f.height());
    let lhs = |p: &Point| {
        let lu = md.l_at(&coord(p, "u"))?;
        let inv = leading_inverse(&lu, i - 1)?;
        let mut out = OpList::new();
        out.push(format!("h_{i}"), bordered(&lu, inv.as_ref(), i - 1, i - 1, i - 1));
        for j in i + 1..=k {
            out.push(format!("h_{i} e_{i}{j}"), bordered(&lu, inv.as_ref(), i - 1, i - 1, j - 1));
            out.push(format!("f_{j}{i} h_{i}"), bordered(&lu, inv.as_ref(), i - 1, j - 1, i - 1));
        }
        Ok(out)
    };
    let rhs = |p: &Point| {
        let u = coord(p, "u");
        let h = eval_at(&g.h[i - 1], &u)?;
        let mut out = OpList::new();
        out.push(format!("h_{i}"), h.clone());
        for j in i + 1..=k {
            out.push(format!("h_{i} e_{i}{j}"), h.mul(&eval_at(g.e_entry(i, j), &u)?).expect("shape"));
            out.push(format!("f_{j}{i} h_{i}"), eval_at(g.f_entry(j, i), &u)?.mul(&h).expect("shape"));
        }
        Ok(out)
    };
    Item::from_verdict(format!("gauss.quasidet.i{i}"), A_QUASI, verify_identity(lhs, rhs, &[("u", bound)], &opts.policy))
}

/// `h_1 = l_11`, `e_12 = l_11^-1 l_12`, `f_21 = l_21 l_11^-1`,
/// `h_2 = l_22 - l_21 l_11^-1 l_12`, exactly.
fn leading_2x2(md: &FusedModule, g: &GaussData<RatU>) -> Item {
    let id = "gauss.leading-2x2";
    let l = &md.l;
    let inv = match l.get(0, 0).inverse() {
        Ok(v) => v,
        Err(e) => return Item::error(id, A_QUASI, e),
    };
    let mul = |a: &TensorOperator<RatU>, b: &TensorOperator<RatU>| a.mul(b).expect("shape");
    let h2 = l.get(1, 1).sub(&mul(&mul(l.get(1, 0), &inv), l.get(0, 1))).expect("shape");
    let checks = [
        ("h_1", l.get(0, 0).clone(), g.h[0].clone()),
        ("e_12", mul(&inv, l.get(0, 1)), g.e_entry(1, 2).clone()),
        ("f_21", mul(l.get(1, 0), &inv), g.f_entry(2, 1).clone()),
        ("h_2", h2, g.h[1].clone()),
    ];
    for (name, want, got) in checks {
        if let Some(d) = got.first_difference(&want) {
            return Item::from_diff(id, A_QUASI, vec![], Some(format!("{name}: {d}")));
        }
    }
    Item::pass(id, A_QUASI)
}

fn identity_input(wdims: &[usize]) -> Item {
    let id = "gauss.identity-input";
    let one = NCMatrix::<Scalar>::identity(4, wdims);
    match gauss_decompose(&one) {
        Ok(g) => {
            let trivial = g.f == one && g.e == one && g.h.iter().all(|h| *h == TensorOperator::identity(wdims));
            if trivial {
                Item::pass(id, A_QUASI)
            } else {
                Item::fail(id, A_QUASI, Witness { point: vec![], detail: "nontrivial factors for the identity".into() })
            }
        }
        Err(e) => Item::error(id, A_QUASI, e),
    }
}

/// Labels `a < b` with `b != a'`.
fn skew_pairs(d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=d {
        for b in a + 1..=d {
            if b != d + 1 - a {
                out.push((a, b));
            }
        }
    }
    out
}

struct MinorCtx<'a> {
    md: &'a FusedModule,
    rhat: TensorOperator<Scalar>,
    q: Scalar,
    q2: Scalar,
    q_inv: Scalar,
}

impl<'a> MinorCtx<'a> {
    fn new(md: &'a FusedModule) -> Result<Self, GaussError> {
        let set = RMatrixSet::<Scalar>::build(md.n, &md.ctx).map_err(|e| GaussError::Setup(e.to_string()))?;
        let rhat = rhat_at(&set, &md.qp(-2)).ok_or_else(|| GaussError::Singular("Rhat(q^-2)".into()))?;
        Ok(MinorCtx { md, rhat, q: md.qp(1), q2: md.qp(2), q_inv: md.qp(-1) })
    }

    /// `(L(x), L(x q^2))`.
    fn pair(&self, x: &Scalar) -> Result<(NCMatrix<Scalar>, NCMatrix<Scalar>), EvalError> {
        Ok((self.md.l_at(x)?, self.md.l_at(&x.times(&self.q2))?))
    }
}

/// Quantum minor identities.
pub fn check_minors(n: usize, m: usize, opts: &CheckOptions) -> CheckReport {
    let md = match FusedModule::build(n, m, opts) {
        Ok(md) => md,
        Err(e) => return setup_failure("minors", n, m, opts, e),
    };
    let mut rep = CheckReport::new("minors", md.report_params(opts));
    let mc = match MinorCtx::new(&md) {
        Ok(c) => c,
        Err(e) => {
            rep.push(Item::error("minors.setup", A_SKEW, e));
            return rep;
        }
    };
    rep.push(timed(|| skew_rows(&mc, opts)));
    rep.push(timed(|| skew_cols(&mc, opts)));
    rep.push(timed(|| two_term(&mc, opts)));
    rep.push(timed(|| s_factorization(&mc, opts)));
    rep.push(timed(|| l11_commutation(&mc, opts, false)));
    rep.push(timed(|| l11_commutation(&mc, opts, true)));
    rep.push(timed(|| type_a_matches_c2(&mc, opts)));
    rep.push(timed(|| type_a_commutation(&mc, opts)));
    rep
}

fn skew_rows(mc: &MinorCtx, opts: &CheckOptions) -> Item {
    let d = mc.md.dim();
    let hl = mc.md.h_l();
    let c = if opts.perturb { Scalar::one() } else { mc.q_inv.negated() };
    let side = |p: &Point, left: bool| {
        let (lu, lu2) = mc.pair(&coord(p, "u"))?;
        let mut out = OpList::new();
        for (a1, a2) in skew_pairs(d) {
            for b1 in 1..=d {
                for b2 in 1..=d {
                    let v = if left {
                        minor_c2(&mc.rhat, &lu, &lu2, (a1, a2), (b1, b2))
                    } else {
                        minor_c2(&mc.rhat, &lu, &lu2, (a2, a1), (b1, b2)).scale(&c)
                    };
                    out.push(format!("l^{a1}{a2}_{b1}{b2}"), v);
                }
            }
        }
        Ok(out)
    };
    let v = verify_identity(|p: &Point| side(p, true), |p: &Point| side(p, false), &[("u", 2 * hl)], &opts.policy);
    Item::from_verdict("minors.skew-rows", A_SKEW, v)
}

fn skew_cols(mc: &MinorCtx, opts: &CheckOptions) -> Item {
    let d = mc.md.dim();
    let hl = mc.md.h_l();
    let c = mc.q.negated();
    let side = |p: &Point, left: bool| {
        let (lu, lu2) = mc.pair(&coord(p, "u"))?;
        let mut out = OpList::new();
        for (b1, b2) in skew_pairs(d) {
            for a1 in 1..=d {
                for a2 in 1..=d {
                    let v = if left {
                        minor_c2(&mc.rhat, &lu, &lu2, (a1, a2), (b1, b2))
                    } else {
                        minor_c2(&mc.rhat, &lu, &lu2, (a1, a2), (b2, b1)).scale(&c)
                    };
                    out.push(format!("l^{a1}{a2}_{b1}{b2}"), v);
                }
            }
        }
        Ok(out)
    };
    let v = verify_identity(|p: &Point| side(p, true), |p: &Point| side(p, false), &[("u", 2 * hl)], &opts.policy);
    Item::from_verdict("minors.skew-cols", A_SKEW, v)
}

/// Labels `2 ..= 2'`.
fn inner(d: usize) -> std::ops::RangeInclusive<usize> {
    2..=d - 1
}

/// `l^{1i}_{1j}(u) = l_11(u) l_ij(uq^2) - q^-1 l_i1(u) l_1j(uq^2)`.
fn two_term(mc: &MinorCtx, opts: &CheckOptions) -> Item {
    let d = mc.md.dim();
    let side = |p: &Point, left: bool| {
        let (lu, lu2) = mc.pair(&coord(p, "u"))?;
        let mut out = OpList::new();
        for i in inner(d) {
            for j in inner(d) {
                let v = if left {
                    minor_c2(&mc.rhat, &lu, &lu2, (1, i), (1, j))
                } else {
                    let a = lu.get(0, 0).mul(lu2.get(i - 1, j - 1)).expect("shape");
                    let b = lu.get(i - 1, 0).mul(lu2.get(0, j - 1)).expect("shape");
                    a.sub(&b.scale(&mc.q_inv)).expect("shape")
                };
                out.push(format!("l^1{i}_1{j}"), v);
            }
        }
        Ok(out)
    };
    let v = verify_identity(|p: &Point| side(p, true), |p: &Point| side(p, false), &[("u", 2 * mc.md.h_l())], &opts.policy);
    Item::from_verdict("minors.two-term", A_MINOR, v)
}

/// `l_11(uq^-2) s_ij(u) = l^{1i}_{1j}(uq^-2)` with `s = psi_1(l)`.
fn s_factorization(mc: &MinorCtx, opts: &CheckOptions) -> Item {
    let d = mc.md.dim();
    let s = mc.md.gauss.psi_image(1);
    let bound = 3 * mc.md.h_l() + s.height();
    let qm2 = mc.md.qp(-2);
    let lhs = |p: &Point| {
        let u = coord(p, "u");
        let l0 = mc.md.l_at(&u.times(&qm2))?;
        let su = singular(s.eval(&u))?;
        let mut out = OpList::new();
        for i in inner(d) {
            for j in inner(d) {
                out.push(format!("s_{i}{j}"), l0.get(0, 0).mul(su.get(i - 2, j - 2)).expect("shape"));
            }
        }
        Ok(out)
    };
    let rhs = |p: &Point| {
        let u = coord(p, "u");
        let (lu, lu2) = mc.pair(&u.times(&qm2))?;
        let mut out = OpList::new();
        for i in inner(d) {
            for j in inner(d) {
                out.push(format!("s_{i}{j}"), minor_c2(&mc.rhat, &lu, &lu2, (1, i), (1, j)));
            }
        }
        Ok(out)
    };
    let v = verify_identity(lhs, rhs, &[("u", bound)], &opts.policy);
    Item::from_verdict("minors.s-factorization", A_MINOR, v)
}

/// `[l_11(u), l^{1i}_{1j}(v)] = 0`; with `mixed` the relation carrying the
/// prefactors `(q^-1 u - q v)/(u - v)`, which coincide at level zero.
fn l11_commutation(mc: &MinorCtx, opts: &CheckOptions, mixed: bool) -> Item {
    let d = mc.md.dim();
    let hl = mc.md.h_l();
    let extra = usize::from(mixed);
    let side = |p: &Point, left: bool| {
        let (u, v) = (coord(p, "u"), coord(p, "v"));
        let l11 = mc.md.l_at(&u)?.get(0, 0).clone();
        let (lv, lv2) = mc.pair(&v)?;
        let c = if mixed {
            let num = mc.q_inv.times(&u).minus(&mc.q.times(&v));
            singular(num.divide(&u.minus(&v)))?
        } else {
            Scalar::one()
        };
        let mut out = OpList::new();
        for i in inner(d) {
            for j in inner(d) {
                let mnr = minor_c2(&mc.rhat, &lv, &lv2, (1, i), (1, j));
                let prod = if left { l11.mul(&mnr) } else { mnr.mul(&l11) }.expect("shape");
                out.push(format!("[l_11, l^1{i}_1{j}]"), prod.scale(&c));
            }
        }
        Ok(out)
    };
    let (id, anchor) = if mixed { ("minors.l11-mixed", A_MINOR) } else { ("minors.l11-commutation", A_MINOR) };
    let v = verify_identity(
        |p: &Point| side(p, true),
        |p: &Point| side(p, false),
        &[("u", hl + extra), ("v", 2 * hl + extra)],
        &opts.policy,
    );
    let item = Item::from_verdict(id, anchor, v);
    if mixed {
        item.with_note("at level zero u_+ = u_- = u, so both prefactors agree")
    } else {
        item
    }
}

/// Valid type-A index pairs for `k = 2`.
fn type_a_pairs(d: usize) -> Vec<[usize; 2]> {
    skew_pairs(d).into_iter().map(|(a, b)| [a, b]).collect()
}

fn type_a_matches_c2(mc: &MinorCtx, opts: &CheckOptions) -> Item {
    let d = mc.md.dim();
    let side = |p: &Point, left: bool| {
        let (lu, lu2) = mc.pair(&coord(p, "u"))?;
        let ls = [lu, lu2];
        let mut out = OpList::new();
        for a in type_a_pairs(d) {
            for b in type_a_pairs(d) {
                let v = if left {
                    minor_type_a(&mc.q, &ls, &a, &b).map_err(|e| EvalError::Other(e.to_string()))?
                } else {
                    minor_c2(&mc.rhat, &ls[0], &ls[1], (a[0], a[1]), (b[0], b[1]))
                };
                out.push(format!("l^{}{}_{}{}", a[0], a[1], b[0], b[1]), v);
            }
        }
        Ok(out)
    };
    let v = verify_identity(|p: &Point| side(p, true), |p: &Point| side(p, false), &[("u", 2 * mc.md.h_l())], &opts.policy);
    Item::from_verdict("minors.type-a-equals-c2", A_TYPEA, v)
}

/// `[l_{a_i b_j}(u), l^{a_1 a_2}_{b_1 b_2}(v)] = 0`.
fn type_a_commutation(mc: &MinorCtx, opts: &CheckOptions) -> Item {
    let d = mc.md.dim();
    let hl = mc.md.h_l();
    let side = |p: &Point, left: bool| {
        let lu = mc.md.l_at(&coord(p, "u"))?;
        let (lv, lv2) = mc.pair(&coord(p, "v"))?;
        let ls = [lv, lv2];
        let mut out = OpList::new();
        for a in type_a_pairs(d) {
            for b in type_a_pairs(d) {
                let mnr = minor_type_a(&mc.q, &ls, &a, &b).map_err(|e| EvalError::Other(e.to_string()))?;
                for &ai in &a {
                    for &bj in &b {
                        let x = lu.get(ai - 1, bj - 1);
                        let prod = if left { x.mul(&mnr) } else { mnr.mul(x) }.expect("shape");
                        out.push(format!("[l_{ai}{bj}, l^{}{}_{}{}]", a[0], a[1], b[0], b[1]), prod);
                    }
                }
            }
        }
        Ok(out)
    };
    let v = verify_identity(|p: &Point| side(p, true), |p: &Point| side(p, false), &[("u", hl), ("v", 2 * hl)], &opts.policy);
    Item::from_verdict("minors.type-a-commutation", A_TYPEA, v)
}

/// The embeddings `psi_m`: RLL for the image of `psi_1`, agreement of the
/// elimination form with the boxed formula, `psi_1 o psi_1 = psi_2`,
/// commutation with the leading block, and the minor ratio form.
pub fn check_embedding(n: usize, m: usize, opts: &CheckOptions) -> CheckReport {
    let md = match FusedModule::build(n, m, opts) {
        Ok(md) => md,
        Err(e) => return setup_failure("embedding", n, m, opts, e),
    };
    let mut rep = CheckReport::new("embedding", md.report_params(opts));
    if n < 2 {
        rep.push(Item::pass("embedding.psi0-identity", A_HOM).with_note("rank 1 has no proper embedding; psi_0 is the identity"));
        return rep;
    }
    rep.push(timed(|| psi1_rll(&md, opts)));
    for k in 1..n {
        rep.push(timed(|| psi_recomposition(&md, k, opts)));
        rep.push(timed(|| psi_commutation(&md, k, opts)));
        rep.push(timed(|| sylvester(&md, k, opts)));
    }
    if n >= 3 {
        rep.push(timed(|| psi_consistency(&md)));
    }
    rep
}

/// `Rbar^{[n-1]}(u/v) S_1(u) S_2(v) = S_2(v) S_1(u) Rbar^{[n-1]}(u/v)`
/// for `S = psi_1(L)`, with the cleared R-matrix.
fn psi1_rll(md: &FusedModule, opts: &CheckOptions) -> Item {
    let id = "embedding.psi1-rll";
    let set = match RMatrixSet::<Scalar>::build(md.n - 1, &md.ctx) {
        Ok(s) => s.with_perturbation(opts.perturb),
        Err(e) => return Item::error(id, A_HOM, e),
    };
    let s = md.gauss.psi_image(1);
    let bound = 2 + s.height();
    let side = |p: &Point, left: bool| {
        let (u, v) = (coord(p, "u"), coord(p, "v"));
        let su = singular(s.eval(&u))?;
        let sv = singular(s.eval(&v))?;
        let r = nc_from_scalar(&set.rbar_cleared(&u, &v), su.wdims());
        Ok(if left { r.mul(&pair_product(&su, &sv, false)) } else { pair_product(&su, &sv, true).mul(&r) })
    };
    let v = verify_identity(|p: &Point| side(p, true), |p: &Point| side(p, false), &[("u", bound), ("v", bound)], &opts.policy);
    Item::from_verdict(id, A_HOM, v).with_note(format!("rank {} R-matrix on the image of psi_1", md.n - 1))
}

/// `F^{[n-k]} H^{[n-k]} E^{[n-k]}` equals the boxed formula for `psi_k`.
fn psi_recomposition(md: &FusedModule, k: usize, opts: &CheckOptions) -> Item {
    let g = &md.gauss;
    let w: usize = md.wdims().iter().product();
    let rest: Vec<usize> = (k..md.dim() - k).collect();
    let hs = &g.h[k..md.dim() - k];
    let f = g.f.submatrix(&rest, &rest);
    let e = g.e.submatrix(&rest, &rest);
    let bound = f.height() + h_height(hs) + e.height() + (k * w + 1) * md.h_l();
    let lhs = |p: &Point| {
        let u = coord(p, "u");
        let h: Vec<_> = hs.iter().map(|b| eval_at(b, &u)).collect::<Result<_, _>>()?;
        Ok(singular(f.eval(&u))?.mul(&NCMatrix::diagonal(&h)).mul(&singular(e.eval(&u))?))
    };
    let rhs = |p: &Point| {
        let lu = md.l_at(&coord(p, "u"))?;
        psi_direct(&lu, k).map_err(|_| EvalError::Singular)
    };
    let v = verify_identity(lhs, rhs, &[("u", bound)], &opts.policy);
    Item::from_verdict(format!("embedding.recomposition.m{k}"), A_RECOMP, v)
}

/// `[l_ab(u), psi_k(l_ij)(v)] = 0` for `a, b <= k`.
fn psi_commutation(md: &FusedModule, k: usize, opts: &CheckOptions) -> Item {
    let s = md.gauss.psi_image(k);
    let side = |p: &Point, left: bool| {
        let lu = md.l_at(&coord(p, "u"))?;
        let sv = singular(s.eval(&coord(p, "v")))?;
        let mut out = OpList::new();
        for a in 0..k {
            for b in 0..k {
                for i in 0..sv.size() {
                    for j in 0..sv.size() {
                        let (x, y) = (lu.get(a, b), sv.get(i, j));
                        let prod = if left { x.mul(y) } else { y.mul(x) }.expect("shape");
                        out.push(format!("[l_{}{}, psi(l_{}{})]", a + 1, b + 1, i + k + 1, j + k + 1), prod);
                    }
                }
            }
        }
        Ok(out)
    };
    let v = verify_identity(
        |p: &Point| side(p, true),
        |p: &Point| side(p, false),
        &[("u", md.h_l()), ("v", s.height())],
        &opts.policy,
    );
    Item::from_verdict(format!("embedding.commutation.m{k}"), A_HOM, v)
}

/// `l^{1..k}_{1..k}(uq^-2k) psi_k(l_ij)(u) = l^{1..k i}_{1..k j}(uq^-2k)`.
fn sylvester(md: &FusedModule, k: usize, opts: &CheckOptions) -> Item {
    let s = md.gauss.psi_image(k);
    let hl = md.h_l();
    let bound = (2 * k + 1) * hl + s.height();
    let q = md.qp(1);
    let shift = md.qp(-2 * k as i64);
    let q2 = md.qp(2);
    let lead: Vec<usize> = (1..=k).collect();
    let series = |u: &Scalar| -> Result<Vec<NCMatrix<Scalar>>, EvalError> {
        let mut x = u.times(&shift);
        let mut out = Vec::with_capacity(k + 1);
        for _ in 0..=k {
            out.push(md.l_at(&x)?);
            x = x.times(&q2);
        }
        Ok(out)
    };
    let side = |p: &Point, left: bool| {
        let u = coord(p, "u");
        let ls = series(&u)?;
        let mut out = OpList::new();
        let other = |e: GaussError| EvalError::Other(e.to_string());
        let base = if left { Some(minor_type_a(&q, &ls[..k], &lead, &lead).map_err(other)?) } else { None };
        let su = if left { Some(singular(s.eval(&u))?) } else { None };
        for i in 0..s.size() {
            for j in 0..s.size() {
                let (li, lj) = (i + k + 1, j + k + 1);
                let v = if let (Some(b), Some(su)) = (&base, &su) {
                    b.mul(su.get(i, j)).expect("shape")
                } else {
                    let mut rows = lead.clone();
                    rows.push(li);
                    let mut cols = lead.clone();
                    cols.push(lj);
                    minor_type_a(&q, &ls, &rows, &cols).map_err(other)?
                };
                out.push(format!("psi_{k}(l_{li}{lj})"), v);
            }
        }
        Ok(out)
    };
    let v = verify_identity(|p: &Point| side(p, true), |p: &Point| side(p, false), &[("u", bound)], &opts.policy);
    Item::from_verdict(format!("embedding.sylvester.m{k}"), A_SYLV, v)
}

/// `psi_1 o psi_1 = psi_2`, both sides by the boxed formula, exactly.
fn psi_consistency(md: &FusedModule) -> Item {
    let id = "embedding.psi1-psi1-psi2";
    let run = || -> Result<Option<String>, GaussError> {
        let once = psi_direct(&md.l, 1)?;
        let twice = psi_direct(&once, 1)?;
        let direct = psi_direct(&md.l, 2)?;
        Ok(twice.first_difference(&direct))
    };
    match run() {
        Ok(d) => Item::from_diff(id, A_CONSIST, vec![], d).with_note("exact over the field of rational functions in u"),
        Err(e) => Item::error(id, A_CONSIST, e),
    }
}
