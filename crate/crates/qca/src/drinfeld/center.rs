//! The central series `z(u)`: the `D`-transpose product, its scalar form,
//! centrality, the product formula in the `h_i`, and the reflection
//! identities of the Gaussian generators.

use crate::field::{verify_identity, Comparable, EvalError, Field, Point, RatU, Ring, Scalar};
use crate::gauss::{coord, eval_at, op_height, FusedModule, NCMatrix};
use crate::report::{timed, CheckReport, Item};
use crate::rmatrix::RMatrixSet;
use crate::tensor::{IndexData, TensorOperator};
use crate::CheckOptions;

const A_CENTER: &str = "belong to the center of the algebra";
const A_PRODUCT: &str = "we have the respective formulas";
const A_REFLECT: &str = "relations hold in the algebra";
const A_H1: &str = "Using the Gauss decomposition for";

struct Center {
    md: FusedModule,
    /// `L(u)` as one operator on `aux x W`.
    l: TensorOperator<RatU>,
    set: RMatrixSet<Scalar>,
    idx: IndexData,
}

impl Center {
    /// `D L(u xi)^t D^-1`.
    fn twisted(&self, u: &Scalar) -> Result<TensorOperator<Scalar>, EvalError> {
        let lt = eval_at(&self.l, &u.times(&self.md.xi))?.partial_transpose(0, &self.idx).map_err(|e| EvalError::Other(e.to_string()))?;
        let dims = self.l.dims();
        let d = self.set.d_on(0, dims, false);
        let d_inv = self.set.d_on(0, dims, true);
        Ok(d.mul(&lt).and_then(|x| x.mul(&d_inv)).expect("shape"))
    }

    /// `z(u)` from the left or right product.
    fn z(&self, u: &Scalar, left: bool) -> Result<TensorOperator<Scalar>, EvalError> {
        let lu = eval_at(&self.l, u)?;
        let t = self.twisted(u)?;
        Ok(if left { lu.mul(&t) } else { t.mul(&lu) }.expect("shape"))
    }

    /// The `W`-operator `z_11(u)`.
    fn z_w(&self, u: &Scalar) -> Result<TensorOperator<Scalar>, EvalError> {
        Ok(NCMatrix::from_operator(&self.z(u, true)?).get(0, 0).clone())
    }

    fn aux_scalar(&self, w: &TensorOperator<Scalar>) -> TensorOperator<Scalar> {
        NCMatrix::diagonal(&vec![w.clone(); self.md.dim()]).to_operator()
    }

    fn h_l(&self) -> usize {
        self.md.h_l()
    }
}

/// `(x - q^2)(x xi - 1) / ((1 - x)(1 - x xi q^2))`.
fn crossing_scalar(md: &FusedModule, x: &Scalar) -> Option<Scalar> {
    let q2 = md.qp(2);
    let one = Scalar::one();
    let xx = x.times(&md.xi);
    let num = x.minus(&q2).times(&xx.minus(&one));
    let den = one.minus(x).times(&one.minus(&xx.times(&q2)));
    num.divide(&den)
}

/// Centrality of `z(u)`, its closed forms and the reflection identities.
pub fn check_center(n: usize, m: usize, opts: &CheckOptions) -> CheckReport {
    let md = match FusedModule::build(n, m, opts) {
        Ok(md) => md,
        Err(e) => {
            let mut p = opts.params();
            p.insert("n".into(), n.to_string());
            p.insert("m".into(), m.to_string());
            let mut rep = CheckReport::new("center", p);
            rep.push(Item::error("center.setup", A_CENTER, e));
            return rep;
        }
    };
    let mut rep = CheckReport::new("center", md.report_params(opts));
    let set = match RMatrixSet::build(n, &md.ctx) {
        Ok(s) => s,
        Err(e) => {
            rep.push(Item::error("center.setup", A_CENTER, e));
            return rep;
        }
    };
    let idx = IndexData::new(n).expect("n >= 1");
    let c = Center { l: md.l.to_operator(), md, set, idx };
    rep.push(timed(|| two_sided(&c, opts)));
    rep.push(timed(|| scalar_form(&c, opts)));
    rep.push(timed(|| crossing_product(&c, opts)));
    rep.push(timed(|| h_product(&c, opts)));
    rep.push(timed(|| commutes(&c, opts)));
    rep.push(timed(|| h1_relation(&c, opts)));
    rep.push(timed(|| reflection(&c.md, true, opts.perturb)));
    rep.push(timed(|| reflection(&c.md, false, opts.perturb)));
    rep
}

/// `L(u) D L(u xi)^t D^-1 = D L(u xi)^t D^-1 L(u)`.
fn two_sided(c: &Center, opts: &CheckOptions) -> Item {
    let v = verify_identity(|p: &Point| c.z(&coord(p, "u"), true), |p: &Point| c.z(&coord(p, "u"), false), &[("u", 2 * c.h_l())], &opts.policy);
    Item::from_verdict("center.z-two-sided", A_CENTER, v)
}

/// `z(u)` is `1 x z_11(u)` on `aux x W`.
fn scalar_form(c: &Center, opts: &CheckOptions) -> Item {
    let v = verify_identity(
        |p: &Point| c.z(&coord(p, "u"), true),
        |p: &Point| Ok(c.aux_scalar(&c.z_w(&coord(p, "u"))?)),
        &[("u", 2 * c.h_l())],
        &opts.policy,
    );
    Item::from_verdict("center.z-scalar", A_CENTER, v)
}

/// `z(u) = prod_j c(u/a_j)` times the identity.
fn crossing_product(c: &Center, opts: &CheckOptions) -> Item {
    let md = &c.md;
    let rhs = |p: &Point| {
        let u = coord(p, "u");
        let mut s = Scalar::one();
        for a in &md.params {
            s = s.times(&crossing_scalar(md, &u.divide(a).expect("nonzero parameter")).ok_or(EvalError::Singular)?);
        }
        Ok(TensorOperator::identity(c.l.dims()).scale(&s))
    };
    let bound = 2 * c.h_l() + 2 * md.m;
    Item::from_verdict("center.z-crossing", A_CENTER, verify_identity(|p: &Point| c.z(&coord(p, "u"), true), rhs, &[("u", bound)], &opts.policy))
}

/// `z(u) = prod_{i<n} h_i(u xi q^2i)^-1 prod_{i<=n} h_i(u xi q^{2i-2}) h_{n+1}(u)`.
fn h_product(c: &Center, opts: &CheckOptions) -> Item {
    let md = &c.md;
    let g = &md.gauss;
    let n = md.n;
    let mut bound = 2 * c.h_l() + op_height(&g.h[n]);
    for i in 1..=n {
        bound += op_height(&g.h[i - 1]);
        if i < n {
            bound += op_height(&g.h_inv[i - 1]);
        }
    }
    let rhs = |p: &Point| {
        let u = coord(p, "u");
        let ux = u.times(&md.xi);
        let mut acc = eval_at(&g.h[n], &u)?;
        for i in 1..=n {
            acc = eval_at(&g.h[i - 1], &ux.times(&md.qp(2 * i as i64 - 2)))?.mul(&acc).expect("shape");
            if i < n {
                acc = eval_at(&g.h_inv[i - 1], &ux.times(&md.qp(2 * i as i64)))?.mul(&acc).expect("shape");
            }
        }
        Ok(acc)
    };
    let v = verify_identity(|p: &Point| c.z_w(&coord(p, "u")), rhs, &[("u", bound)], &opts.policy);
    Item::from_verdict("center.z-h-product", A_PRODUCT, v)
}

/// `z_11(u)` commutes with every `l_ij(v)`.
fn commutes(c: &Center, opts: &CheckOptions) -> Item {
    let side = |p: &Point, left: bool| -> Result<TensorOperator<Scalar>, EvalError> {
        let z = c.aux_scalar(&c.z_w(&coord(p, "u"))?);
        let lv = eval_at(&c.l, &coord(p, "v"))?;
        Ok(if left { z.mul(&lv) } else { lv.mul(&z) }.expect("shape"))
    };
    let v = verify_identity(|p: &Point| side(p, true), |p: &Point| side(p, false), &[("u", 2 * c.h_l()), ("v", c.h_l())], &opts.policy);
    Item::from_verdict("center.z-commutes", A_CENTER, v)
}

/// `h_{1'}(u) h_1(u xi) = z(u)`.
fn h1_relation(c: &Center, opts: &CheckOptions) -> Item {
    let md = &c.md;
    let g = &md.gauss;
    let last = md.dim() - 1;
    let bound = 2 * c.h_l() + op_height(&g.h[last]) + op_height(&g.h[0]);
    let rhs = |p: &Point| {
        let u = coord(p, "u");
        Ok(eval_at(&g.h[last], &u)?.mul(&eval_at(&g.h[0], &u.times(&md.xi))?).expect("shape"))
    };
    let v = verify_identity(|p: &Point| c.z_w(&coord(p, "u")), rhs, &[("u", bound)], &opts.policy);
    Item::from_verdict("center.h1-relation", A_H1, v)
}

/// `e_{(i+1)',i'}(u) = -e_{i,i+1}(u xi q^2i)` and
/// `f_{i',(i+1)'}(u) = -f_{i+1,i}(u xi q^2i)`, exactly.
fn reflection(md: &FusedModule, upper: bool, perturb: bool) -> Item {
    let id = if upper { "center.reflection-e" } else { "center.reflection-f" };
    let n = md.n;
    let g = &md.gauss;
    let k = md.dim();
    // the negative control uses xi q in place of xi
    let xi = if perturb { md.xi.times(&md.qp(1)) } else { md.xi.clone() };
    for i in 1..n {
        let c = xi.times(&md.qp(2 * i as i64));
        let (ip, i1p) = (k + 1 - i, k - i);
        let (got, src) = if upper { (g.e_entry(i1p, ip), g.e_entry(i, i + 1)) } else { (g.f_entry(ip, i1p), g.f_entry(i + 1, i)) };
        let want = src.map(|r| r.scale_var(&c).neg());
        if let Some(d) = got.first_difference(&want) {
            return Item::from_diff(id, A_REFLECT, vec![("i".into(), i.to_string())], Some(d));
        }
    }
    let item = Item::pass(id, A_REFLECT);
    if n == 1 {
        item.with_note("no index pairs at n = 1")
    } else {
        item
    }
}
