//! The shifted map onto Drinfeld generators: commutators of `x^±` modes,
//! support of `psi` and `phi`, and truncated Serre relations.

use super::relations::setup;
use super::{DrinfeldSeries, ModeTable};
use crate::field::{qbinom, Comparable, Field, Ring, Scalar};
use crate::report::{timed, CheckReport, Item};
use crate::tensor::TensorOperator;
use crate::CheckOptions;

const A_MAIN: &str = "define an isomorphism";

/// Largest mode used in the Serre relations.
const SERRE_WINDOW: i64 = 3;

fn at(t: &ModeTable, k: i64) -> &TensorOperator<Scalar> {
    t.get(k).expect("inside the window")
}

fn pt(pairs: &[(&str, i64)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// Drinfeld-generator images under the shifted map.
pub fn check_main_map(n: usize, m: usize, opts: &CheckOptions) -> CheckReport {
    let (_md, ds, mut rep) = match setup("main-map", n, m, opts, opts.trunc) {
        Ok(v) => v,
        Err(r) => return r,
    };
    let mut xp: Vec<ModeTable> = (1..=n).map(|i| ds.x_main(true, i)).collect();
    let xm: Vec<ModeTable> = (1..=n).map(|i| ds.x_main(false, i)).collect();
    if opts.perturb {
        xp[0] = xp[0].scaled(|_| ds.q(1));
    }
    let psi: Vec<ModeTable> = (1..=n).map(|i| ds.psi(i)).collect();
    let phi: Vec<ModeTable> = (1..=n).map(|i| ds.phi(i)).collect();
    rep.push(timed(|| commutator(&ds, &xp, &xm, &psi, &phi)));
    rep.push(timed(|| support(&ds, &psi, &phi)));
    rep.push(timed(|| constant_terms(&psi, &phi)));
    let w = SERRE_WINDOW.min(ds.window);
    for (plus, xs) in [(true, &xp), (false, &xm)] {
        let sign = if plus { "plus" } else { "minus" };
        rep.push(timed(|| serre(&ds, xs, w).with_id(format!("main-map.serre.{sign}"))));
        rep.push(timed(|| nonadjacent(xs, w).with_id(format!("main-map.nonadjacent.{sign}"))));
    }
    rep
}

trait WithId {
    fn with_id(self, id: String) -> Item;
}

impl WithId for Item {
    fn with_id(mut self, id: String) -> Item {
        self.id = id;
        self
    }
}

/// `[x^+_{i,m}, x^-_{j,l}] = delta_ij (psi_{i,m+l} - phi_{i,m+l})/(q_i - q_i^-1)`.
fn commutator(ds: &DrinfeldSeries, xp: &[ModeTable], xm: &[ModeTable], psi: &[ModeTable], phi: &[ModeTable]) -> Item {
    let id = "main-map.commutator";
    let w = ds.window;
    for i in 1..=ds.n {
        let c = ds.qi_diff(i).recip().expect("q_i is not a root of unity");
        for j in 1..=ds.n {
            for m in -w..=w {
                for l in -w..=w {
                    let (a, b) = (at(&xp[i - 1], m), at(&xm[j - 1], l));
                    let lhs = a.commutator(b).expect("shape");
                    let rhs = if i == j {
                        at(&psi[i - 1], m + l).sub(at(&phi[i - 1], m + l)).expect("shape").scale(&c)
                    } else {
                        TensorOperator::zeros(a.dims())
                    };
                    if let Some(d) = lhs.first_difference(&rhs) {
                        return Item::from_diff(id, A_MAIN, pt(&[("i", i as i64), ("j", j as i64), ("m", m), ("l", l)]), Some(d));
                    }
                }
            }
        }
    }
    Item::pass(id, A_MAIN)
}

/// `psi_{i,p} = 0` for `p < 0` and `phi_{i,p} = 0` for `p > 0`.
fn support(ds: &DrinfeldSeries, psi: &[ModeTable], phi: &[ModeTable]) -> Item {
    let id = "main-map.psi-phi-support";
    for i in 1..=ds.n {
        let (lo, hi) = psi[i - 1].window();
        for p in lo..=hi {
            if p < 0 && !at(&psi[i - 1], p).is_zero() {
                return Item::from_diff(id, A_MAIN, pt(&[("i", i as i64), ("p", p)]), Some("psi has a negative mode".into()));
            }
            if p > 0 && !at(&phi[i - 1], p).is_zero() {
                return Item::from_diff(id, A_MAIN, pt(&[("i", i as i64), ("p", p)]), Some("phi has a positive mode".into()));
            }
        }
    }
    Item::pass(id, A_MAIN)
}

/// `psi_{i,0} phi_{i,0} = 1`.
fn constant_terms(psi: &[ModeTable], phi: &[ModeTable]) -> Item {
    let id = "main-map.psi0-phi0";
    for (i, (a, b)) in psi.iter().zip(phi).enumerate() {
        let prod = at(a, 0).mul(at(b, 0)).expect("shape");
        let one = TensorOperator::identity(prod.dims());
        if let Some(d) = prod.first_difference(&one) {
            return Item::from_diff(id, A_MAIN, pt(&[("i", i as i64 + 1)]), Some(d));
        }
    }
    Item::pass(id, A_MAIN)
}

/// Sorted multisets of size `r` from `lo..=hi`.
fn multisets(r: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in multisets(r - 1, first, hi) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All orderings of `v`, repeated values counted with multiplicity.
fn orderings(v: &[i64]) -> Vec<Vec<i64>> {
    crate::gauss::permutations(v.len()).into_iter().map(|p| p.iter().map(|&i| v[i]).collect()).collect()
}

/// `sum_pi sum_l (-1)^l [r l]_{q_i} x_{i,k_pi1}..x_{i,k_pil} x_{j,s} x_{i,..}..`
/// vanishes for every adjacent pair, `r = 1 - A_ij`.
fn serre(ds: &DrinfeldSeries, xs: &[ModeTable], w: i64) -> Item {
    let id = "main-map.serre";
    let n = ds.n;
    let cartan = crate::rep::cartan_data(n).expect("n >= 1");
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i.abs_diff(j) == 1 {
                pairs.push((i, j));
            }
        }
    }
    let mut degrees = Vec::new();
    for (i, j) in pairs {
        let r = cartan.serre_degree(i, j) as usize;
        degrees.push(format!("({i},{j}):{r}"));
        let coef: Vec<Scalar> = (0..=r as i64)
            .map(|l| {
                let b: Scalar = qbinom(&ds.ctx, cartan.r[i - 1], r as i64, l);
                if l % 2 == 1 {
                    b.negated()
                } else {
                    b
                }
            })
            .collect();
        let (xi, xj) = (&xs[i - 1], &xs[j - 1]);
        let dims = at(xi, 0).dims().to_vec();
        for ks in multisets(r, -w, w) {
            // prefix and suffix products for every ordering
            let parts: Vec<(Vec<TensorOperator<Scalar>>, Vec<TensorOperator<Scalar>>)> = orderings(&ks)
                .into_iter()
                .map(|ord| {
                    let mut pre = vec![TensorOperator::identity(&dims)];
                    for &k in &ord {
                        let next = pre.last().expect("nonempty").mul(at(xi, k)).expect("shape");
                        pre.push(next);
                    }
                    let mut suf = vec![TensorOperator::identity(&dims)];
                    for &k in ord.iter().rev() {
                        let next = at(xi, k).mul(suf.last().expect("nonempty")).expect("shape");
                        suf.push(next);
                    }
                    suf.reverse();
                    (pre, suf)
                })
                .collect();
            for s in -w..=w {
                let xjs = at(xj, s);
                let mut acc = TensorOperator::zeros(&dims);
                for (pre, suf) in &parts {
                    for l in 0..=r {
                        if pre[l].is_zero() || suf[l].is_zero() {
                            continue;
                        }
                        let t = pre[l].mul(xjs).expect("shape").mul(&suf[l]).expect("shape");
                        acc = acc.add(&t.scale(&coef[l])).expect("shape");
                    }
                }
                if let Some((rw, cl, v)) = nonzero_entry(&acc) {
                    let mut p = pt(&[("i", i as i64), ("j", j as i64), ("s", s)]);
                    p.push(("k".into(), format!("{ks:?}")));
                    return Item::from_diff(id, A_MAIN, p, Some(format!("entry ({rw},{cl}) = {}", crate::field::format_scalar(&v))));
                }
            }
        }
    }
    Item::pass(id, A_MAIN).with_note(format!("window [-{w},{w}], r per pair {}", degrees.join(" ")))
}

fn nonzero_entry(op: &TensorOperator<Scalar>) -> Option<(usize, usize, Scalar)> {
    let size = op.size();
    op.entries().iter().position(|v| !v.is_zero()).map(|p| (p / size, p % size, op.entries()[p].clone()))
}

/// `[x_{i,k}, x_{j,l}] = 0` for `|i - j| > 1`.
fn nonadjacent(xs: &[ModeTable], w: i64) -> Item {
    let id = "main-map.nonadjacent";
    let n = xs.len();
    let mut pairs = 0;
    for i in 1..=n {
        for j in i + 2..=n {
            pairs += 1;
            for k in -w..=w {
                for l in -w..=w {
                    let c = at(&xs[i - 1], k).commutator(at(&xs[j - 1], l)).expect("shape");
                    if let Some((rw, cl, v)) = nonzero_entry(&c) {
                        return Item::from_diff(id, A_MAIN, pt(&[("i", i as i64), ("j", j as i64), ("k", k), ("l", l)]), Some(format!("entry ({rw},{cl}) = {}", crate::field::format_scalar(&v))));
                    }
                }
            }
        }
    }
    let item = Item::pass(id, A_MAIN);
    if pairs == 0 {
        item.with_note("no pairs with |i - j| > 1 at this rank")
    } else {
        item
    }
}
