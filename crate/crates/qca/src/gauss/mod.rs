//! Matrices with operator entries, quasideterminants, Gauss decomposition
//! `L = F H E`, quantum minors and the embeddings `psi_m`.
//!
//! An [`NCMatrix`] is a `k x k` grid of W-operators. Inverting one is a
//! single commutative inversion of size `k dim W` over the field.

use crate::field::{Comparable, Field, Poly, RatU, Ring, Scalar};
use crate::rmatrix::RMatrixSet;
use crate::tensor::{TensorError, TensorOperator};
use thiserror::Error;

mod checks;
mod module;

pub use checks::{check_embedding, check_gauss, check_minors};
pub use module::{coord, effective_mode, eval_at, FusedModule, OpList};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussError {
    #[error("singular {0}")]
    Singular(String),
    #[error("index constraint violated: {0}")]
    IndexConstraint(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("{0}")]
    Setup(String),
}

/// A `k x k` matrix whose entries are operators on `W` with shape `wdims`.
#[derive(Clone, Debug, PartialEq)]
pub struct NCMatrix<T> {
    k: usize,
    wdims: Vec<usize>,
    blocks: Vec<TensorOperator<T>>,
}

impl<T: Ring> NCMatrix<T> {
    pub fn from_fn(k: usize, wdims: &[usize], f: impl Fn(usize, usize) -> TensorOperator<T>) -> Self {
        let mut blocks = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let b = f(i, j);
                assert_eq!(b.dims(), wdims, "entry shape");
                blocks.push(b);
            }
        }
        NCMatrix { k, wdims: wdims.to_vec(), blocks }
    }

    /// Splits an operator on `[k] ++ wdims` into its aux-space blocks.
    pub fn from_operator(op: &TensorOperator<T>) -> Self {
        let k = op.dims()[0];
        let wdims = op.dims()[1..].to_vec();
        Self::from_fn(k, &wdims, |i, j| op.block(1, &[i], &[j]).expect("in range"))
    }

    pub fn to_operator(&self) -> TensorOperator<T> {
        let grid: Vec<Vec<TensorOperator<T>>> = (0..self.k).map(|i| (0..self.k).map(|j| self.get(i, j).clone()).collect()).collect();
        TensorOperator::from_blocks(&grid).expect("uniform blocks")
    }

    pub fn identity(k: usize, wdims: &[usize]) -> Self {
        Self::from_fn(k, wdims, |i, j| if i == j { TensorOperator::identity(wdims) } else { TensorOperator::zeros(wdims) })
    }

    pub fn diagonal(entries: &[TensorOperator<T>]) -> Self {
        let wdims = entries[0].dims().to_vec();
        Self::from_fn(entries.len(), &wdims, |i, j| if i == j { entries[i].clone() } else { TensorOperator::zeros(&wdims) })
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn wdims(&self) -> &[usize] {
        &self.wdims
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> &TensorOperator<T> {
        &self.blocks[i * self.k + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TensorOperator<T>) {
        self.blocks[i * self.k + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.k;
        Self::from_fn(k, &self.wdims, |i, j| {
            let mut acc = TensorOperator::zeros(&self.wdims);
            for l in 0..k {
                let (a, b) = (self.get(i, l), other.get(l, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b).expect("shape")).expect("shape");
                }
            }
            acc
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.k, &self.wdims, |i, j| self.get(i, j).sub(other.get(i, j)).expect("shape"))
    }

    /// Rows and columns picked by 0-based index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len());
        Self::from_fn(rows.len(), &self.wdims, |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&TensorOperator<T>) -> TensorOperator<U>) -> NCMatrix<U> {
        NCMatrix { k: self.k, wdims: self.wdims.clone(), blocks: self.blocks.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&TensorOperator<T>) -> Result<TensorOperator<U>, E>) -> Result<NCMatrix<U>, E> {
        let blocks = self.blocks.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(NCMatrix { k: self.k, wdims: self.wdims.clone(), blocks })
    }
}

impl<T: Field> NCMatrix<T> {
    pub fn inverse(&self) -> Result<Self, TensorError> {
        Ok(Self::from_operator(&self.to_operator().inverse()?))
    }

    /// The quasideterminant `|A|_ij = a_ij - r (A^ij)^-1 c`, 1-based.
    pub fn quasideterminant(&self, i: usize, j: usize) -> Result<TensorOperator<T>, GaussError> {
        let (i, j) = (i - 1, j - 1);
        if self.k == 1 {
            return Ok(self.get(0, 0).clone());
        }
        let rows: Vec<usize> = (0..self.k).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.k).filter(|&c| c != j).collect();
        let minor = self.submatrix(&rows, &cols);
        let inv = minor.inverse().map_err(|_| GaussError::Singular(format!("minor A^{{{}{}}}", i + 1, j + 1)))?;
        let mut acc = self.get(i, j).clone();
        for (p, &c) in cols.iter().enumerate() {
            let r = self.get(i, c);
            if r.is_zero() {
                continue;
            }
            for (s, &rr) in rows.iter().enumerate() {
                let cc = self.get(rr, j);
                let mid = inv.get(p, s);
                if cc.is_zero() || mid.is_zero() {
                    continue;
                }
                acc = acc.sub(&r.mul(mid)?.mul(cc)?)?;
            }
        }
        Ok(acc)
    }
}

impl<T: Ring + Comparable> Comparable for NCMatrix<T> {
    fn first_difference(&self, other: &Self) -> Option<String> {
        if self.k != other.k {
            return Some(format!("sizes differ: {} vs {}", self.k, other.k));
        }
        for i in 0..self.k {
            for j in 0..self.k {
                if let Some(d) = self.get(i, j).first_difference(other.get(i, j)) {
                    return Some(format!("entry [{},{}] {d}", i + 1, j + 1));
                }
            }
        }
        None
    }
}

impl NCMatrix<RatU> {
    /// Value at a point; `None` at a pole.
    pub fn eval(&self, x: &Scalar) -> Option<NCMatrix<Scalar>> {
        self.try_map(|b| eval_op(b, x).ok_or(())).ok()
    }

    /// Degree bound for the entries after clearing one common denominator.
    pub fn height(&self) -> usize {
        height_of(self.blocks.iter().flat_map(|b| b.entries().iter()))
    }
}

pub fn eval_op(op: &TensorOperator<RatU>, x: &Scalar) -> Option<TensorOperator<Scalar>> {
    op.try_map(|r| r.eval(x).ok_or(())).ok()
}

/// `max(deg lcm, max_ij deg(lcm * r_ij))` over the given entries: the
/// degree of the polynomial matrix obtained by clearing one common
/// denominator.
pub fn height_of<'a>(entries: impl Iterator<Item = &'a RatU>) -> usize {
    let mut lcm: Poly<Scalar> = Poly::one();
    let mut excess: i64 = 0;
    let mut dens: Vec<Poly<Scalar>> = Vec::new();
    let mut nums: Vec<(usize, usize)> = Vec::new();
    for r in entries {
        if r.num().is_zero() {
            continue;
        }
        if !dens.contains(r.den()) {
            dens.push(r.den().clone());
        }
        nums.push((r.num().deg0(), r.den().deg0()));
    }
    for d in &dens {
        let g = lcm.gcd(d);
        lcm = lcm.mul(&d.div_exact(&g).expect("gcd divides"));
    }
    let l = lcm.deg0() as i64;
    for (a, b) in nums {
        excess = excess.max(a as i64 - b as i64);
    }
    (l + excess.max(0)) as usize
}

pub fn op_height(op: &TensorOperator<RatU>) -> usize {
    height_of(op.entries().iter())
}

/// `psi_m` by the boxed formula: the quasideterminants with the leading
/// `m x m` block for labels `m+1 ..= (m+1)'`, sharing one flattened
/// inversion of that block.
pub fn psi_direct<T: Field>(l: &NCMatrix<T>, m: usize) -> Result<NCMatrix<T>, GaussError> {
    if m == 0 {
        return Ok(l.clone());
    }
    let lead: Vec<usize> = (0..m).collect();
    let inv = l.submatrix(&lead, &lead).inverse().map_err(|_| GaussError::Singular(format!("leading {m}x{m} minor")))?;
    if l.size() < 2 * m {
        return Err(GaussError::IndexConstraint(format!("psi_{m} needs at least {} labels", 2 * m)));
    }
    let rest = l.size() - 2 * m;
    // r_a = sum_b inv_ab l_bj, then l_ij - sum_a l_ia r_a.
    let mut out = NCMatrix::from_fn(rest, l.wdims(), |i, j| l.get(m + i, m + j).clone());
    for j in 0..rest {
        let r: Vec<TensorOperator<T>> = (0..m)
            .map(|a| {
                let mut acc = TensorOperator::zeros(l.wdims());
                for b in 0..m {
                    acc = acc.add(&inv.get(a, b).mul(l.get(b, m + j)).expect("shape")).expect("shape");
                }
                acc
            })
            .collect();
        for i in 0..rest {
            let mut v = out.get(i, j).clone();
            for (a, ra) in r.iter().enumerate() {
                v = v.sub(&l.get(m + i, a).mul(ra)?)?;
            }
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// A numeric aux matrix acting as `R tensor 1_W` on pair-indexed blocks.
pub fn nc_from_scalar(r: &TensorOperator<Scalar>, wdims: &[usize]) -> NCMatrix<Scalar> {
    NCMatrix::from_fn(r.size(), wdims, |i, j| {
        let c = r.get(i, j);
        if c.is_zero() {
            TensorOperator::zeros(wdims)
        } else {
            TensorOperator::identity(wdims).scale(c)
        }
    })
}

/// Blocks `S(u)_ab S(v)_cd` (or the reversed product) indexed by pairs
/// `(a, c), (b, d)`: the operator `S_1(u) S_2(v)` on `aux x aux x W`.
pub fn pair_product(su: &NCMatrix<Scalar>, sv: &NCMatrix<Scalar>, reversed: bool) -> NCMatrix<Scalar> {
    let d = su.size();
    NCMatrix::from_fn(d * d, su.wdims(), |r, c| {
        let (a, cc) = (r / d, r % d);
        let (b, dd) = (c / d, c % d);
        let (x, y) = (su.get(a, b), sv.get(cc, dd));
        if reversed { y.mul(x) } else { x.mul(y) }.expect("shape")
    })
}

/// `(F, H, E)` with `F` lower unipotent, `H` diagonal and `E` upper
/// unipotent; `schur[s]` is the matrix left after eliminating the first
/// `s` rows and columns, so `schur[0] = L`.
#[derive(Clone, Debug)]
pub struct GaussData<T> {
    pub f: NCMatrix<T>,
    pub h: Vec<TensorOperator<T>>,
    pub h_inv: Vec<TensorOperator<T>>,
    pub e: NCMatrix<T>,
    pub schur: Vec<NCMatrix<T>>,
}

/// Block elimination: `h_1 = l_11`, `e_1j = h_1^-1 l_1j`,
/// `f_i1 = l_i1 h_1^-1`, then recurse on the Schur complement.
pub fn gauss_decompose<T: Field>(l: &NCMatrix<T>) -> Result<GaussData<T>, GaussError> {
    let k = l.size();
    let wd = l.wdims().to_vec();
    let mut f = NCMatrix::identity(k, &wd);
    let mut e = NCMatrix::identity(k, &wd);
    let mut h = Vec::with_capacity(k);
    let mut h_inv = Vec::with_capacity(k);
    let mut schur = vec![l.clone()];
    let mut cur = l.clone();
    for s in 0..k {
        let hs = cur.get(0, 0).clone();
        let hinv = hs.inverse().map_err(|_| GaussError::Singular(format!("h_{}", s + 1)))?;
        let rest = cur.size() - 1;
        let erow: Vec<TensorOperator<T>> = (1..=rest).map(|j| hinv.mul(cur.get(0, j)).expect("shape")).collect();
        let fcol: Vec<TensorOperator<T>> = (1..=rest).map(|i| cur.get(i, 0).mul(&hinv).expect("shape")).collect();
        for j in 0..rest {
            e.set(s, s + 1 + j, erow[j].clone());
            f.set(s + 1 + j, s, fcol[j].clone());
        }
        let next = NCMatrix::from_fn(rest, &wd, |i, j| {
            let a = cur.get(i + 1, j + 1);
            let c = cur.get(i + 1, 0);
            if c.is_zero() || erow[j].is_zero() {
                a.clone()
            } else {
                a.sub(&c.mul(&erow[j]).expect("shape")).expect("shape")
            }
        });
        h.push(hs);
        h_inv.push(hinv);
        if rest > 0 {
            schur.push(next.clone());
        }
        cur = next;
    }
    Ok(GaussData { f, h, h_inv, e, schur })
}

impl<T: Field> GaussData<T> {
    pub fn h_matrix(&self) -> NCMatrix<T> {
        NCMatrix::diagonal(&self.h)
    }

    pub fn reassemble(&self) -> NCMatrix<T> {
        self.f.mul(&self.h_matrix()).mul(&self.e)
    }

    /// `e_ij`, 1-based, `i < j`.
    pub fn e_entry(&self, i: usize, j: usize) -> &TensorOperator<T> {
        self.e.get(i - 1, j - 1)
    }

    /// `f_ji`, 1-based, `i < j`.
    pub fn f_entry(&self, j: usize, i: usize) -> &TensorOperator<T> {
        self.f.get(j - 1, i - 1)
    }

    /// `psi_m` applied to the generator matrix: the Schur complement
    /// restricted to labels `m+1 ..= (m+1)'`.
    pub fn psi_image(&self, m: usize) -> NCMatrix<T> {
        let s = &self.schur[m];
        let keep: Vec<usize> = (0..s.size() - m).collect();
        s.submatrix(&keep, &keep)
    }
}

impl GaussData<RatU> {
    pub fn eval(&self, x: &Scalar) -> Option<GaussData<Scalar>> {
        let ev = |v: &[TensorOperator<RatU>]| v.iter().map(|b| eval_op(b, x)).collect::<Option<Vec<_>>>();
        Some(GaussData {
            f: self.f.eval(x)?,
            h: ev(&self.h)?,
            h_inv: ev(&self.h_inv)?,
            e: self.e.eval(x)?,
            schur: self.schur.iter().map(|s| s.eval(x)).collect::<Option<Vec<_>>>()?,
        })
    }
}

/// `Rhat(x) = (xq - q^-1)/(x - 1) Rbar(x)` at a constant `x`.
pub fn rhat_at(set: &RMatrixSet<Scalar>, x: &Scalar) -> Option<TensorOperator<Scalar>> {
    let den = x.minus(&Scalar::one()).times(&x.minus(&set.xi));
    let inv = den.recip()?;
    Some(set.rbar_cleared(x, &Scalar::one()).scale(&inv))
}

/// The minor `<a1,a2| Rhat(q^-2) L_1(u) L_2(uq^2) |b1,b2>` from the values
/// `lu = L(u)` and `lu2 = L(uq^2)`; labels 1-based.
pub fn minor_c2(rhat: &TensorOperator<Scalar>, lu: &NCMatrix<Scalar>, lu2: &NCMatrix<Scalar>, a: (usize, usize), b: (usize, usize)) -> TensorOperator<Scalar> {
    let d = lu.size();
    let row = (a.0 - 1) * d + (a.1 - 1);
    let mut acc = TensorOperator::zeros(lu.wdims());
    for c1 in 0..d {
        for c2 in 0..d {
            let coef = rhat.get(row, c1 * d + c2);
            if coef.is_zero() {
                continue;
            }
            let p = lu.get(c1, b.0 - 1).mul(lu2.get(c2, b.1 - 1)).expect("shape");
            acc = acc.add(&p.scale(coef)).expect("shape");
        }
    }
    acc
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, k - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

/// Type-A quantum minor `sum_s (-q)^{-l(s)} l_{a_s(1) b_1}(u) ... l_{a_s(k) b_k}(uq^{2k-2})`
/// from the values `ls[t] = L(u q^{2t})`; labels 1-based.
pub fn minor_type_a(ctx_q: &Scalar, ls: &[NCMatrix<Scalar>], rows: &[usize], cols: &[usize]) -> Result<TensorOperator<Scalar>, GaussError> {
    let k = rows.len();
    let d = ls[0].size();
    check_type_a_indices(d, rows, cols)?;
    let mq_inv = ctx_q.negated().recip().expect("q nonzero");
    let mut acc = TensorOperator::zeros(ls[0].wdims());
    for s in permutations(k) {
        let mut p = TensorOperator::identity(ls[0].wdims());
        for t in 0..k {
            p = p.mul(ls[t].get(rows[s[t]] - 1, cols[t] - 1))?;
        }
        let c = mq_inv.pow_u(inversions(&s) as u32);
        acc = acc.add(&p.scale(&c))?;
    }
    Ok(acc)
}

/// Labels strictly increasing, in range, and no pair `i, i'`.
pub fn check_type_a_indices(d: usize, rows: &[usize], cols: &[usize]) -> Result<(), GaussError> {
    if rows.len() != cols.len() || rows.is_empty() {
        return Err(GaussError::IndexConstraint("row and column lists must be nonempty of equal length".into()));
    }
    for list in [rows, cols] {
        for (t, &a) in list.iter().enumerate() {
            if a == 0 || a > d {
                return Err(GaussError::IndexConstraint(format!("label {a} out of range")));
            }
            if t > 0 && list[t - 1] >= a {
                return Err(GaussError::IndexConstraint(format!("labels {list:?} not strictly increasing")));
            }
            if list.contains(&(d + 1 - a)) {
                return Err(GaussError::IndexConstraint(format!("labels {list:?} contain a pair i, i'")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::QCtx;

    fn scalar_nc(k: usize, vals: &[i64]) -> NCMatrix<Scalar> {
        NCMatrix::from_fn(k, &[1], |i, j| TensorOperator::diagonal(vec![Scalar::int(vals[i * k + j])]))
    }

    #[test]
    fn quasideterminant_2x2() {
        let a = scalar_nc(2, &[2, 3, 5, 7]);
        let qd = a.quasideterminant(2, 2).unwrap();
        // det / a11 = (14 - 15) / 2
        assert_eq!(*qd.get(0, 0), Scalar::frac(-1, 2));
        let id = NCMatrix::<Scalar>::identity(3, &[2]);
        assert_eq!(id.quasideterminant(2, 2).unwrap(), TensorOperator::identity(&[2]));
    }

    #[test]
    fn noncommutative_2x2_elimination() {
        let ctx = QCtx::symbolic();
        let l = crate::rep::fused_l(1, &[Scalar::int(2), Scalar::int(3)], crate::rep::Sign::Plus, &ctx).unwrap();
        let lu = NCMatrix::from_operator(&l.at(&Scalar::int(5)).unwrap());
        let g = gauss_decompose(&lu).unwrap();
        let (l11, l12, l21, l22) = (lu.get(0, 0), lu.get(0, 1), lu.get(1, 0), lu.get(1, 1));
        let inv = l11.inverse().unwrap();
        assert_eq!(g.h[0], *l11);
        assert_eq!(*g.e_entry(1, 2), inv.mul(l12).unwrap());
        assert_eq!(*g.f_entry(2, 1), l21.mul(&inv).unwrap());
        assert_eq!(g.h[1], l22.sub(&l21.mul(&inv).unwrap().mul(l12).unwrap()).unwrap());
        assert_eq!(g.h[1], lu.quasideterminant(2, 2).unwrap());
        assert_eq!(g.reassemble(), lu);
    }

    #[test]
    fn identity_decomposes_trivially() {
        let id = NCMatrix::<Scalar>::identity(4, &[2]);
        let g = gauss_decompose(&id).unwrap();
        assert_eq!(g.f, id);
        assert_eq!(g.e, id);
        assert!(g.h.iter().all(|h| *h == TensorOperator::identity(&[2])));
    }

    #[test]
    fn type_a_index_rules() {
        assert!(check_type_a_indices(4, &[1, 2], &[1, 3]).is_ok());
        assert!(check_type_a_indices(4, &[1, 4], &[1, 2]).is_err());
        assert!(check_type_a_indices(4, &[2, 1], &[1, 2]).is_err());
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(inversions(&[2, 1, 0]), 3);
    }
}
