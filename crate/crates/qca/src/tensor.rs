//! Dense operators on tensor products of sites.
//!
//! Site 0 is the most significant digit of the flat index (row-major).
//! By convention auxiliary spaces come first and module sites after, so
//! `L_1 L_2` acting on `aux1 (x) aux2 (x) module^m` uses sites 0 and 1 for
//! the two auxiliary copies.
//!
//! Basis labels are 0-based internally; every public function taking or
//! returning a label says which convention it uses.

use crate::field::{Comparable, Field, Ring};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("position {0} repeated")]
    RepeatedPosition(usize),
    #[error("site {0} does not exist")]
    InvalidSite(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("operator is singular")]
    Singular,
}

/// Index data of `C^{2n}`: `i' = 2n - i + 1`, `eps_i`, `bar i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexData {
    pub n: usize,
}

impl IndexData {
    pub fn new(n: usize) -> Result<Self, TensorError> {
        if n == 0 {
            return Err(TensorError::DimensionMismatch("rank n must be at least 1".into()));
        }
        Ok(IndexData { n })
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// `i'` for 1-based `i`.
    pub fn prime(&self, i: usize) -> usize {
        2 * self.n + 1 - i
    }

    /// `eps_i` for 1-based `i`.
    pub fn eps(&self, i: usize) -> i64 {
        if i <= self.n {
            1
        } else {
            -1
        }
    }

    /// `bar i` for 1-based `i`: `n, n-1, ..., 1, -1, ..., -n`.
    pub fn bar(&self, i: usize) -> i64 {
        if i <= self.n {
            (self.n + 1 - i) as i64
        } else {
            -((i - self.n) as i64)
        }
    }

    /// 0-based versions.
    pub fn prime0(&self, a: usize) -> usize {
        2 * self.n - 1 - a
    }

    pub fn eps0(&self, a: usize) -> i64 {
        self.eps(a + 1)
    }

    pub fn bar0(&self, a: usize) -> i64 {
        self.bar(a + 1)
    }
}

/// A square matrix on `prod dims`, indexed by multi-indices.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorOperator<T> {
    dims: Vec<usize>,
    size: usize,
    data: Vec<T>,
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Row offsets of the target sites for each local index, and for each flat
/// index its local index plus the base with target digits cleared.
struct SiteMap {
    local_dims: Vec<usize>,
    offsets: Vec<usize>,
    local_of: Vec<usize>,
    base_of: Vec<usize>,
}

impl SiteMap {
    fn new(dims: &[usize], positions: &[usize]) -> Self {
        let st = strides(dims);
        let size: usize = dims.iter().product();
        let local_dims: Vec<usize> = positions.iter().map(|&p| dims[p]).collect();
        let local_size: usize = local_dims.iter().product();
        let lst = strides(&local_dims);
        let offsets = (0..local_size)
            .map(|t| positions.iter().enumerate().map(|(k, &p)| (t / lst[k]) % local_dims[k] * st[p]).sum())
            .collect();
        let mut local_of = Vec::with_capacity(size);
        let mut base_of = Vec::with_capacity(size);
        for r in 0..size {
            let mut t = 0;
            let mut base = r;
            for (k, &p) in positions.iter().enumerate() {
                let d = (r / st[p]) % dims[p];
                t += d * lst[k];
                base -= d * st[p];
            }
            local_of.push(t);
            base_of.push(base);
        }
        SiteMap { local_dims, offsets, local_of, base_of }
    }
}

impl<T: Ring> TensorOperator<T> {
    pub fn zeros(dims: &[usize]) -> Self {
        let size = dims.iter().product();
        TensorOperator { dims: dims.to_vec(), size, data: vec![T::zero(); size * size] }
    }

    pub fn identity(dims: &[usize]) -> Self {
        let mut m = Self::zeros(dims);
        for i in 0..m.size {
            m.data[i * m.size + i] = T::one();
        }
        m
    }

    /// Builds from a function of flat (row, col).
    pub fn from_fn(dims: &[usize], f: impl Fn(usize, usize) -> T) -> Self {
        let size: usize = dims.iter().product();
        let mut data = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                data.push(f(r, c));
            }
        }
        TensorOperator { dims: dims.to_vec(), size, data }
    }

    /// Diagonal operator on a single site.
    pub fn diagonal(entries: Vec<T>) -> Self {
        let d = entries.len();
        let mut m = Self::zeros(&[d]);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * d + i] = e;
        }
        m
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.size + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.size + c] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    /// Flat index of a 0-based multi-index.
    pub fn flat(&self, multi: &[usize]) -> Result<usize, TensorError> {
        if multi.len() != self.dims.len() {
            return Err(TensorError::IndexOutOfRange(format!("{multi:?} for shape {:?}", self.dims)));
        }
        let mut f = 0;
        for (&i, &d) in multi.iter().zip(&self.dims) {
            if i >= d {
                return Err(TensorError::IndexOutOfRange(format!("{multi:?} for shape {:?}", self.dims)));
            }
            f = f * d + i;
        }
        Ok(f)
    }

    /// 0-based multi-index of a flat index.
    pub fn unflat(&self, mut f: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            out[k] = f % self.dims[k];
            f /= self.dims[k];
        }
        out
    }

    /// `<bra|X|ket>` with 0-based multi-indices.
    pub fn matrix_element(&self, bra: &[usize], ket: &[usize]) -> Result<T, TensorError> {
        let r = self.flat(bra)?;
        let c = self.flat(ket)?;
        Ok(self.get(r, c).clone())
    }

    fn same_shape(&self, other: &Self) -> Result<(), TensorError> {
        if self.dims != other.dims {
            return Err(TensorError::DimensionMismatch(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, TensorError> {
        self.same_shape(other)?;
        let n = self.size;
        let nz = other.row_support();
        let mut out = Self::zeros(&self.dims);
        for i in 0..n {
            let row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for &j in &nz[k] {
                    row[j].add_product(a, &other.data[k * n + j]);
                }
            }
        }
        Ok(out)
    }

    /// Nonzero columns of each row.
    fn row_support(&self) -> Vec<Vec<usize>> {
        let n = self.size;
        (0..n).map(|r| (0..n).filter(|&c| !self.data[r * n + c].is_zero()).collect()).collect()
    }

    /// Nonzero rows of each column.
    fn col_support(&self) -> Vec<Vec<usize>> {
        let n = self.size;
        (0..n).map(|c| (0..n).filter(|&r| !self.data[r * n + c].is_zero()).collect()).collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        self.same_shape(other)?;
        Ok(TensorOperator {
            dims: self.dims.clone(),
            size: self.size,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.same_shape(other)?;
        Ok(TensorOperator {
            dims: self.dims.clone(),
            size: self.size,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.negated())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> TensorOperator<U> {
        TensorOperator { dims: self.dims.clone(), size: self.size, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<TensorOperator<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<U>, E>>()?;
        Ok(TensorOperator { dims: self.dims.clone(), size: self.size, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    fn check_positions(&self, op: &Self, positions: &[usize]) -> Result<(), TensorError> {
        for (k, &p) in positions.iter().enumerate() {
            if p >= self.dims.len() {
                return Err(TensorError::InvalidSite(p));
            }
            if positions[..k].contains(&p) {
                return Err(TensorError::RepeatedPosition(p));
            }
        }
        let local: Vec<usize> = positions.iter().map(|&p| self.dims[p]).collect();
        if local != op.dims {
            return Err(TensorError::DimensionMismatch(format!(
                "operator shape {:?} vs sites {positions:?} of {:?}",
                op.dims, self.dims
            )));
        }
        Ok(())
    }

    /// `op` acting on `positions` of `dims`, identity elsewhere.
    pub fn embed(op: &Self, positions: &[usize], dims: &[usize]) -> Result<Self, TensorError> {
        Self::identity(dims).apply_left(op, positions)
    }

    /// `embed(op, positions) * self` without forming the embedding.
    pub fn apply_left(&self, op: &Self, positions: &[usize]) -> Result<Self, TensorError> {
        self.check_positions(op, positions)?;
        let map = SiteMap::new(&self.dims, positions);
        let ls: usize = map.local_dims.iter().product();
        let n = self.size;
        let nz = self.row_support();
        let mut out = Self::zeros(&self.dims);
        for r in 0..n {
            let t = map.local_of[r];
            let base = map.base_of[r];
            for t2 in 0..ls {
                let a = &op.data[t * ls + t2];
                if a.is_zero() {
                    continue;
                }
                let src = base + map.offsets[t2];
                for &c in &nz[src] {
                    out.data[r * n + c].add_product(a, &self.data[src * n + c]);
                }
            }
        }
        Ok(out)
    }

    /// `self * embed(op, positions)` without forming the embedding.
    pub fn apply_right(&self, op: &Self, positions: &[usize]) -> Result<Self, TensorError> {
        self.check_positions(op, positions)?;
        let map = SiteMap::new(&self.dims, positions);
        let ls: usize = map.local_dims.iter().product();
        let n = self.size;
        let nz = self.col_support();
        let mut out = Self::zeros(&self.dims);
        for c in 0..n {
            let t = map.local_of[c];
            let base = map.base_of[c];
            for t2 in 0..ls {
                let a = &op.data[t2 * ls + t];
                if a.is_zero() {
                    continue;
                }
                let src = base + map.offsets[t2];
                for &r in &nz[src] {
                    out.data[r * n + c].add_product(&self.data[r * n + src], a);
                }
            }
        }
        Ok(out)
    }

    /// The transposition `e_ij -> eps_i eps_j e_{j'i'}` on one site.
    pub fn partial_transpose(&self, site: usize, idx: &IndexData) -> Result<Self, TensorError> {
        if site >= self.dims.len() {
            return Err(TensorError::InvalidSite(site));
        }
        if self.dims[site] != idx.dim() {
            return Err(TensorError::DimensionMismatch(format!("site {site} has dimension {}", self.dims[site])));
        }
        let st = strides(&self.dims)[site];
        let d = self.dims[site];
        let n = self.size;
        let mut out = Self::zeros(&self.dims);
        for r in 0..n {
            let i = (r / st) % d;
            for c in 0..n {
                let x = &self.data[r * n + c];
                if x.is_zero() {
                    continue;
                }
                let j = (c / st) % d;
                let r2 = r - i * st + idx.prime0(j) * st;
                let c2 = c - j * st + idx.prime0(i) * st;
                let v = if idx.eps0(i) * idx.eps0(j) == 1 { x.clone() } else { x.negated() };
                out.data[r2 * n + c2] = v;
            }
        }
        Ok(out)
    }

    /// Contracts one site.
    pub fn partial_trace(&self, site: usize) -> Result<Self, TensorError> {
        if site >= self.dims.len() {
            return Err(TensorError::InvalidSite(site));
        }
        let mut dims = self.dims.clone();
        let d = dims.remove(site);
        let mut out = Self::zeros(&dims);
        let st = strides(&self.dims)[site];
        let m = out.size;
        for r in 0..m {
            for c in 0..m {
                let mut acc = T::zero();
                for i in 0..d {
                    let rr = (r / st) * st * d + i * st + r % st;
                    let cc = (c / st) * st * d + i * st + c % st;
                    acc = acc.plus(&self.data[rr * self.size + cc]);
                }
                out.data[r * m + c] = acc;
            }
        }
        Ok(out)
    }

    /// Relabels sites: site `k` of the result is site `perm[k]` of `self`.
    pub fn permute_sites(&self, perm: &[usize]) -> Result<Self, TensorError> {
        let mut seen = vec![false; self.dims.len()];
        if perm.len() != self.dims.len() {
            return Err(TensorError::DimensionMismatch(format!("permutation {perm:?}")));
        }
        for &p in perm {
            if p >= seen.len() {
                return Err(TensorError::InvalidSite(p));
            }
            if seen[p] {
                return Err(TensorError::RepeatedPosition(p));
            }
            seen[p] = true;
        }
        let dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let old_st = strides(&self.dims);
        let new_st = strides(&dims);
        let to_old = |f: usize| -> usize { (0..dims.len()).map(|k| (f / new_st[k]) % dims[k] * old_st[perm[k]]).sum() };
        let idx: Vec<usize> = (0..self.size).map(to_old).collect();
        let n = self.size;
        Ok(Self::from_fn(&dims, |r, c| self.data[idx[r] * n + idx[c]].clone()))
    }

    pub fn swap_sites(&self, a: usize, b: usize) -> Result<Self, TensorError> {
        let mut perm: Vec<usize> = (0..self.dims.len()).collect();
        if a >= perm.len() || b >= perm.len() {
            return Err(TensorError::InvalidSite(a.max(b)));
        }
        perm.swap(a, b);
        self.permute_sites(&perm)
    }

    /// Kronecker product; sites of `self` come first.
    pub fn kron(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let m = other.size;
        Self::from_fn(&dims, |r, c| self.get(r / m, c / m).times(other.get(r % m, c % m)))
    }

    /// The operator on the trailing sites obtained by fixing the leading
    /// `lead` sites to `bra` (rows) and `ket` (columns), 0-based.
    pub fn block(&self, lead: usize, bra: &[usize], ket: &[usize]) -> Result<Self, TensorError> {
        if bra.len() != lead || ket.len() != lead || lead > self.dims.len() {
            return Err(TensorError::IndexOutOfRange(format!("block {bra:?},{ket:?}")));
        }
        let rest = &self.dims[lead..];
        let m: usize = rest.iter().product();
        let mut rb = 0;
        let mut cb = 0;
        for k in 0..lead {
            if bra[k] >= self.dims[k] || ket[k] >= self.dims[k] {
                return Err(TensorError::IndexOutOfRange(format!("block {bra:?},{ket:?}")));
            }
            rb = rb * self.dims[k] + bra[k];
            cb = cb * self.dims[k] + ket[k];
        }
        let n = self.size;
        Ok(Self::from_fn(rest, |r, c| self.data[(rb * m + r) * n + cb * m + c].clone()))
    }

    /// Assembles an operator on `[k] ++ rest` from a `k x k` grid of blocks
    /// on `rest`; `blocks[i][j]` becomes the `(i, j)` block.
    pub fn from_blocks(blocks: &[Vec<Self>]) -> Result<Self, TensorError> {
        let k = blocks.len();
        if k == 0 || blocks.iter().any(|row| row.len() != k) {
            return Err(TensorError::DimensionMismatch("block grid must be square and nonempty".into()));
        }
        let rest = blocks[0][0].dims.clone();
        for row in blocks {
            for b in row {
                if b.dims != rest {
                    return Err(TensorError::DimensionMismatch(format!("{:?} vs {rest:?}", b.dims)));
                }
            }
        }
        let mut dims = vec![k];
        dims.extend_from_slice(&rest);
        let m = blocks[0][0].size;
        Ok(Self::from_fn(&dims, |r, c| blocks[r / m][c / m].get(r % m, c % m).clone()))
    }

    /// The scalar `s` if `self = s * identity`.
    pub fn scalar_value(&self) -> Option<T> {
        let s = self.data[0].clone();
        for r in 0..self.size {
            for c in 0..self.size {
                let x = &self.data[r * self.size + c];
                let ok = if r == c { *x == s } else { x.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(s)
    }

    /// First entry violating scalar form, as 0-based multi-indices.
    pub fn scalar_defect(&self) -> Option<(Vec<usize>, Vec<usize>, T)> {
        let s = &self.data[0];
        for r in 0..self.size {
            for c in 0..self.size {
                let x = &self.data[r * self.size + c];
                let ok = if r == c { x == s } else { x.is_zero() };
                if !ok {
                    return Some((self.unflat(r), self.unflat(c), x.clone()));
                }
            }
        }
        None
    }

    pub fn commutator(&self, other: &Self) -> Result<Self, TensorError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// One line per nonzero entry: `row | col | value`, 1-based labels.
    pub fn dump(&self, fmt: impl Fn(&T) -> String) -> Vec<String> {
        let mut out = Vec::new();
        let label = |m: Vec<usize>| m.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        for r in 0..self.size {
            for c in 0..self.size {
                let x = &self.data[r * self.size + c];
                if !x.is_zero() {
                    out.push(format!("{} | {} | {}", label(self.unflat(r)), label(self.unflat(c)), fmt(x)));
                }
            }
        }
        out
    }
}

impl<T: Field> TensorOperator<T> {
    /// Exact inverse. The index set is split into connected components of
    /// the sparsity graph, and each block is inverted by Gauss-Jordan.
    pub fn inverse(&self) -> Result<Self, TensorError> {
        let n = self.size;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for r in 0..n {
            for c in 0..n {
                if r != c && !self.data[r * n + c].is_zero() {
                    let (a, b) = (find(&mut parent, r), find(&mut parent, c));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let root = find(&mut parent, i);
            if slot[root] == usize::MAX {
                slot[root] = comps.len();
                comps.push(Vec::new());
            }
            comps[slot[root]].push(i);
        }
        let mut out = Self::zeros(&self.dims);
        for comp in comps {
            let k = comp.len();
            let mut a: Vec<Vec<T>> = comp.iter().map(|&r| comp.iter().map(|&c| self.data[r * n + c].clone()).collect()).collect();
            let mut inv: Vec<Vec<T>> = (0..k).map(|i| (0..k).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
            for col in 0..k {
                let piv = (col..k).find(|&r| !a[r][col].is_zero()).ok_or(TensorError::Singular)?;
                a.swap(col, piv);
                inv.swap(col, piv);
                let pinv = a[col][col].recip().ok_or(TensorError::Singular)?;
                for j in 0..k {
                    a[col][j] = a[col][j].times(&pinv);
                    inv[col][j] = inv[col][j].times(&pinv);
                }
                for r in 0..k {
                    if r == col || a[r][col].is_zero() {
                        continue;
                    }
                    let f = a[r][col].clone();
                    for j in 0..k {
                        if !a[col][j].is_zero() {
                            let d = f.times(&a[col][j]);
                            a[r][j] = a[r][j].minus(&d);
                        }
                        if !inv[col][j].is_zero() {
                            let d = f.times(&inv[col][j]);
                            inv[r][j] = inv[r][j].minus(&d);
                        }
                    }
                }
            }
            for (i, &r) in comp.iter().enumerate() {
                for (j, &c) in comp.iter().enumerate() {
                    out.data[r * n + c] = inv[i][j].clone();
                }
            }
        }
        Ok(out)
    }
}

impl<T: Ring + Comparable> Comparable for TensorOperator<T> {
    fn first_difference(&self, other: &Self) -> Option<String> {
        if self.dims != other.dims {
            return Some(format!("shapes differ: {:?} vs {:?}", self.dims, other.dims));
        }
        let label = |m: Vec<usize>| m.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        for r in 0..self.size {
            for c in 0..self.size {
                if let Some(d) = self.get(r, c).first_difference(other.get(r, c)) {
                    return Some(format!("entry ({} | {}): {d}", label(self.unflat(r)), label(self.unflat(c))));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn op(dims: &[usize], seed: i64) -> TensorOperator<Q> {
        TensorOperator::from_fn(dims, |r, c| Q::from(((r as i64 * 7 + c as i64 * 3 + seed) % 5) - 2))
    }

    #[test]
    fn index_tables() {
        let idx = IndexData::new(2).unwrap();
        let bars: Vec<i64> = (1..=4).map(|i| idx.bar(i)).collect();
        assert_eq!(bars, vec![2, 1, -1, -2]);
        for i in 1..=4 {
            assert_eq!(idx.prime(idx.prime(i)), i);
            assert_eq!(idx.eps(idx.prime(i)), -idx.eps(i));
        }
        assert!(IndexData::new(0).is_err());
    }

    #[test]
    fn embed_and_apply_agree() {
        let dims = [2, 3, 2];
        let a = op(&[2, 2], 1);
        let x = op(&dims, 4);
        let e = TensorOperator::embed(&a, &[2, 0], &dims).unwrap();
        assert_eq!(x.apply_left(&a, &[2, 0]).unwrap(), e.mul(&x).unwrap());
        assert_eq!(x.apply_right(&a, &[2, 0]).unwrap(), x.mul(&e).unwrap());
    }

    #[test]
    fn first_site_embedding_is_kron() {
        let a = op(&[2], 3);
        let e = TensorOperator::embed(&a, &[0], &[2, 2]).unwrap();
        assert_eq!(e, a.kron(&TensorOperator::identity(&[2])));
    }

    #[test]
    fn disjoint_embeddings_commute() {
        let dims = [2, 2, 2];
        let a = TensorOperator::embed(&op(&[2], 1), &[0], &dims).unwrap();
        let b = TensorOperator::embed(&op(&[2], 2), &[1], &dims).unwrap();
        assert!(a.commutator(&b).unwrap().is_zero());
    }

    #[test]
    fn permutation_on_outer_sites() {
        // P on sites (0, 2) maps |i,k,j> to |j,k,i>.
        let p = TensorOperator::<Q>::from_fn(&[2, 2], |r, c| if r == (c % 2) * 2 + c / 2 { Q::from(1) } else { Q::from(0) });
        let e = TensorOperator::embed(&p, &[0, 2], &[2, 2, 2]).unwrap();
        assert_eq!(e.matrix_element(&[1, 0, 0], &[0, 0, 1]).unwrap(), Q::from(1));
        assert_eq!(e.matrix_element(&[0, 0, 1], &[0, 0, 1]).unwrap(), Q::from(0));
    }

    #[test]
    fn transpose_is_involution() {
        let idx = IndexData::new(1).unwrap();
        let x = op(&[2, 2], 2);
        let t = x.partial_transpose(0, &idx).unwrap();
        assert_ne!(t, x);
        assert_eq!(t.partial_transpose(0, &idx).unwrap(), x);
        let mut e11 = TensorOperator::<Q>::zeros(&[2]);
        e11.set(0, 0, Q::from(1));
        let t = e11.partial_transpose(0, &idx).unwrap();
        assert_eq!(*t.get(1, 1), Q::from(1));
        assert_eq!(*t.get(0, 0), Q::from(0));
    }

    #[test]
    fn traces() {
        let a = op(&[3], 1);
        let b = op(&[2], 2);
        let tr_a: Q = (0..3).map(|i| a.get(i, i).clone()).sum();
        assert_eq!(a.kron(&b).partial_trace(0).unwrap(), b.scale(&tr_a));
        let p = TensorOperator::<Q>::from_fn(&[2, 2], |r, c| if r == (c % 2) * 2 + c / 2 { Q::from(1) } else { Q::from(0) });
        assert_eq!(p.partial_trace(0).unwrap(), TensorOperator::identity(&[2]));
    }

    #[test]
    fn blocks_roundtrip() {
        let x = op(&[2, 3], 5);
        let blocks: Vec<Vec<_>> = (0..2).map(|i| (0..2).map(|j| x.block(1, &[i], &[j]).unwrap()).collect()).collect();
        assert_eq!(TensorOperator::from_blocks(&blocks).unwrap(), x);
    }

    #[test]
    fn inverse_is_exact() {
        let mut x = TensorOperator::<Q>::identity(&[2, 2]);
        x.set(0, 3, Q::from(2));
        x.set(3, 1, Q::from(-1));
        x.set(2, 2, Q::from(5));
        let inv = x.inverse().unwrap();
        assert_eq!(x.mul(&inv).unwrap(), TensorOperator::identity(&[2, 2]));
        assert_eq!(TensorOperator::<Q>::zeros(&[2]).inverse(), Err(TensorError::Singular));
    }

    #[test]
    fn swap_sites_twice() {
        let x = op(&[2, 3], 1);
        let y = x.swap_sites(0, 1).unwrap();
        assert_eq!(y.dims(), &[3, 2]);
        assert_eq!(y.swap_sites(0, 1).unwrap(), x);
    }
}
