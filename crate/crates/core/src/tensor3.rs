//! Sparse order-3 tensors and the standard constructions: Coppersmith–Winograd
//! tensors, group addition tensors, structure tensors of algebras, `A_{T,k}`,
//! `T_S`, one-generic extensions and Kronecker powers.
//!
//! All indices are 0-based. For `cw(n)` index 0 is the unit `e1` and index
//! `n-1` is the top vector `en`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, parse_rat, QMatrix, Rat, SparseEchelon};
use crate::Limits;

pub type Index3 = [usize; 3];

/// Sparse tensor in `K^{d1} ⊗ K^{d2} ⊗ K^{d3}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    dims: [usize; 3],
    entries: BTreeMap<Index3, Rat>,
    labels: Option<[Vec<String>; 3]>,
}

impl Tensor3 {
    pub fn new(dims: [usize; 3]) -> Self {
        Tensor3 {
            dims,
            entries: BTreeMap::new(),
            labels: None,
        }
    }

    pub fn from_entries(dims: [usize; 3], entries: impl IntoIterator<Item = (Index3, Rat)>) -> Result<Self> {
        let mut t = Self::new(dims);
        for (idx, v) in entries {
            t.add(idx, v)?;
        }
        Ok(t)
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn entries(&self) -> &BTreeMap<Index3, Rat> {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn labels(&self) -> Option<&[Vec<String>; 3]> {
        self.labels.as_ref()
    }

    pub fn set_labels(&mut self, labels: [Vec<String>; 3]) -> Result<()> {
        for a in 0..3 {
            if labels[a].len() != self.dims[a] {
                return Err(Error::DimensionMismatch(format!(
                    "axis {a} has {} labels for dimension {}",
                    labels[a].len(),
                    self.dims[a]
                )));
            }
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn get(&self, idx: Index3) -> Rat {
        self.entries.get(&idx).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds `v` to the entry at `idx`.
    pub fn add(&mut self, idx: Index3, v: Rat) -> Result<()> {
        if (0..3).any(|a| idx[a] >= self.dims[a]) {
            return Err(Error::OutOfRange(format!("index {idx:?} for dims {:?}", self.dims)));
        }
        if v.is_zero() {
            return Ok(());
        }
        let e = self.entries.entry(idx).or_insert_with(Rat::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&idx);
        }
        Ok(())
    }

    /// Contraction with the dual basis vector `index` on `axis`; rows and
    /// columns follow the remaining axes in order.
    pub fn slice(&self, axis: usize, index: usize) -> Result<QMatrix> {
        if axis > 2 || index >= self.dims[axis] {
            return Err(Error::OutOfRange(format!("slice ({axis}, {index})")));
        }
        let (ra, ca) = other_axes(axis);
        let mut m = QMatrix::zeros(self.dims[ra], self.dims[ca]);
        for (idx, v) in &self.entries {
            if idx[axis] == index {
                m.set(idx[ra], idx[ca], v.clone());
            }
        }
        Ok(m)
    }

    /// Rank of the flattening `K^{d_axis*} → (other two factors)`.
    pub fn flattening_rank(&self, axis: usize) -> usize {
        let (ra, ca) = other_axes(axis);
        let mut rows: BTreeMap<usize, BTreeMap<usize, Rat>> = BTreeMap::new();
        for (idx, v) in &self.entries {
            rows.entry(idx[axis])
                .or_default()
                .insert(idx[ra] * self.dims[ca] + idx[ca], v.clone());
        }
        let mut e = SparseEchelon::new();
        for r in rows.into_values() {
            e.insert(r);
        }
        e.len()
    }

    /// Ok when every flattening has full rank; otherwise names the first
    /// failing axis.
    pub fn check_concise(&self) -> Result<()> {
        for a in 0..3 {
            let r = self.flattening_rank(a);
            if r != self.dims[a] {
                return Err(Error::NotConcise(format!(
                    "axis {a}: flattening rank {r} < dimension {}",
                    self.dims[a]
                )));
            }
        }
        Ok(())
    }

    /// Restriction to the listed coordinates on each axis, reindexed in the
    /// given order.
    pub fn restrict(&self, keep: [&[usize]; 3]) -> Result<Tensor3> {
        let mut pos: [BTreeMap<usize, usize>; 3] = Default::default();
        for a in 0..3 {
            for (new, &old) in keep[a].iter().enumerate() {
                if old >= self.dims[a] {
                    return Err(Error::OutOfRange(format!("axis {a} index {old}")));
                }
                pos[a].insert(old, new);
            }
        }
        let dims = [keep[0].len(), keep[1].len(), keep[2].len()];
        let mut t = Tensor3::new(dims);
        for (idx, v) in &self.entries {
            if let (Some(&i), Some(&j), Some(&k)) =
                (pos[0].get(&idx[0]), pos[1].get(&idx[1]), pos[2].get(&idx[2]))
            {
                t.entries.insert([i, j, k], v.clone());
            }
        }
        if let Some(l) = &self.labels {
            t.labels = Some([0, 1, 2].map(|a| keep[a].iter().map(|&i| l[a][i].clone()).collect()));
        }
        Ok(t)
    }

    /// Tensor with the same entries but with indices mapped by `f`.
    pub fn relabel(&self, maps: [&[usize]; 3]) -> Result<Tensor3> {
        let mut t = Tensor3::new(self.dims);
        for (idx, v) in &self.entries {
            t.add([maps[0][idx[0]], maps[1][idx[1]], maps[2][idx[2]]], v.clone())?;
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TensorFile::from(self)).expect("tensor serializes")
    }

    pub fn from_json(s: &str) -> Result<Tensor3> {
        let f: TensorFile = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        f.try_into()
    }
}

fn other_axes(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// On-disk tensor format.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TensorFile {
    pub dims: [usize; 3],
    pub entries: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<[Vec<String>; 3]>,
}

impl From<&Tensor3> for TensorFile {
    fn from(t: &Tensor3) -> Self {
        TensorFile {
            dims: t.dims,
            entries: t
                .entries
                .iter()
                .map(|(i, v)| (i[0], i[1], i[2], v.to_string()))
                .collect(),
            labels: t.labels.clone(),
        }
    }
}

impl TryFrom<TensorFile> for Tensor3 {
    type Error = Error;
    fn try_from(f: TensorFile) -> Result<Tensor3> {
        let mut t = Tensor3::new(f.dims);
        for (i, j, k, v) in f.entries {
            t.add([i, j, k], parse_rat(&v)?)?;
        }
        if let Some(l) = f.labels {
            t.set_labels(l)?;
        }
        Ok(t)
    }
}

/// The Coppersmith–Winograd tensor
/// `Σ_{i=1}^n e1⊗ei⊗ei + Σ_{i=2}^n ei⊗e1⊗ei + Σ_{i=2}^{n-1} ei⊗ei⊗en`.
pub fn cw(n: usize) -> Result<Tensor3> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("cw needs n >= 3, got {n}")));
    }
    let one = Rat::one();
    let mut t = Tensor3::new([n, n, n]);
    for i in 0..n {
        t.add([0, i, i], one.clone())?;
    }
    for i in 1..n {
        t.add([i, 0, i], one.clone())?;
    }
    for i in 1..n - 1 {
        t.add([i, i, n - 1], one.clone())?;
    }
    Ok(t)
}

/// Finite abelian group `Π Z/m_i`; elements are enumerated in lexicographic
/// order of their coordinates, so the neutral element has index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.iter().any(|&m| m == 0) {
            return Err(Error::OutOfRange("cyclic orders must be positive".into()));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn cyclic(m: usize) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn coords(&self, mut idx: usize) -> Vec<usize> {
        let mut c = vec![0; self.orders.len()];
        for (slot, &m) in c.iter_mut().zip(&self.orders).rev() {
            *slot = idx % m;
            idx /= m;
        }
        c
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.orders)
            .fold(0, |acc, (&c, &m)| acc * m + c % m)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let ca = self.coords(a);
        let cb = self.coords(b);
        let s: Vec<usize> = ca
            .iter()
            .zip(&cb)
            .zip(&self.orders)
            .map(|((x, y), m)| (x + y) % m)
            .collect();
        self.index(&s)
    }

    pub fn label(&self, idx: usize) -> String {
        let c: Vec<String> = self.coords(idx).iter().map(|x| x.to_string()).collect();
        c.join(",")
    }
}

/// `T_G = Σ_{g1+g2=g3} g1⊗g2⊗g3`.
pub fn group_tensor(g: &AbelianGroup) -> Tensor3 {
    let n = g.order();
    let mut t = Tensor3::new([n, n, n]);
    for a in 0..n {
        for b in 0..n {
            t.entries.insert([a, b, g.add(a, b)], Rat::one());
        }
    }
    let labels: Vec<String> = (0..n).map(|i| g.label(i)).collect();
    t.labels = Some([labels.clone(), labels.clone(), labels]);
    t
}

/// Multiplication table: `table[i][j]` holds the coordinates of `b_i·b_j`.
pub type MultTable = Vec<Vec<Vec<Rat>>>;

/// `T[i][j][k]` = coefficient of `b_k` in `b_i·b_j`.
pub fn structure_tensor(table: &MultTable) -> Result<Tensor3> {
    let n = table.len();
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch(format!("row {i} has {} products", row.len())));
        }
        for (j, v) in row.iter().enumerate() {
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "product ({i}, {j}) has {} coordinates",
                    v.len()
                )));
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            if table[i][j] != table[j][i] {
                return Err(Error::AsymmetricTable(i, j));
            }
        }
    }
    let mut t = Tensor3::new([n, n, n]);
    for (i, row) in table.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            for (k, c) in v.iter().enumerate() {
                t.add([i, j, k], c.clone())?;
            }
        }
    }
    Ok(t)
}

/// Tensor in `S²(K^n) ⊗ K^m`, stored as `m` symmetric `n×n` slices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiallySymmetricTensor {
    n: usize,
    slices: Vec<QMatrix>,
}

impl PartiallySymmetricTensor {
    pub fn new(n: usize, slices: Vec<QMatrix>) -> Result<Self> {
        for (j, s) in slices.iter().enumerate() {
            if s.rows() != n || s.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "slice {j} is {}x{}, expected {n}x{n}",
                    s.rows(),
                    s.cols()
                )));
            }
            if !s.is_symmetric() {
                return Err(Error::DimensionMismatch(format!("slice {j} is not symmetric")));
            }
        }
        Ok(PartiallySymmetricTensor { n, slices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.slices.len()
    }

    pub fn slices(&self) -> &[QMatrix] {
        &self.slices
    }

    pub fn to_tensor(&self) -> Tensor3 {
        let mut t = Tensor3::new([self.n, self.n, self.m()]);
        for (l, s) in self.slices.iter().enumerate() {
            for i in 0..self.n {
                for j in 0..self.n {
                    let v = s.get(i, j);
                    if !v.is_zero() {
                        t.entries.insert([i, j, l], v.clone());
                    }
                }
            }
        }
        t
    }
}

/// Multiplication tensor of `A_{T,k}` in the basis
/// `(1, x_1..x_n, y_1..y_k, z_1..z_m)`: the unit acts as identity,
/// `x_i·x_j = Σ_l T_l[i][j]·z_l`, and every other product is zero.
pub fn algebra_a_tk(t: &PartiallySymmetricTensor, k: usize) -> Tensor3 {
    let (n, m) = (t.n(), t.m());
    let dim = 1 + n + k + m;
    let mut out = Tensor3::new([dim, dim, dim]);
    for b in 0..dim {
        out.entries.insert([0, b, b], Rat::one());
        out.entries.insert([b, 0, b], Rat::one());
    }
    for (l, s) in t.slices().iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let v = s.get(i, j);
                if !v.is_zero() {
                    out.entries.insert([1 + i, 1 + j, 1 + n + k + l], v.clone());
                }
            }
        }
    }
    let mut names = vec!["1".to_string()];
    names.extend((1..=n).map(|i| format!("x{i}")));
    names.extend((1..=k).map(|i| format!("y{i}")));
    names.extend((1..=m).map(|i| format!("z{i}")));
    out.labels = Some([names.clone(), names.clone(), names]);
    out
}

/// `T_S`: slice `j` is the `2n×2n` matrix with `T(e_j*)` in the upper right
/// block and its transpose in the lower left block.
pub fn symmetrize_ts(t: &Tensor3) -> Result<PartiallySymmetricTensor> {
    let [d1, d2, m] = t.dims();
    if d1 != d2 {
        return Err(Error::DimensionMismatch(format!(
            "first two dimensions differ: {d1} vs {d2}"
        )));
    }
    let n = d1;
    let mut slices = vec![QMatrix::zeros(2 * n, 2 * n); m];
    for (idx, v) in t.entries() {
        let s = &mut slices[idx[2]];
        s.set(idx[0], n + idx[1], v.clone());
        s.set(n + idx[1], idx[0], v.clone());
    }
    PartiallySymmetricTensor::new(2 * n, slices)
}

/// `T' = T + e_0 ⊗ id` in `K^{a+1} ⊗ K^{b+k} ⊗ K^{b+k}`.
///
/// First axis: index 0 is the new `e_0`, old index `i` moves to `i+1`.
/// Second axis: old coordinates first, then `k` padding coordinates.
/// Third axis: `x_1..x_b, y_1..y_{k-c}, z_1..z_c`; old coordinate `l` goes to
/// `b+k-c+l`.
pub fn one_generic_extension(t: &Tensor3, k: usize) -> Result<Tensor3> {
    t.check_concise()?;
    let [a, b, c] = t.dims();
    if b + k < c {
        return Err(Error::OutOfRange(format!(
            "need b + k >= c, got b = {b}, k = {k}, c = {c}"
        )));
    }
    let w = b + k;
    let mut out = Tensor3::new([a + 1, w, w]);
    for j in 0..w {
        out.entries.insert([0, j, j], Rat::one());
    }
    for (idx, v) in t.entries() {
        out.add([idx[0] + 1, idx[1], w - c + idx[2]], v.clone())?;
    }
    Ok(out)
}

/// Kronecker product; index `(i, i')` becomes `i·d' + i'`.
pub fn kronecker(s: &Tensor3, t: &Tensor3, limits: &Limits) -> Result<Tensor3> {
    let needed = s.nnz() as u128 * t.nnz() as u128;
    if needed > limits.max_entries as u128 {
        return Err(Error::guard("Kronecker product entries", needed, limits.max_entries));
    }
    let mut dims = [0; 3];
    for a in 0..3 {
        dims[a] = s.dims[a]
            .checked_mul(t.dims[a])
            .ok_or_else(|| Error::guard("Kronecker product dimension", "overflow", usize::MAX))?;
    }
    let mut out = Tensor3::new(dims);
    for (i, v) in &s.entries {
        for (j, w) in &t.entries {
            let idx = [0, 1, 2].map(|a| i[a] * t.dims[a] + j[a]);
            out.entries.insert(idx, v * w);
        }
    }
    if let (Some(ls), Some(lt)) = (&s.labels, &t.labels) {
        out.labels = Some([0, 1, 2].map(|a| {
            ls[a]
                .iter()
                .flat_map(|x| lt[a].iter().map(move |y| format!("{x}|{y}")))
                .collect()
        }));
    }
    Ok(out)
}

/// `T^{⊠N}`; the index of a sequence `(i_1..i_N)` is its mixed-radix value
/// with `i_1` most significant.
pub fn kronecker_power(t: &Tensor3, n: u32, limits: &Limits) -> Result<Tensor3> {
    let needed = (t.nnz() as f64).powi(n as i32);
    if needed > limits.max_entries as f64 {
        return Err(Error::guard(
            "Kronecker power entries",
            format!("{}^{n}", t.nnz()),
            limits.max_entries,
        ));
    }
    if n == 0 {
        return Tensor3::from_entries([1, 1, 1], [([0, 0, 0], Rat::one())]);
    }
    let mut acc = t.clone();
    for _ in 1..n {
        acc = kronecker(&acc, t, limits)?;
    }
    Ok(acc)
}

/// Coefficients of `(Σ h_i t^i)^N`: the graded dimensions of `A^{⊗N}` for an
/// algebra with Hilbert function `h`.
pub fn tensor_power_graded_dims(h: &[u64], n: u32) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); acc.len() + h.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, &b) in h.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

/// `Σ_j binom(N,j)·binom(N−j, i−2j)·(n−2)^{i−2j}`: degree-`i` dimension of
/// `A^{⊗N}` for `A` with Hilbert function `(1, n−2, 1)`.
pub fn cw_graded_dim(n: u64, big_n: u64, i: u64) -> BigInt {
    let mut s = BigInt::zero();
    for j in 0..=i / 2 {
        if j > big_n {
            break;
        }
        let r = i - 2 * j;
        s += binomial(big_n, j) * binomial(big_n - j, r) * BigInt::from(n - 2).pow(r as u32);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rank, rat};

    fn support(t: &Tensor3) -> Vec<Index3> {
        t.entries().keys().copied().collect()
    }

    #[test]
    fn cw_examples() {
        let t = cw(3).unwrap();
        let one_based: Vec<Index3> = support(&t).iter().map(|i| i.map(|x| x + 1)).collect();
        let mut want = vec![[1, 1, 1], [1, 2, 2], [1, 3, 3], [2, 1, 2], [3, 1, 3], [2, 2, 3]];
        want.sort();
        assert_eq!(one_based, want);
        assert_eq!(cw(4).unwrap().nnz(), 9);
        for n in 3..7 {
            assert_eq!(cw(n).unwrap().slice(0, 0).unwrap(), QMatrix::identity(n));
        }
        assert!(cw(2).is_err());
    }

    #[test]
    fn group_tensor_examples() {
        assert_eq!(group_tensor(&AbelianGroup::cyclic(2).unwrap()).nnz(), 4);
        assert_eq!(group_tensor(&AbelianGroup::cyclic(3).unwrap()).nnz(), 9);
        let g = AbelianGroup::new(vec![2, 2]).unwrap();
        let t = group_tensor(&g);
        assert_eq!(t.nnz(), 16);
        assert!(t.entries().keys().all(|i| i[2] == i[0] ^ i[1]));
        assert_eq!(t.slice(0, 0).unwrap(), QMatrix::identity(4));
    }

    fn unit_table(n: usize, products: &[(usize, usize, usize)]) -> MultTable {
        let mut t = vec![vec![vec![Rat::zero(); n]; n]; n];
        for &(i, j, k) in products {
            t[i][j][k] = Rat::one();
        }
        t
    }

    #[test]
    fn structure_tensor_examples() {
        let tb = structure_tensor(&unit_table(2, &[(0, 0, 0), (0, 1, 1), (1, 0, 1)])).unwrap();
        assert_eq!(support(&tb), vec![[0, 0, 0], [0, 1, 1], [1, 0, 1]]);
        let chain = unit_table(3, &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (0, 2, 2), (2, 0, 2), (1, 1, 2)]);
        assert_eq!(structure_tensor(&chain).unwrap().nnz(), 6);
        // K[x,y]/(x²,y²) with basis 1, x, y, xy
        let mut prods = vec![];
        for i in 0..4 {
            for j in 0..4 {
                if i & j == 0 {
                    prods.push((i, j, i | j));
                }
            }
        }
        assert_eq!(structure_tensor(&unit_table(4, &prods)).unwrap().nnz(), 9);
        let bad = unit_table(2, &[(0, 1, 1)]);
        assert_eq!(structure_tensor(&bad), Err(Error::AsymmetricTable(1, 0)));
    }

    #[test]
    fn a_tk_chain_and_padding() {
        let t = PartiallySymmetricTensor::new(1, vec![QMatrix::from_i64(&[&[1]])]).unwrap();
        let chain = unit_table(3, &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (0, 2, 2), (2, 0, 2), (1, 1, 2)]);
        let mut a = algebra_a_tk(&t, 0);
        a.labels = None;
        assert_eq!(a, structure_tensor(&chain).unwrap());
        for k in 0..4 {
            let a = algebra_a_tk(&t, k);
            assert_eq!(a.dims(), [3 + k; 3]);
            assert_eq!(a.nnz(), 2 * (3 + k) - 1 + 1);
        }
    }

    #[test]
    fn ts_examples() {
        let t = Tensor3::from_entries([1, 1, 1], [([0, 0, 0], rat(1))]).unwrap();
        let s = symmetrize_ts(&t).unwrap();
        assert_eq!(s.slices(), &[QMatrix::from_i64(&[&[0, 1], &[1, 0]])]);
        let z2 = group_tensor(&AbelianGroup::cyclic(2).unwrap());
        let s = symmetrize_ts(&z2).unwrap();
        assert_eq!((s.n(), s.m()), (4, 2));
        assert!(s.slices().iter().all(QMatrix::is_symmetric));
        // T is the restriction of T_S to (first block, second block, all)
        let ts = s.to_tensor();
        let mut z = z2.clone();
        z.labels = None;
        assert_eq!(ts.restrict([&[0, 1], &[2, 3], &[0, 1]]).unwrap(), z);
        assert!(symmetrize_ts(&Tensor3::new([1, 2, 1])).is_err());
    }

    #[test]
    fn one_generic_examples() {
        let t = Tensor3::from_entries([1, 1, 1], [([0, 0, 0], rat(1))]).unwrap();
        let e = one_generic_extension(&t, 1).unwrap();
        assert_eq!(e.dims(), [2, 2, 2]);
        assert_eq!(e.slice(0, 0).unwrap(), QMatrix::identity(2));
        assert_eq!(support(&e), vec![[0, 0, 0], [0, 1, 1], [1, 0, 1]]);
        let z2 = group_tensor(&AbelianGroup::cyclic(2).unwrap());
        let e = one_generic_extension(&z2, 1).unwrap();
        assert_eq!(e.slice(0, 0).unwrap(), QMatrix::identity(3));
        let mut back = e.restrict([&[1, 2], &[0, 1], &[1, 2]]).unwrap();
        back.labels = None;
        let mut z = z2.clone();
        z.labels = None;
        assert_eq!(back, z);
        let not_concise = Tensor3::from_entries([2, 1, 1], [([0, 0, 0], rat(1))]).unwrap();
        assert!(matches!(one_generic_extension(&not_concise, 1), Err(Error::NotConcise(_))));
    }

    #[test]
    fn kronecker_examples() {
        let lim = Limits::default();
        let c = cw(3).unwrap();
        assert_eq!(kronecker_power(&c, 1, &lim).unwrap(), c);
        assert_eq!(kronecker_power(&c, 2, &lim).unwrap().nnz(), 36);
        let tb = structure_tensor(&unit_table(2, &[(0, 0, 0), (0, 1, 1), (1, 0, 1)])).unwrap();
        let p = kronecker_power(&tb, 3, &lim).unwrap();
        assert_eq!((p.dims(), p.nnz()), ([8, 8, 8], 27));
        let tiny = Limits {
            max_entries: 30,
            ..Limits::default()
        };
        assert!(matches!(kronecker_power(&c, 2, &tiny), Err(Error::Guard { .. })));
    }

    #[test]
    fn slices_and_conciseness() {
        let g = group_tensor(&AbelianGroup::cyclic(3).unwrap());
        let s = g.slice(0, 1).unwrap();
        assert_eq!(rank(&s), 3);
        assert!(g.slice(3, 0).is_err());
        assert!(g.check_concise().is_ok());
        let mut t = Tensor3::new([2, 2, 2]);
        t.add([0, 0, 0], rat(1)).unwrap();
        assert!(t.slice(0, 1).unwrap().is_zero());
        assert!(t.check_concise().is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut t = cw(3).unwrap();
        t.add([1, 2, 0], Rat::new(3.into(), 7.into())).unwrap();
        let s = t.to_json();
        let back = Tensor3::from_json(&s).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_json(), s);
        let g = group_tensor(&AbelianGroup::cyclic(2).unwrap());
        assert_eq!(Tensor3::from_json(&g.to_json()).unwrap(), g);
        assert!(Tensor3::from_json("{\"dims\":[1,1,1],\"entries\":[[0,0,5,\"1\"]]}").is_err());
    }

    #[test]
    fn graded_dimension_formula() {
        for big_n in 0..=6u32 {
            let coeffs = tensor_power_graded_dims(&[1, 2, 1], big_n);
            for (i, c) in coeffs.iter().enumerate() {
                assert_eq!(*c, cw_graded_dim(4, big_n as u64, i as u64), "N={big_n} i={i}");
            }
        }
    }
}
