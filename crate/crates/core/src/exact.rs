//! Rational scalars and exact dense linear algebra.
//!
//! Elimination always pivots on the first nonzero entry in column order, so
//! every result is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Bound;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `n` or `p/q` (optional sign, no spaces).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational number: `{s}`"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.trim().parse().map_err(|_| bad())?;
    let d: BigInt = den.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `m!/(m-k)!`, zero when `k > m`.
pub fn falling_factorial(m: u32, k: u32) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    ((m - k + 1)..=m).fold(BigInt::one(), |acc, j| acc * j)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Converts to `u64` when the value is a nonnegative integer that fits.
pub fn rat_to_u64(r: &Rat) -> Option<u64> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().to_u64()
    } else {
        None
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::WidthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(QMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::WidthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(r) = (pr..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = m.get(pr, c).recip();
            for j in c..m.cols {
                let v = m.get(pr, j) * &inv;
                m.set(pr, j, v);
            }
            for r2 in 0..m.rows {
                if r2 == pr {
                    continue;
                }
                let factor = m.get(r2, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = m.get(pr, j) * &factor;
                    if !sub.is_zero() {
                        let v = m.get(r2, j) - sub;
                        m.set(r2, j, v);
                    }
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        if self.rows != self.cols || b.len() != self.rows {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some((0..n).map(|r| red.get(r, n).clone()).collect())
    }
}

/// Exact rank.
pub fn rank(m: &QMatrix) -> usize {
    // Row echelon without back substitution is enough for the rank.
    let mut e = SparseEchelon::new();
    for r in 0..m.rows() {
        let row: BTreeMap<usize, Rat> = m
            .row(r)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        e.insert(row);
    }
    e.len()
}

/// Basis of the right null space, one vector per free column in increasing
/// order, each with a 1 in its free column and zeros in the other free
/// columns.
pub fn kernel_basis(m: &QMatrix) -> Vec<Vec<Rat>> {
    let (red, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); m.cols()];
        v[free] = Rat::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -red.get(r, free).clone();
        }
        out.push(v);
    }
    out
}

/// Incremental row echelon form over sparse rows with ordered keys.
///
/// Each stored row is normalized so that its smallest key (the pivot) has
/// coefficient 1.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, Rat>>,
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        SparseEchelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` lies
    /// in the span.
    pub fn reduce(&self, mut v: BTreeMap<K, Rat>) -> BTreeMap<K, Rat> {
        let mut cursor: Option<K> = None;
        loop {
            let lower = match &cursor {
                Some(k) => Bound::Excluded(k.clone()),
                None => Bound::Unbounded,
            };
            let hit = v
                .range((lower, Bound::Unbounded))
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((key, coef)) = hit else { break };
            for (k, c) in &self.rows[&key] {
                let e = v.entry(k.clone()).or_insert_with(Rat::zero);
                *e -= &coef * c;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            cursor = Some(key);
        }
        v
    }

    pub fn contains(&self, v: BTreeMap<K, Rat>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` if it is outside the span; returns whether it was added.
    pub fn insert(&mut self, v: BTreeMap<K, Rat>) -> bool {
        let mut r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for c in r.values_mut() {
                *c *= &inv;
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = &BTreeMap<K, Rat>> {
        self.rows.values()
    }
}

/// Incremental echelon form that remembers how each stored row was built
/// from tagged input vectors, so it can report linear relations among the
/// inputs and express vectors in terms of them.
#[derive(Clone, Debug, Default)]
pub struct TrackedEchelon<K: Ord + Clone, T: Ord + Clone> {
    rows: BTreeMap<K, (BTreeMap<K, Rat>, BTreeMap<T, Rat>)>,
}

fn axpy<T: Ord + Clone>(acc: &mut BTreeMap<T, Rat>, a: &Rat, x: &BTreeMap<T, Rat>) {
    for (k, c) in x {
        let e = acc.entry(k.clone()).or_insert_with(Rat::zero);
        *e += a * c;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

impl<K: Ord + Clone, T: Ord + Clone> TrackedEchelon<K, T> {
    pub fn new() -> Self {
        TrackedEchelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Returns the residual of `v` and the combination of tags that was
    /// subtracted from it.
    fn reduce(&self, mut v: BTreeMap<K, Rat>) -> (BTreeMap<K, Rat>, BTreeMap<T, Rat>) {
        let mut used = BTreeMap::new();
        let mut cursor: Option<K> = None;
        loop {
            let lower = match &cursor {
                Some(k) => Bound::Excluded(k.clone()),
                None => Bound::Unbounded,
            };
            let hit = v
                .range((lower, Bound::Unbounded))
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((key, coef)) = hit else { break };
            let (row, combo) = &self.rows[&key];
            axpy(&mut v, &-coef.clone(), row);
            axpy(&mut used, &coef, combo);
            cursor = Some(key);
        }
        (v, used)
    }

    /// Adds the vector `v` labelled `tag`. Returns `None` when it was
    /// independent, otherwise the relation `Σ c_t·t` (with `c_tag = 1`)
    /// whose vectors sum to zero.
    pub fn insert(&mut self, v: BTreeMap<K, Rat>, tag: T) -> Option<BTreeMap<T, Rat>> {
        let (mut r, used) = self.reduce(v);
        let mut combo = BTreeMap::new();
        combo.insert(tag, Rat::one());
        axpy(&mut combo, &-Rat::one(), &used);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return Some(combo);
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for c in r.values_mut() {
                *c *= &inv;
            }
            for c in combo.values_mut() {
                *c *= &inv;
            }
        }
        self.rows.insert(pivot, (r, combo));
        None
    }

    /// Writes `v` as a combination of the inserted tags, if it is in the span.
    pub fn express(&self, v: BTreeMap<K, Rat>) -> Option<BTreeMap<T, Rat>> {
        let (r, used) = self.reduce(v);
        r.is_empty().then_some(used)
    }
}

/// Dense-width wrapper over [`SparseEchelon`] for fixed-length rows.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    width: usize,
    inner: SparseEchelon<usize>,
}

impl RowEchelon {
    pub fn new(width: usize) -> Self {
        RowEchelon {
            width,
            inner: SparseEchelon::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.inner.len()
    }

    /// Inserts a row; `Ok(true)` iff it was outside the current span.
    pub fn row_reduce_incremental(&mut self, row: &[Rat]) -> Result<bool> {
        if row.len() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: row.len(),
            });
        }
        let sparse = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        Ok(self.inner.insert(sparse))
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.inner.pivots().copied().collect()
    }
}

/// Least common multiple of denominators, useful for clearing fractions.
pub fn denominator_lcm<'a>(vals: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    vals.into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&QMatrix::identity(2)), 2);
        assert_eq!(rank(&QMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&QMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&QMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&QMatrix::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&QMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k, vec![rv(&[-1, 1])]);
    }

    #[test]
    fn kernel_vectors_are_in_kernel() {
        let m = QMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 4 - rank(&m));
        for v in k {
            for r in 0..m.rows() {
                let s: Rat = m.row(r).iter().zip(&v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn incremental_examples() {
        let mut e = RowEchelon::new(3);
        assert!(e.row_reduce_incremental(&rv(&[1, 0, 0])).unwrap());
        assert!(!e.row_reduce_incremental(&rv(&[1, 0, 0])).unwrap());
        assert!(e.row_reduce_incremental(&rv(&[0, 1, 0])).unwrap());
        assert!(!e.row_reduce_incremental(&rv(&[1, 1, 0])).unwrap());
        assert_eq!(e.rank(), 2);
        assert!(matches!(
            e.row_reduce_incremental(&rv(&[1, 1])),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn tracked_relations_and_expressions() {
        let mut t: TrackedEchelon<usize, char> = TrackedEchelon::new();
        let v = |xs: &[i64]| -> BTreeMap<usize, Rat> {
            xs.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, rat(x))).collect()
        };
        assert!(t.insert(v(&[1, 2, 0]), 'a').is_none());
        assert!(t.insert(v(&[0, 1, 1]), 'b').is_none());
        let rel = t.insert(v(&[2, 5, 1]), 'c').unwrap();
        // c = 2a + b
        assert_eq!(rel[&'c'], rat(1));
        assert_eq!(rel[&'a'], rat(-2));
        assert_eq!(rel[&'b'], rat(-1));
        let e = t.express(v(&[1, 3, 1])).unwrap();
        assert_eq!((e[&'a'].clone(), e[&'b'].clone()), (rat(1), rat(1)));
        assert!(t.express(v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn solve_small_system() {
        let m = QMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        let x = m.solve(&rv(&[3, 5])).unwrap();
        assert_eq!(x, vec![ratio(4, 5), ratio(7, 5)]);
        assert!(QMatrix::from_i64(&[&[1, 2], &[2, 4]]).solve(&rv(&[1, 1])).is_none());
    }

    #[test]
    fn parse_and_combinatorics() {
        assert_eq!(parse_rat("-3/6").unwrap(), ratio(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(falling_factorial(4, 2), BigInt::from(12));
        assert_eq!(falling_factorial(2, 3), BigInt::zero());
        assert_eq!(binomial(9, 3), BigInt::from(84));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
