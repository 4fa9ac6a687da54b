//! Blockings, tight tensors, distributions on blocks and sweet pieces.
//!
//! A blocking assigns a label in `Z^r` to every basis index on each axis.
//! Kronecker powers are indexed by sequences `(i_1..i_N)`; unrestricted axes
//! use the mixed-radix order of [`crate::tensor3::kronecker_power`], while
//! restricted axes list their kept sequences in lexicographic order.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, kernel_basis, parse_rat, rank, rat, ratio, rat_to_f64, QMatrix, Rat};
use crate::tensor3::{group_tensor, AbelianGroup, Index3, Tensor3};
use crate::Limits;

pub type Label = Vec<i64>;

/// Per-axis labels, all of the same arity `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocking {
    r: usize,
    labels: [Vec<Label>; 3],
}

impl Blocking {
    pub fn new(labels: [Vec<Label>; 3]) -> Result<Self> {
        let r = labels.iter().flatten().next().map_or(1, |l| l.len());
        for (a, ax) in labels.iter().enumerate() {
            if let Some(bad) = ax.iter().find(|l| l.len() != r) {
                return Err(Error::InvalidBlocking(format!(
                    "axis {a} has a label of length {} where {r} was expected",
                    bad.len()
                )));
            }
        }
        Ok(Blocking { r, labels })
    }

    /// Blocking with one integer per index.
    pub fn scalar(labels: [Vec<i64>; 3]) -> Self {
        Blocking {
            r: 1,
            labels: labels.map(|ax| ax.into_iter().map(|x| vec![x]).collect()),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn labels(&self) -> &[Vec<Label>; 3] {
        &self.labels
    }

    pub fn label(&self, axis: usize, idx: usize) -> &Label {
        &self.labels[axis][idx]
    }

    pub fn dims(&self) -> [usize; 3] {
        [0, 1, 2].map(|a| self.labels[a].len())
    }

    fn check(&self, t: &Tensor3) -> Result<()> {
        if self.dims() != t.dims() {
            return Err(Error::DimensionMismatch(format!(
                "blocking covers {:?}, tensor has {:?}",
                self.dims(),
                t.dims()
            )));
        }
        Ok(())
    }

    /// The induced blocking on `S ⊠ T`: labels add coordinatewise.
    pub fn kronecker(&self, other: &Blocking) -> Result<Blocking> {
        if self.r != other.r {
            return Err(Error::InvalidBlocking(format!("label arities {} and {}", self.r, other.r)));
        }
        let labels = [0, 1, 2].map(|a| {
            let mut out = Vec::with_capacity(self.labels[a].len() * other.labels[a].len());
            for x in &self.labels[a] {
                for y in &other.labels[a] {
                    out.push(x.iter().zip(y).map(|(p, q)| p + q).collect());
                }
            }
            out
        });
        Ok(Blocking { r: self.r, labels })
    }

    pub fn power(&self, n: u32) -> Result<Blocking> {
        let mut acc = Blocking {
            r: self.r,
            labels: [0, 1, 2].map(|_| vec![vec![0; self.r]]),
        };
        for _ in 0..n {
            acc = acc.kronecker(self)?;
        }
        Ok(acc)
    }
}

/// Labels 0 on `e1`, 1 on the middle vectors, 2 on `en`; negated on axis 3.
pub fn standard_cw_blocking(n: usize) -> Result<Blocking> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("cw blocking needs n >= 2, got {n}")));
    }
    let ax: Vec<i64> = (0..n).map(|i| if i == 0 { 0 } else if i == n - 1 { 2 } else { 1 }).collect();
    Ok(Blocking::scalar([ax.clone(), ax.clone(), ax.iter().map(|x| -x).collect()]))
}

/// Weight 0 on the neutral element, 2 on `distinguished`, 1 elsewhere, and
/// minus these on axis 3.
pub fn weight_blocking(g: &AbelianGroup, distinguished: usize) -> Result<Blocking> {
    let n = g.order();
    if distinguished == 0 || distinguished >= n {
        return Err(Error::OutOfRange(format!(
            "distinguished element {distinguished} must be a nonneutral element of a group of order {n}"
        )));
    }
    let ax: Vec<i64> = (0..n)
        .map(|i| match i {
            0 => 0,
            i if i == distinguished => 2,
            _ => 1,
        })
        .collect();
    Ok(Blocking::scalar([ax.clone(), ax.clone(), ax.iter().map(|x| -x).collect()]))
}

/// Grading blocking: degrees on axes 1 and 2, negated degrees on axis 3.
pub fn degree_blocking(degrees: &[i64]) -> Blocking {
    Blocking::scalar([degrees.to_vec(), degrees.to_vec(), degrees.iter().map(|x| -x).collect()])
}

/// Structure tensor of `K[x]/(x^2)` in the basis `1, x`.
pub fn dual_numbers_tensor() -> Tensor3 {
    Tensor3::from_entries([2, 2, 2], [([0, 0, 0], rat(1)), ([0, 1, 1], rat(1)), ([1, 0, 1], rat(1))])
        .expect("in range")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub labels: [Label; 3],
    pub format: [usize; 3],
    pub tensor: Tensor3,
}

/// Nonzero blocks, ordered by label triple.
pub fn support_blocks(t: &Tensor3, b: &Blocking) -> Result<Vec<Block>> {
    b.check(t)?;
    // local position of each index inside its label class
    let mut local: [Vec<usize>; 3] = Default::default();
    let mut sizes: [BTreeMap<&Label, usize>; 3] = Default::default();
    for a in 0..3 {
        for l in &b.labels[a] {
            let c = sizes[a].entry(l).or_insert(0);
            local[a].push(*c);
            *c += 1;
        }
    }
    let mut groups: BTreeMap<[Label; 3], Vec<(Index3, Rat)>> = BTreeMap::new();
    for (idx, v) in t.entries() {
        let key = [0, 1, 2].map(|a| b.labels[a][idx[a]].clone());
        groups
            .entry(key)
            .or_default()
            .push(([0, 1, 2].map(|a| local[a][idx[a]]), v.clone()));
    }
    groups
        .into_iter()
        .map(|(labels, ents)| {
            let format = [0, 1, 2].map(|a| sizes[a][&labels[a]]);
            Ok(Block {
                tensor: Tensor3::from_entries(format, ents)?,
                labels,
                format,
            })
        })
        .collect()
}

fn label_sum(l: &[Label; 3]) -> Label {
    (0..l[0].len()).map(|k| l[0][k] + l[1][k] + l[2][k]).collect()
}

pub fn is_tight(t: &Tensor3, b: &Blocking) -> Result<bool> {
    Ok(support_blocks(t, b)?
        .iter()
        .all(|blk| label_sum(&blk.labels).iter().all(|&x| x == 0)))
}

/// A probability distribution on label triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDistribution {
    support: Vec<[Label; 3]>,
    probs: Vec<Rat>,
}

impl BlockDistribution {
    pub fn new(support: Vec<[Label; 3]>, probs: Vec<Rat>) -> Result<Self> {
        if support.len() != probs.len() || support.is_empty() {
            return Err(Error::InvalidDistribution(format!(
                "{} support triples with {} probabilities",
                support.len(),
                probs.len()
            )));
        }
        let r = support[0][0].len();
        if support.iter().flatten().any(|l| l.len() != r) {
            return Err(Error::InvalidDistribution("labels of different lengths".into()));
        }
        if support.iter().collect::<BTreeSet<_>>().len() != support.len() {
            return Err(Error::InvalidDistribution("repeated support triple".into()));
        }
        if probs.iter().any(|p| p.is_negative()) {
            return Err(Error::InvalidDistribution("negative probability".into()));
        }
        let total: Rat = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        Ok(BlockDistribution { support, probs })
    }

    pub fn uniform(support: Vec<[Label; 3]>) -> Result<Self> {
        let n = support.len() as i64;
        Self::new(support, vec![ratio(1, n.max(1)); n as usize])
    }

    pub fn support(&self) -> &[[Label; 3]] {
        &self.support
    }

    pub fn probs(&self) -> &[Rat] {
        &self.probs
    }

    pub fn r(&self) -> usize {
        self.support[0][0].len()
    }
}

/// `p` on each of the three large blocks and `q` on each small block of the
/// standard CW blocking.
pub fn cw_distribution(p: &Rat, q: &Rat) -> Result<BlockDistribution> {
    let s = |a: i64, b: i64, c: i64| [vec![a], vec![b], vec![c]];
    BlockDistribution::new(
        vec![s(0, 1, -1), s(1, 0, -1), s(1, 1, -2), s(0, 0, 0), s(0, 2, -2), s(2, 0, -2)],
        vec![p.clone(), p.clone(), p.clone(), q.clone(), q.clone(), q.clone()],
    )
}

pub type Marginal = BTreeMap<Label, Rat>;

pub fn marginals(p: &BlockDistribution) -> [Marginal; 3] {
    let mut out: [Marginal; 3] = Default::default();
    for (s, pr) in p.support.iter().zip(&p.probs) {
        for a in 0..3 {
            *out[a].entry(s[a].clone()).or_insert_with(Rat::zero) += pr;
        }
    }
    out
}

fn positive_multiset(m: &Marginal) -> Vec<Rat> {
    let mut v: Vec<Rat> = m.values().filter(|x| x.is_positive()).cloned().collect();
    v.sort();
    v
}

/// Equality of the three marginals up to renaming labels.
pub fn marginals_match(m: &[Marginal; 3]) -> bool {
    let a = positive_multiset(&m[0]);
    a == positive_multiset(&m[1]) && a == positive_multiset(&m[2])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Uniqueness {
    Unique,
    NonUnique,
    Unknown,
}

/// Whether `P` is the only distribution on its support with its marginals.
pub fn marginal_uniqueness(p: &BlockDistribution) -> Uniqueness {
    let s = p.support.len();
    let mut rows = Vec::new();
    for a in 0..3 {
        let values: BTreeSet<&Label> = p.support.iter().map(|t| &t[a]).collect();
        for v in values {
            rows.push(
                p.support
                    .iter()
                    .map(|t| if &t[a] == v { Rat::one() } else { Rat::zero() })
                    .collect(),
            );
        }
    }
    let a = QMatrix::from_rows(rows).expect("rectangular");
    let ker = kernel_basis(&a);
    if ker.is_empty() {
        return Uniqueness::Unique;
    }
    let zeros: Vec<usize> = (0..s).filter(|&j| p.probs[j].is_zero()).collect();
    if zeros.is_empty() {
        return Uniqueness::NonUnique;
    }
    let restricted: Vec<Vec<Rat>> = zeros.iter().map(|&j| ker.iter().map(|v| v[j].clone()).collect()).collect();
    if rank(&QMatrix::from_rows(restricted).expect("rectangular")) < ker.len() {
        return Uniqueness::NonUnique;
    }
    let one_sided = |v: &Vec<Rat>| {
        zeros.iter().all(|&j| !v[j].is_negative()) || zeros.iter().all(|&j| !v[j].is_positive())
    };
    if ker.iter().any(one_sided) {
        Uniqueness::NonUnique
    } else {
        Uniqueness::Unknown
    }
}

fn integral_count(x: &Rat, what: &str) -> Result<usize> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::NonIntegerCount(format!("{what} = {x}")));
    }
    x.to_integer()
        .to_usize()
        .ok_or_else(|| Error::NonIntegerCount(format!("{what} = {x}")))
}

fn target_counts(m: &Marginal, n: usize, axis: usize) -> Result<BTreeMap<Label, usize>> {
    let mut out = BTreeMap::new();
    for (l, pr) in m {
        let c = integral_count(&(pr * rat(n as i64)), &format!("N*p{}({l:?})", axis + 1))?;
        if c > 0 {
            out.insert(l.clone(), c);
        }
    }
    Ok(out)
}

/// Index sequences of length `n` whose labels occur exactly `counts` times,
/// in lexicographic order.
fn kept_sequences(
    labels: &[Label],
    counts: &BTreeMap<Label, usize>,
    n: usize,
    limits: &Limits,
) -> Result<Vec<Vec<usize>>> {
    let total: usize = counts.values().sum();
    if total != n {
        return Ok(Vec::new());
    }
    let ids: Vec<Option<usize>> = labels.iter().map(|l| counts.keys().position(|k| k == l)).collect();
    let mut remaining: Vec<usize> = counts.values().copied().collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        ids: &[Option<usize>],
        remaining: &mut [usize],
        cur: &mut Vec<usize>,
        n: usize,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if cur.len() == n {
            if out.len() >= cap {
                return Err(Error::guard("kept sequences", format!("more than {cap}"), cap));
            }
            out.push(cur.clone());
            return Ok(());
        }
        for (i, id) in ids.iter().enumerate() {
            let Some(id) = *id else { continue };
            if remaining[id] == 0 {
                continue;
            }
            remaining[id] -= 1;
            cur.push(i);
            rec(ids, remaining, cur, n, out, cap)?;
            cur.pop();
            remaining[id] += 1;
        }
        Ok(())
    }
    rec(&ids, &mut remaining, &mut cur, n, &mut out, limits.max_entries)?;
    Ok(out)
}

fn all_sequences(dim: usize, n: usize, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let count = (dim as f64).powi(n as i32);
    if count > limits.max_entries as f64 {
        return Err(Error::guard("unrestricted axis sequences", format!("{dim}^{n}"), limits.max_entries));
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..dim).map(move |i| {
                    let mut t = s.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    Ok(out)
}

/// Restriction of `T^{⊠n}` to the given sequences; `None` keeps a whole axis.
fn project(t: &Tensor3, n: usize, keep: [Option<&[Vec<usize>]>; 3], limits: &Limits) -> Result<Tensor3> {
    let dims = t.dims();
    let full: [Option<Vec<Vec<usize>>>; 3] = [0, 1]
        .map(|a| match keep[a] {
            Some(_) => Ok(None),
            None => all_sequences(dims[a], n, limits).map(Some),
        })
        .into_iter()
        .chain([Ok(None)])
        .collect::<Result<Vec<_>>>()?
        .try_into()
        .expect("three axes");
    let list = |a: usize| -> &[Vec<usize>] { keep[a].unwrap_or_else(|| full[a].as_deref().expect("filled")) };
    let (l1, l2) = (list(0), list(1));
    let pairs = l1.len() as u128 * l2.len() as u128;
    if pairs > limits.max_entries as u128 {
        return Err(Error::guard("projected index pairs", pairs, limits.max_entries));
    }
    let third: Option<HashMap<&[usize], usize>> =
        keep[2].map(|k| k.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect());
    let d3 = match keep[2] {
        Some(k) => k.len(),
        None => dims[2]
            .checked_pow(n as u32)
            .filter(|&d| d <= limits.max_entries.max(1) * 1024)
            .ok_or_else(|| Error::guard("unrestricted axis 3", format!("{}^{n}", dims[2]), limits.max_entries))?,
    };
    let mut fibers: HashMap<(usize, usize), Vec<(usize, Rat)>> = HashMap::new();
    for (idx, v) in t.entries() {
        fibers.entry((idx[0], idx[1])).or_default().push((idx[2], v.clone()));
    }
    let mut out = Tensor3::new([l1.len(), l2.len(), d3]);
    let mut seq = vec![0usize; n];
    for (i, s) in l1.iter().enumerate() {
        for (j, u) in l2.iter().enumerate() {
            let fs: Option<Vec<&Vec<(usize, Rat)>>> = (0..n).map(|p| fibers.get(&(s[p], u[p]))).collect();
            let Some(fs) = fs else { continue };
            let mut emit = |seq: &[usize], v: Rat| -> Result<()> {
                let k = match &third {
                    Some(m) => match m.get(seq) {
                        Some(&k) => k,
                        None => return Ok(()),
                    },
                    None => seq.iter().fold(0, |acc, &c| acc * dims[2] + c),
                };
                if out.nnz() >= limits.max_entries {
                    return Err(Error::guard("projected entries", format!("more than {}", limits.max_entries), limits.max_entries));
                }
                out.add([i, j, k], v)
            };
            fn walk(
                fs: &[&Vec<(usize, Rat)>],
                pos: usize,
                seq: &mut [usize],
                acc: Rat,
                emit: &mut dyn FnMut(&[usize], Rat) -> Result<()>,
            ) -> Result<()> {
                if pos == fs.len() {
                    return emit(seq, acc);
                }
                for (c, v) in fs[pos] {
                    seq[pos] = *c;
                    walk(fs, pos + 1, seq, &acc * v, emit)?;
                }
                Ok(())
            }
            walk(&fs, 0, &mut seq, Rat::one(), &mut emit)?;
        }
    }
    Ok(out)
}

/// What the constructive part of the sweet-piece definition guarantees,
/// checked on an extracted piece. Block isomorphism is tested through
/// formats and sorted entry values only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweetCheck {
    pub blocks: usize,
    pub marginals_uniform: bool,
    pub p_t_equal: bool,
    pub blocks_uniform: bool,
}

impl SweetCheck {
    pub fn ok(&self) -> bool {
        self.marginals_uniform && self.p_t_equal && self.blocks_uniform
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweetPiece {
    pub tensor: Tensor3,
    /// Kept index sequences of `T^{⊠N}` per axis.
    pub kept: [Vec<Vec<usize>>; 3],
    /// Label sequence id of each kept index.
    pub classes: [Vec<usize>; 3],
    /// Number of label sequences per axis.
    pub p_t: [usize; 3],
    pub uniqueness: Uniqueness,
    pub check: SweetCheck,
}

impl SweetPiece {
    /// `p_T` when it agrees on all axes.
    pub fn common_p_t(&self) -> Option<usize> {
        (self.p_t[0] == self.p_t[1] && self.p_t[1] == self.p_t[2]).then_some(self.p_t[0])
    }
}

fn classify(kept: &[Vec<usize>], labels: &[Label]) -> (Vec<usize>, usize) {
    let mut ids: HashMap<Vec<&Label>, usize> = HashMap::new();
    let mut out = Vec::with_capacity(kept.len());
    for s in kept {
        let key: Vec<&Label> = s.iter().map(|&i| &labels[i]).collect();
        let next = ids.len();
        out.push(*ids.entry(key).or_insert(next));
    }
    (out, ids.len())
}

fn check_piece(t: &Tensor3, classes: &[Vec<usize>; 3], p_t: [usize; 3]) -> SweetCheck {
    let mut blocks: BTreeMap<[usize; 3], Vec<Rat>> = BTreeMap::new();
    for (idx, v) in t.entries() {
        blocks
            .entry([0, 1, 2].map(|a| classes[a][idx[a]]))
            .or_default()
            .push(v.clone());
    }
    let marginals_uniform = (0..3).all(|a| {
        let mut hits = vec![0usize; p_t[a]];
        for key in blocks.keys() {
            hits[key[a]] += 1;
        }
        hits.iter().all(|&h| h > 0 && h == hits[0])
    });
    let class_sizes: [Vec<usize>; 3] = [0, 1, 2].map(|a| {
        let mut s = vec![0; p_t[a]];
        for &c in &classes[a] {
            s[c] += 1;
        }
        s
    });
    let mut shapes = blocks.iter().map(|(key, vals)| {
        let mut vals = vals.clone();
        vals.sort();
        ([0, 1, 2].map(|a| class_sizes[a][key[a]]), vals)
    });
    let first = shapes.next();
    let blocks_uniform = shapes.all(|s| Some(&s) == first.as_ref());
    SweetCheck {
        blocks: blocks.len(),
        marginals_uniform,
        p_t_equal: p_t[0] == p_t[1] && p_t[1] == p_t[2],
        blocks_uniform,
    }
}

fn check_inputs(t: &Tensor3, b: &Blocking, p: &BlockDistribution) -> Result<()> {
    b.check(t)?;
    if p.r() != b.r() {
        return Err(Error::InvalidDistribution(format!(
            "distribution labels have length {}, blocking {}",
            p.r(),
            b.r()
        )));
    }
    Ok(())
}

/// Marginal-matching projection of `T^{⊠N}` without the tightness check.
pub fn sp_project(t: &Tensor3, b: &Blocking, p: &BlockDistribution, n: usize, limits: &Limits) -> Result<SweetPiece> {
    check_inputs(t, b, p)?;
    for (s, pr) in p.support.iter().zip(&p.probs) {
        integral_count(&(pr * rat(n as i64)), &format!("N*P({s:?})"))?;
    }
    let m = marginals(p);
    if !marginals_match(&m) {
        return Err(Error::MarginalsDiffer(format!("{m:?}")));
    }
    let mut kept: [Vec<Vec<usize>>; 3] = Default::default();
    for a in 0..3 {
        kept[a] = kept_sequences(&b.labels[a], &target_counts(&m[a], n, a)?, n, limits)?;
    }
    let tensor = project(t, n, [0, 1, 2].map(|a| Some(kept[a].as_slice())), limits)?;
    let mut classes: [Vec<usize>; 3] = Default::default();
    let mut p_t = [0; 3];
    for a in 0..3 {
        (classes[a], p_t[a]) = classify(&kept[a], &b.labels[a]);
    }
    let check = check_piece(&tensor, &classes, p_t);
    Ok(SweetPiece {
        tensor,
        kept,
        classes,
        p_t,
        uniqueness: marginal_uniqueness(p),
        check,
    })
}

/// `SP_{P,N}(T)` for a tight `T`.
pub fn sp_extract(t: &Tensor3, b: &Blocking, p: &BlockDistribution, n: usize, limits: &Limits) -> Result<SweetPiece> {
    check_inputs(t, b, p)?;
    if !is_tight(t, b)? {
        return Err(Error::NotTight);
    }
    sp_project(t, b, p, n, limits)
}

/// Restriction of `T^{⊠N}` on the two axes in `fixed` (0-based) to the
/// marginal-matching sequences; the remaining axis is kept whole.
pub fn chimney(
    t: &Tensor3,
    b: &Blocking,
    p: &BlockDistribution,
    n: usize,
    fixed: [usize; 2],
    limits: &Limits,
) -> Result<Tensor3> {
    check_inputs(t, b, p)?;
    if fixed[0] == fixed[1] || fixed.iter().any(|&a| a > 2) {
        return Err(Error::OutOfRange(format!("fixed axes {fixed:?}")));
    }
    let m = marginals(p);
    let mut kept: [Option<Vec<Vec<usize>>>; 3] = Default::default();
    for &a in &fixed {
        kept[a] = Some(kept_sequences(&b.labels[a], &target_counts(&m[a], n, a)?, n, limits)?);
    }
    project(t, n, [0, 1, 2].map(|a| kept[a].as_deref()), limits)
}

/// Limit `t -> 0` of the torus action with weight `<w_i, label>` on axis `i`.
pub fn toric_degenerate(t: &Tensor3, b: &Blocking, w: &[Vec<i64>; 3]) -> Result<Tensor3> {
    b.check(t)?;
    if w.iter().any(|wi| wi.len() != b.r()) {
        return Err(Error::InvalidBlocking(format!("weights must have length {}", b.r())));
    }
    let weight = |a: usize, idx: usize| -> i64 { w[a].iter().zip(&b.labels[a][idx]).map(|(x, y)| x * y).sum() };
    let mut out = Tensor3::new(t.dims());
    for (idx, v) in t.entries() {
        let total: i64 = (0..3).map(|a| weight(a, idx[a])).sum();
        if total < 0 {
            let l = [0, 1, 2].map(|a| b.labels[a][idx[a]].clone());
            return Err(Error::NegativeWeight(format!("{l:?}")));
        }
        if total == 0 {
            out.add(*idx, v.clone())?;
        }
    }
    if let Some(l) = t.labels() {
        out.set_labels(l.clone())?;
    }
    Ok(out)
}

/// Number of indices on `axis` whose slice vanishes.
pub fn zero_layers(t: &Tensor3, axis: usize) -> Result<usize> {
    if axis > 2 {
        return Err(Error::OutOfRange(format!("axis {axis}")));
    }
    let used: HashSet<usize> = t.entries().keys().map(|i| i[axis]).collect();
    Ok(t.dims()[axis] - used.len())
}

/// Ambient tensors known to have minimal rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Ambient {
    /// `T_G^{⊠N}` for an abelian group of the given order.
    GroupPower { order: u64, power: u32 },
    /// Any other tensor; accepted only with an explicit override.
    Other { dim: u64 },
}

impl Ambient {
    pub fn dim(&self) -> BigInt {
        match self {
            Ambient::GroupPower { order, power } => num_traits::pow(BigInt::from(*order), *power as usize),
            Ambient::Other { dim } => BigInt::from(*dim),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionBound {
    pub ambient_dim: BigInt,
    pub zero_layers: u64,
    pub bound: BigInt,
    pub overridden: bool,
}

/// Rank bound `dim − zero layers` from the substitution method.
pub fn substitution_bound(ambient: &Ambient, zero_layers: u64, allow_override: bool) -> Result<SubstitutionBound> {
    let overridden = matches!(ambient, Ambient::Other { .. });
    if overridden && !allow_override {
        return Err(Error::Domain(
            "ambient tensor is not known to have minimal rank; pass an explicit override".into(),
        ));
    }
    let dim = ambient.dim();
    if BigInt::from(zero_layers) > dim {
        return Err(Error::Domain(format!("{zero_layers} zero layers exceed dimension {dim}")));
    }
    Ok(SubstitutionBound {
        bound: &dim - zero_layers,
        ambient_dim: dim,
        zero_layers,
        overridden,
    })
}

fn to_u64(x: &Rat, what: &str) -> Result<u64> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::Domain(format!("{what} = {x} is not a nonnegative integer")));
    }
    x.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Domain(format!("{what} = {x} is too large")))
}

/// `n^N − binom(N, (2p+2q)N+1)·(n−1)^{(p+q)N−1}`.
pub fn formula_sweet_rank(n: u64, big_n: u64, p: &Rat, q: &Rat) -> Result<BigInt> {
    if p.is_negative() || q.is_negative() || p + q != ratio(1, 3) {
        return Err(Error::Domain(format!("need p, q >= 0 with p + q = 1/3, got {p}, {q}")));
    }
    let nn = rat(big_n as i64);
    to_u64(&(p * &nn), "pN")?;
    to_u64(&(q * &nn), "qN")?;
    let top = to_u64(&((p + q) * rat(2) * &nn + rat(1)), "(2p+2q)N+1")?;
    let e = to_u64(&((p + q) * &nn - rat(1)), "(p+q)N-1")?;
    if top > big_n || n == 0 {
        return Err(Error::Domain(format!("binomial({big_n}, {top}) out of range")));
    }
    let e = u32::try_from(e).map_err(|_| Error::Domain("exponent too large".into()))?;
    let lhs = num_traits::pow(BigInt::from(n), big_n as usize);
    Ok(lhs - binomial(big_n, top) * BigInt::from(n - 1).pow(e))
}

/// The count term `binom(N, (2/3)N+1)·(n−1)^{N/3−1}` of [`formula_sweet_rank`].
pub fn formula_zero_layer_term(n: u64, big_n: u64) -> Result<BigInt> {
    let full = num_traits::pow(BigInt::from(n), big_n as usize);
    Ok(full - formula_sweet_rank(n, big_n, &ratio(1, 3), &Rat::zero())?)
}

/// `½·8^k − Σ_{i=k+1}^{⌊3k/2⌋} binom(3k, 2i)`.
pub fn formula_pratt(k: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let n = 3 * k as u64;
    let half = num_traits::pow(BigInt::from(8), k as usize) / 2;
    let tail: BigInt = (k as u64 + 1..=n / 2).map(|i| binomial(n, 2 * i)).sum();
    Ok(half - tail)
}

/// `Σ_{i=0}^{k} binom(3k, 2i)`: the number of symmetric differences of two
/// `k`-subsets of `[3k]`.
pub fn even_symdiff_count(k: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    Ok((0..=k as u64).map(|i| binomial(3 * k as u64, 2 * i)).sum())
}

/// Brute-force count of `{A △ B : |A| = |B| = k, A, B ⊆ [3k]}`.
pub fn even_symdiff_brute(k: u32, limits: &Limits) -> Result<u64> {
    if k == 0 || 3 * k > 60 {
        return Err(Error::Domain(format!("k = {k} out of range")));
    }
    let n = 3 * k;
    let subsets: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() == k).collect();
    let pairs = subsets.len() as u128 * subsets.len() as u128;
    if pairs > limits.max_entries as u128 * 10 {
        return Err(Error::guard("subset pairs", pairs, limits.max_entries as u128 * 10));
    }
    let mut seen = HashSet::new();
    for a in &subsets {
        for b in &subsets {
            seen.insert(a ^ b);
        }
    }
    Ok(seen.len() as u64)
}

/// Chimney of `T_{Z/2}^{⊠3k}` with axes 1 and 2 restricted to sequences
/// containing the nonzero element exactly `k` times.
pub fn pratt_chimney(k: u32, limits: &Limits) -> Result<Tensor3> {
    let t = group_tensor(&AbelianGroup::cyclic(2)?).without_labels();
    let b = Blocking::scalar([vec![0, 1], vec![0, 1], vec![0, -1]]);
    let s = |a: i64, b: i64, c: i64| [vec![a], vec![b], vec![c]];
    let p = BlockDistribution::uniform(vec![s(0, 0, 0), s(0, 1, -1), s(1, 0, -1)])?;
    chimney(&t, &b, &p, 3 * k as usize, [0, 1], limits)
}

/// Chimney of `T_{Z/n}^{⊠N}` on axes 1 and 2 for the CW distribution, with
/// `n−1` as the distinguished element.
pub fn cw_chimney(n: usize, big_n: usize, p: &Rat, q: &Rat, limits: &Limits) -> Result<Tensor3> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("group order {n} must be at least 3")));
    }
    let g = AbelianGroup::cyclic(n)?;
    let t = group_tensor(&g).without_labels();
    let b = weight_blocking(&g, n - 1)?;
    chimney(&t, &b, &cw_distribution(p, q)?, big_n, [0, 1], limits)
}

/// `log_a(r / p)`.
pub fn omega_bound(a: u64, r: &Rat, p: &Rat) -> Result<f64> {
    if a < 2 || !p.is_positive() || r < p {
        return Err(Error::Domain(format!("need a > 1 and r >= p > 0, got a = {a}, r = {r}, p = {p}")));
    }
    let x = r / p;
    // ratio of logs of big integers, computed in f64 after scaling
    let ln = |v: &BigInt| -> f64 {
        let bits = v.bits();
        if bits > 1000 {
            let shift = bits - 900;
            rat_to_f64(&Rat::from_integer(v >> shift)).ln() + shift as f64 * std::f64::consts::LN_2
        } else {
            rat_to_f64(&Rat::from_integer(v.clone())).ln()
        }
    };
    Ok((ln(x.numer()) - ln(x.denom())) / (a as f64).ln())
}

/// Entries `0, k, 2k, …` of a graded dimension list.
pub fn veronese_dims<T: Clone>(graded: &[T], k: usize) -> Result<Vec<T>> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    Ok(graded.iter().step_by(k).cloned().collect())
}

/// Dimension of the subalgebra of `(K[x]/(x^2))^{⊗m}` generated by its
/// degree-`k` part, by closing monomials under multiplication.
pub fn dual_numbers_subalgebra_dim(m: u32, k: u32) -> Result<u64> {
    if m > 20 || k == 0 {
        return Err(Error::Domain(format!("m = {m}, k = {k} out of range")));
    }
    let gens: Vec<u32> = (0u32..1 << m).filter(|x| x.count_ones() == k).collect();
    let mut seen: BTreeSet<u32> = BTreeSet::from([0]);
    let mut frontier: Vec<u32> = vec![0];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            if x & g == 0 && seen.insert(x | g) {
                frontier.push(x | g);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// `2 + 2·Σ_{a=0}^{k} binom(3k, a)·binom(3k−a, 2k−a)`.
pub fn vero_formula(k: u32) -> BigInt {
    let n = 3 * k as u64;
    let s: BigInt = (0..=k as u64).map(|a| binomial(n, a) * binomial(n - a, 2 * k as u64 - a)).sum();
    BigInt::from(2) + 2 * s
}

/// JSON form of a blocking with an optional distribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweetFile {
    pub labels: [Vec<Label>; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<[Label; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probs: Option<Vec<String>>,
}

impl SweetFile {
    pub fn new(b: &Blocking, p: Option<&BlockDistribution>) -> Self {
        SweetFile {
            labels: b.labels.clone(),
            support: p.map(|p| p.support.clone()),
            probs: p.map(|p| p.probs.iter().map(|x| x.to_string()).collect()),
        }
    }

    pub fn blocking(&self) -> Result<Blocking> {
        Blocking::new(self.labels.clone())
    }

    pub fn distribution(&self) -> Result<Option<BlockDistribution>> {
        match (&self.support, &self.probs) {
            (None, None) => Ok(None),
            (Some(s), Some(p)) => {
                let probs = p.iter().map(|x| parse_rat(x)).collect::<Result<Vec<_>>>()?;
                BlockDistribution::new(s.clone(), probs).map(Some)
            }
            _ => Err(Error::Format("support and probs must be given together".into())),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Least common multiple of the denominators of the block probabilities; the
/// smallest `N` for which every `N·P(b)` is an integer.
pub fn minimal_power(p: &BlockDistribution) -> BigInt {
    p.probs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
