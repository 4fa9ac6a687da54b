//! Sparse multivariate polynomials over the rationals.
//!
//! Dual operators are ordinary [`Poly`] values; the pairing is positional, so
//! variable `i` of an operator differentiates variable `i` of the polynomial
//! it acts on.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, falling_factorial, Rat};

pub use parse::{parse_poly, parse_poly_in};

/// Ordered list of distinct variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSet(Arc<[String]>);

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_valid_name(n) {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("invalid variable name `{n}`"),
                });
            }
            if names[..i].contains(n) {
                return Err(Error::VariableCollision(n.clone()));
            }
        }
        Ok(VarSet(names.into()))
    }

    /// `prefix1, …, prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("valid generated names")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn without(&self, idx: usize) -> Self {
        let mut v = self.0.to_vec();
        v.remove(idx);
        VarSet(v.into())
    }

    pub fn with_inserted(&self, pos: usize, name: &str) -> Result<Self> {
        if self.index_of(name).is_some() {
            return Err(Error::VariableCollision(name.to_string()));
        }
        let mut v = self.0.to_vec();
        v.insert(pos, name.to_string());
        VarSet::new(v)
    }

    pub fn concat(&self, other: &VarSet) -> Result<Self> {
        VarSet::new(self.0.iter().chain(other.0.iter()).cloned())
    }
}

pub(crate) fn is_valid_name(n: &str) -> bool {
    let mut cs = n.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric())
}

/// Natural order on names: alphabetic prefix first, then the numeric suffix
/// as a number, so `x2 < x10 < y0`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>, &str) {
        let start = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let rest = &s[start..];
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        (&s[..start], rest[..end].parse().ok(), &rest[end..])
    }
    let (pa, na, ra) = split(a);
    let (pb, nb, rb) = split(b);
    pa.cmp(pb)
        .then(na.cmp(&nb))
        .then_with(|| ra.cmp(rb))
        .then_with(|| a.cmp(b))
}

/// Exponent vector. Ordered by total degree, then lexicographically with
/// larger exponents of earlier variables first (`x1^2 < x1*x2 < x2^2`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `Π a_i!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&e| factorial(e)).product()
    }

    /// All exponent vectors of `n` variables with total degree `d`, in
    /// ascending monomial order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// All monomials of degree at most `d`, ascending.
    pub fn all_up_to_degree(n: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Self::all_of_degree(n, k)).collect()
    }
}

/// Sparse polynomial: exponent vector → nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rat>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub fn zero(vars: &VarSet) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i), Rat::one())
    }

    pub fn monomial(vars: &VarSet, m: Monomial, c: Rat) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(vars: &VarSet, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rat> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Smallest degree of a term; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn check_same(&self, other: &Poly) {
        assert_eq!(
            self.vars, other.vars,
            "polynomial arithmetic needs identical variable sets"
        );
    }

    pub fn pow(&self, d: u32) -> Poly {
        let mut acc = Poly::constant(&self.vars, Rat::one());
        let mut base = self.clone();
        let mut e = d;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ordinary partial derivative by variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * Rat::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Homogeneous component of degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of the components of degree at most `k` (`P_{≤k}`).
    pub fn truncate(&self, k: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of the components of degree at least `k`.
    pub fn tail_from(&self, k: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() >= k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowest degree form.
    pub fn ldf(&self) -> Result<Poly> {
        let d = self.min_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(self.homogeneous_part(d))
    }

    /// Top degree form.
    pub fn tdf(&self) -> Result<Poly> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        Ok(self.homogeneous_part(d))
    }

    /// Divides the coefficient of each term by `e!`, where `e` is the
    /// exponent of `v` in that term.
    pub fn twist(&self, v: &str) -> Result<Poly> {
        let i = self.vars.require(v)?;
        Ok(Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c / Rat::from_integer(factorial(m.0[i]))))
                .collect(),
        })
    }

    /// Sets `v = 1` and drops `v` from the variable set.
    pub fn dehomogenize(&self, v: &str) -> Result<Poly> {
        let i = self.vars.require(v)?;
        let vars = self.vars.without(i);
        let mut out = Poly::zero(&vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.remove(i);
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Homogenizes to degree `d` with a fresh variable `v` placed first.
    pub fn homogenize(&self, v: &str, d: u32) -> Result<Poly> {
        self.homogenize_at(v, 0, d)
    }

    /// Homogenizes to degree `d` with a fresh variable `v` inserted at
    /// position `pos`.
    pub fn homogenize_at(&self, v: &str, pos: usize, d: u32) -> Result<Poly> {
        if pos > self.arity() {
            return Err(Error::OutOfRange(format!("insert position {pos}")));
        }
        let vars = self.vars.with_inserted(pos, v)?;
        let deg = self.degree().unwrap_or(0);
        if d < deg {
            return Err(Error::DegreeTooLow {
                target: d,
                degree: deg,
            });
        }
        let mut out = Poly::zero(&vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.insert(pos, d - m.degree());
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Substitutes zero for the listed variables and drops them.
    pub fn restrict_zero(&self, kill: &[&str]) -> Result<Poly> {
        let mut idx: Vec<usize> = kill
            .iter()
            .map(|v| self.vars.require(v))
            .collect::<Result<_>>()?;
        idx.sort_unstable();
        idx.dedup();
        let keep: Vec<usize> = (0..self.arity()).filter(|i| !idx.contains(i)).collect();
        let vars = VarSet::new(keep.iter().map(|&i| self.vars.names()[i].clone()))?;
        let mut out = Poly::zero(&vars);
        for (m, c) in &self.terms {
            if idx.iter().any(|&i| m.0[i] > 0) {
                continue;
            }
            out.add_term(Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone());
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a larger variable set, matching
    /// variables by name.
    pub fn embed(&self, target: &VarSet) -> Result<Poly> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.require(n))
            .collect::<Result<_>>()?;
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &j) in map.iter().enumerate() {
                e[j] = m.0[i];
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Replaces the variable names, keeping positions.
    pub fn with_vars(&self, vars: &VarSet) -> Result<Poly> {
        if vars.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: vars.len(),
            });
        }
        Ok(Poly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        })
    }

    /// `f(x_{·1})·…·f(x_{·d})` on `d` disjoint copies of the variables; copy
    /// `j` of variable `x` is named `x` followed by `j`.
    pub fn boxtimes_power(&self, d: u32) -> Result<Poly> {
        let names: Vec<String> = (1..=d)
            .flat_map(|j| self.vars.names().iter().map(move |n| format!("{n}{j}")))
            .collect();
        let vars = VarSet::new(names)?;
        let n = self.arity();
        let mut acc = Poly::constant(&vars, Rat::one());
        for j in 0..d as usize {
            let mut copy = Poly::zero(&vars);
            for (m, c) in &self.terms {
                let mut e = vec![0; vars.len()];
                e[j * n..(j + 1) * n].copy_from_slice(&m.0);
                copy.add_term(Monomial(e), c.clone());
            }
            acc = &acc * &copy;
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.arity());
        let mut s = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }
}

/// Apolarity action `σ∘f`, where `α^k∘x^m = m!/(m−k)!·x^{m−k}`.
pub fn apply(sigma: &Poly, f: &Poly) -> Result<Poly> {
    if sigma.arity() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: sigma.arity(),
        });
    }
    let mut out = Poly::zero(&f.vars);
    for (a, s) in &sigma.terms {
        for (m, c) in &f.terms {
            if !a.divides(m) {
                continue;
            }
            let mut w = BigInt::one();
            let mut e = Vec::with_capacity(m.0.len());
            for (&mi, &ai) in m.0.iter().zip(&a.0) {
                w *= falling_factorial(mi, ai);
                e.push(mi - ai);
            }
            out.add_term(Monomial(e), s * c * Rat::from_integer(w));
        }
    }
    Ok(out)
}

/// `α^a∘f` for a single dual monomial.
pub fn apply_monomial(a: &Monomial, f: &Poly) -> Poly {
    let mut out = Poly::zero(&f.vars);
    for (m, c) in &f.terms {
        if !a.divides(m) {
            continue;
        }
        let mut w = BigInt::one();
        let mut e = Vec::with_capacity(m.0.len());
        for (&mi, &ai) in m.0.iter().zip(&a.0) {
            w *= falling_factorial(mi, ai);
            e.push(mi - ai);
        }
        out.add_term(Monomial(e), c * Rat::from_integer(w));
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e = acc.entry(m1.mul(m2)).or_insert_with(Rat::zero);
                *e += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly {
            vars: self.vars.clone(),
            terms: acc,
        }
    }
}

impl fmt::Display for Poly {
    /// Terms from highest to lowest degree; coefficient 1 is omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| b.0.cmp(&a.0)));
        for (n, m) in keys.into_iter().enumerate() {
            let c = &self.terms[m];
            let neg = c.is_negative();
            let abs = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = &self.vars.names()[i];
                    if e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
