//! Partials spaces, apolar algebra dimensions, Hilbert functions,
//! annihilators, catalecticants and structure tensors of apolar algebras.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rat, SparseEchelon, TrackedEchelon};
use crate::poly::{apply, apply_monomial, Monomial, Poly, VarSet};
use crate::tensor3::Tensor3;
use crate::Limits;

/// Echelonized basis of `D∘f` with both degree filtrations.
#[derive(Clone, Debug)]
pub struct PartialsSpace {
    f: Poly,
    /// `levels[i]` is an echelon basis of `D_i∘f`.
    levels: Vec<Vec<Poly>>,
    basis: Vec<Poly>,
    filt_ge: Vec<usize>,
    filt_le: Vec<usize>,
}

fn echelon_rows(e: &SparseEchelon<Monomial>, vars: &VarSet) -> Vec<Poly> {
    e.rows()
        .map(|r| Poly::from_terms(vars, r.iter().map(|(m, c)| (m.clone(), c.clone()))))
        .collect()
}

/// Span of `polys` as an echelon basis.
pub fn span_basis(polys: impl IntoIterator<Item = Poly>, vars: &VarSet) -> Vec<Poly> {
    let mut e = SparseEchelon::new();
    for p in polys {
        e.insert(p.into_terms());
    }
    echelon_rows(&e, vars)
}

impl PartialsSpace {
    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `filt_ge[i] = dim D_{≥i}∘f`, ending with a trailing 0.
    pub fn filt_ge(&self) -> &[usize] {
        &self.filt_ge
    }

    /// `filt_le[i] = dim D_{≤i}∘f`.
    pub fn filt_le(&self) -> &[usize] {
        &self.filt_le
    }

    /// Echelon basis of `D_i∘f`.
    pub fn level(&self, i: usize) -> &[Poly] {
        self.levels.get(i).map_or(&[], Vec::as_slice)
    }

    /// Echelon basis of `D_{≥i}∘f`.
    pub fn span_ge(&self, i: usize) -> Vec<Poly> {
        span_basis(
            self.levels.iter().skip(i).flatten().cloned(),
            self.f.vars(),
        )
    }
}

/// Builds `D∘f` level by level: `D_{i+1}∘f` is spanned by the single
/// derivatives of a basis of `D_i∘f`.
pub fn partials_space(f: &Poly) -> Result<PartialsSpace> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vars = f.vars().clone();
    let mut levels = vec![vec![f.clone()]];
    loop {
        let mut e = SparseEchelon::new();
        for p in levels.last().expect("nonempty") {
            for i in 0..vars.len() {
                let d = p.derivative(i);
                if !d.is_zero() {
                    e.insert(d.into_terms());
                }
            }
        }
        if e.is_empty() {
            break;
        }
        levels.push(echelon_rows(&e, &vars));
    }
    let mut le = SparseEchelon::new();
    let mut filt_le = Vec::with_capacity(levels.len());
    for l in &levels {
        for p in l {
            le.insert(p.terms().clone());
        }
        filt_le.push(le.len());
    }
    let mut ge = SparseEchelon::new();
    let mut filt_ge = vec![0; levels.len() + 1];
    for (i, l) in levels.iter().enumerate().rev() {
        for p in l {
            ge.insert(p.terms().clone());
        }
        filt_ge[i] = ge.len();
    }
    Ok(PartialsSpace {
        f: f.clone(),
        basis: echelon_rows(&le, &vars),
        levels,
        filt_ge,
        filt_le,
    })
}

/// `dim Ap(f) = dim D∘f`.
pub fn apolar_dim(f: &Poly) -> Result<usize> {
    Ok(partials_space(f)?.dim())
}

/// Hilbert function of the local algebra `Ap(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    pub values: Vec<usize>,
}

impl HilbertFunction {
    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }
}

/// `HF_i = dim D_{≥i}∘f − dim D_{≥i+1}∘f`.
pub fn hilbert_function(f: &Poly) -> Result<HilbertFunction> {
    Ok(hilbert_of(&partials_space(f)?))
}

pub fn hilbert_of(ps: &PartialsSpace) -> HilbertFunction {
    let g = ps.filt_ge();
    HilbertFunction {
        values: g.windows(2).map(|w| w[0] - w[1]).collect(),
    }
}

/// True iff `1, α_1, …, α_n` act independently on `f`.
pub fn is_concise(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.arity();
    let mut e = SparseEchelon::new();
    let mut ok = e.insert(f.terms().clone());
    for i in 0..n {
        ok &= e.insert(f.derivative(i).into_terms());
    }
    Ok(ok)
}

/// Basis of `{σ ∈ D_{≤d} : σ∘f = 0}`, one element per dual monomial that
/// becomes dependent, in increasing monomial order. Each element is monic in
/// its largest monomial.
pub fn annihilator_upto(f: &Poly, d: u32) -> Result<Vec<Poly>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vars = f.vars();
    let mut t: TrackedEchelon<Monomial, Monomial> = TrackedEchelon::new();
    let mut out = Vec::new();
    for a in Monomial::all_up_to_degree(vars.len(), d) {
        let img = apply_monomial(&a, f);
        if let Some(rel) = t.insert(img.into_terms(), a) {
            out.push(Poly::from_terms(vars, rel));
        }
    }
    Ok(out)
}

/// Rows: dual monomials of degree `k`; columns: monomials of degree `d−k`;
/// both in increasing monomial order. Entry = coefficient of the column
/// monomial in `σ∘F`.
pub fn catalecticant_matrix(f: &Poly, k: u32) -> Result<QMatrix> {
    let d = homogeneous_degree(f)?;
    if k > d {
        return Err(Error::OutOfRange(format!("k = {k} for degree {d}")));
    }
    let n = f.arity();
    let rows = Monomial::all_of_degree(n, k);
    let cols = Monomial::all_of_degree(n, d - k);
    let col_pos: BTreeMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut m = QMatrix::zeros(rows.len(), cols.len());
    for (r, a) in rows.iter().enumerate() {
        for (mono, c) in apply_monomial(a, f).terms() {
            m.set(r, col_pos[mono], c.clone());
        }
    }
    Ok(m)
}

fn homogeneous_degree(f: &Poly) -> Result<u32> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(f.degree().unwrap_or(0))
}

pub fn catalecticant_rank(f: &Poly, k: u32) -> Result<usize> {
    let d = homogeneous_degree(f)?;
    if k > d {
        return Err(Error::OutOfRange(format!("k = {k} for degree {d}")));
    }
    // Work on the smaller side; the two ranks agree.
    let k = k.min(d - k);
    // Sparse rows avoid building wide dense matrices.
    let mut e = SparseEchelon::new();
    for a in Monomial::all_of_degree(f.arity(), k) {
        e.insert(apply_monomial(&a, f).into_terms());
    }
    Ok(e.len())
}

/// `max_k rank Cat_k`, a border rank lower bound.
pub fn max_catalecticant_rank(f: &Poly) -> Result<usize> {
    let d = homogeneous_degree(f)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    (0..=d / 2)
        .map(|k| catalecticant_rank(f, k))
        .try_fold(0, |acc, r| r.map(|r| acc.max(r)))
}

/// Monomial basis of `Ap(f)` with the Gram matrix of the pairing
/// `μ(a, b) = ((ab)∘f)_0`.
#[derive(Clone, Debug)]
pub struct PairingTable {
    pub basis: Vec<Monomial>,
    pub gram: QMatrix,
}

/// Smallest dual monomials (in increasing order) whose images in `D∘f` are
/// independent.
pub fn greedy_monomial_basis(f: &Poly) -> Result<Vec<Monomial>> {
    let ps = partials_space(f)?;
    let ell = ps.dim();
    let d = f.degree().unwrap_or(0);
    let mut e = SparseEchelon::new();
    let mut out = Vec::with_capacity(ell);
    for a in Monomial::all_up_to_degree(f.arity(), d) {
        if out.len() == ell {
            break;
        }
        if !f.terms().keys().any(|m| a.divides(m)) {
            continue;
        }
        if e.insert(apply_monomial(&a, f).into_terms()) {
            out.push(a);
        }
    }
    Ok(out)
}

fn constant_term(p: &Poly) -> Rat {
    p.coeff(&Monomial::one(p.arity()))
}

pub fn pairing_table(f: &Poly) -> Result<PairingTable> {
    let basis = greedy_monomial_basis(f)?;
    let n = basis.len();
    let mut gram = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = constant_term(&apply_monomial(&basis[i].mul(&basis[j]), f));
            gram.set(i, j, v.clone());
            gram.set(j, i, v);
        }
    }
    Ok(PairingTable { basis, gram })
}

/// Multiplication tensor of `Ap(f)` in the greedy monomial basis.
/// The class of `b_i·b_j` is found from its pairings with the basis.
pub fn structure_tensor_of_apolar(f: &Poly) -> Result<(Tensor3, Vec<Monomial>)> {
    let table = pairing_table(f)?;
    let n = table.basis.len();
    let mut aug = QMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, table.gram.get(i, j).clone());
        }
        aug.set(i, n + i, Rat::from_integer(1.into()));
    }
    let (red, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Domain("pairing is degenerate".into()));
    }
    let inv: Vec<Vec<Rat>> = (0..n).map(|r| red.row(r)[n..].to_vec()).collect();
    let mut t = Tensor3::new([n, n, n]);
    for i in 0..n {
        for j in 0..n {
            let prod = table.basis[i].mul(&table.basis[j]);
            let rhs: Vec<Rat> = table
                .basis
                .iter()
                .map(|b| constant_term(&apply_monomial(&prod.mul(b), f)))
                .collect();
            for (k, row) in inv.iter().enumerate() {
                let c: Rat = row.iter().zip(&rhs).map(|(a, b)| a * b).sum();
                if !c.is_zero() {
                    t.add([i, j, k], c)?;
                }
            }
        }
    }
    Ok((t, table.basis))
}

/// Outcome of checking one homogenized annihilator element.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCheck {
    pub generator: String,
    pub annihilates: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TautReport {
    pub form: String,
    pub variable: String,
    pub bound: u32,
    pub twisted: bool,
    pub checks: Vec<GeneratorCheck>,
    pub pass: bool,
}

/// Homogenizes each annihilator element of `F|_{v=1}` up to degree `bound`
/// and checks that it kills `tw(F)` (or `F` itself when `twisted` is false).
pub fn verify_tautological_apolarity(f: &Poly, v: &str, bound: u32, twisted: bool) -> Result<TautReport> {
    homogeneous_degree(f)?;
    let pos = f.vars().require(v)?;
    let target = if twisted { f.twist(v)? } else { f.clone() };
    let deh = f.dehomogenize(v)?;
    let ann = if deh.is_zero() {
        return Err(Error::ZeroPolynomial);
    } else {
        annihilator_upto(&deh, bound)?
    };
    let mut checks = Vec::with_capacity(ann.len());
    for g in ann {
        let deg = g.degree().unwrap_or(0);
        let hom = g.homogenize_at(v, pos, deg)?;
        let kills = apply(&hom, &target)?.is_zero();
        checks.push(GeneratorCheck {
            generator: hom.to_string(),
            annihilates: kills,
        });
    }
    let pass = checks.iter().all(|c| c.annihilates);
    Ok(TautReport {
        form: f.to_string(),
        variable: v.to_string(),
        bound,
        twisted,
        checks,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxtimesCheck {
    pub dim: usize,
    pub expected: u128,
    pub equal: bool,
}

/// `dim Ap(f^{⊠d})` against `(dim Ap f)^d`.
pub fn boxtimes_apolar_dim(f: &Poly, d: u32, limits: &Limits) -> Result<BoxtimesCheck> {
    let ell = apolar_dim(f)? as u128;
    let expected = ell
        .checked_pow(d)
        .filter(|&e| e <= limits.max_terms as u128)
        .ok_or_else(|| Error::guard("apolar dimension of the tensor power", format!("{ell}^{d}"), limits.max_terms))?;
    let dim = apolar_dim(&f.boxtimes_power(d)?)?;
    Ok(BoxtimesCheck {
        dim,
        expected,
        equal: dim as u128 == expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rank, rat};
    use crate::poly::{parse_poly, parse_poly_in};
    use crate::tensor3::cw;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    const EX49: &str = "x3^3+x1*x2*x4+x3*x4^2+x2^2*x5+x2*x3*x5+x1*x5^2+x5^3";

    #[test]
    fn partials_examples() {
        assert_eq!(apolar_dim(&p("x1^2")).unwrap(), 3);
        assert_eq!(apolar_dim(&p(EX49)).unwrap(), 12);
        assert_eq!(apolar_dim(&p("x1^4")).unwrap(), 5);
        assert_eq!(apolar_dim(&p("(x1^2+x2)^2")).unwrap(), 6);
        let f = p("0*x1");
        assert!(matches!(partials_space(&f), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn filtrations_are_monotone() {
        let ps = partials_space(&p("x1^3 + x1*x2 + x2^2*x3")).unwrap();
        let ge = ps.filt_ge();
        let le = ps.filt_le();
        assert_eq!(ge[0], ps.dim());
        assert_eq!(*ge.last().unwrap(), 0);
        assert!(ge.windows(2).all(|w| w[0] >= w[1]));
        assert!(le.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*le.last().unwrap(), ps.dim());
        assert_eq!(ps.span_ge(0).len(), ps.dim());
        assert_eq!(ps.span_ge(1).len(), ge[1]);
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_function(&p("x1^2+x2")).unwrap().values, vec![1, 1, 1]);
        assert_eq!(hilbert_function(&p("x1")).unwrap().values, vec![1, 1]);
        assert_eq!(hilbert_function(&p("x1^2+x2^2")).unwrap().values, vec![1, 2, 1]);
    }

    #[test]
    fn concise_examples() {
        assert!(is_concise(&p("x1^2+x2")).unwrap());
        assert!(!is_concise(&p("(x1+x2)^2")).unwrap());
        assert!(is_concise(&p("x1^2+x2^2")).unwrap());
        assert!(is_concise(&p("x1")).unwrap());
    }

    #[test]
    fn annihilator_examples() {
        let f = p("x1*x2");
        let ann = annihilator_upto(&f, 2).unwrap();
        assert_eq!(ann, vec![parse_poly_in("x1^2", f.vars()).unwrap(), parse_poly_in("x2^2", f.vars()).unwrap()]);
        let g = p("x1^2");
        assert_eq!(annihilator_upto(&g, 3).unwrap(), vec![p("x1^3")]);
        assert!(annihilator_upto(&p("1+x1^3"), 3).unwrap().is_empty());
        let h = p("x1^2+x2^2");
        for s in annihilator_upto(&h, 3).unwrap() {
            assert!(apply(&s, &h).unwrap().is_zero());
        }
    }

    #[test]
    fn catalecticant_examples() {
        assert_eq!(catalecticant_rank(&p("(x0^3+x1^3)^2"), 3).unwrap(), 4);
        assert_eq!(catalecticant_rank(&p("(x1^2+x2^2+x3^2)^2"), 2).unwrap(), 6);
        let f = p("x1^2 + x2");
        assert_eq!(catalecticant_rank(&f, 1), Err(Error::NotHomogeneous));
        assert!(catalecticant_rank(&p("x1^2"), 3).is_err());
        let m = catalecticant_matrix(&p("x0^2*x1"), 1).unwrap();
        // rows α0, α1; columns x0^2, x0x1, x1^2
        assert_eq!(m, QMatrix::from_i64(&[&[0, 2, 0], &[1, 0, 0]]));
    }

    #[test]
    fn max_catalecticant_examples() {
        assert_eq!(max_catalecticant_rank(&p("x0^5")).unwrap(), 1);
        assert_eq!(max_catalecticant_rank(&p("(x0^3+x1^3)^2")).unwrap(), 4);
        assert_eq!(max_catalecticant_rank(&p("x1^3*x2")).unwrap(), 2);
    }

    #[test]
    fn structure_tensor_chain() {
        let (t, basis) = structure_tensor_of_apolar(&p("x1^2")).unwrap();
        let e: Vec<&[u32]> = basis.iter().map(|m| m.exps()).collect();
        assert_eq!(e, vec![&[0][..], &[1], &[2]]);
        let want = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [0, 2, 2], [2, 0, 2], [1, 1, 2]];
        assert_eq!(t.nnz(), 6);
        for idx in want {
            assert_eq!(t.get(idx), rat(1));
        }
    }

    #[test]
    fn structure_tensor_is_cw() {
        for n in [4usize, 5] {
            let q: Vec<String> = (1..=n - 2).map(|i| format!("x{i}^2")).collect();
            let (t, _) = structure_tensor_of_apolar(&p(&q.join("+"))).unwrap();
            assert_eq!(t, cw(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn gram_is_invertible() {
        for s in ["x1^2+x2", "x1^3+x2^3", EX49, "x1*x2*x3"] {
            let t = pairing_table(&p(s)).unwrap();
            assert_eq!(rank(&t.gram), t.basis.len(), "{s}");
            assert!(t.gram.is_symmetric());
        }
    }

    #[test]
    fn tautological_examples() {
        let f = p("x0^3+x1^3");
        let r = verify_tautological_apolarity(&f.pow(2), "x0", 7, true).unwrap();
        assert!(r.pass && !r.checks.is_empty());
        let q = p("x0*x3+x1^2+x2^2");
        assert!(verify_tautological_apolarity(&q.pow(2), "x0", 5, true).unwrap().pass);
        // without the twist the homogenized ideal misses Q^2
        let r = verify_tautological_apolarity(&q.pow(2), "x0", 5, false).unwrap();
        assert!(!r.pass);
        let c = p("x0*x2+x1^2").pow(2);
        assert!(!verify_tautological_apolarity(&c, "x0", 5, false).unwrap().pass);
    }

    #[test]
    fn boxtimes_examples() {
        let lim = Limits::default();
        let a = boxtimes_apolar_dim(&p("x1^2"), 2, &lim).unwrap();
        assert_eq!((a.dim, a.expected), (9, 9));
        assert!(boxtimes_apolar_dim(&p("x1^2+x2"), 2, &lim).unwrap().equal);
        let f = p("x1^3+x1*x2");
        assert_eq!(boxtimes_apolar_dim(&f, 1, &lim).unwrap().dim, apolar_dim(&f).unwrap());
        let tiny = Limits { max_terms: 10, ..lim };
        assert!(matches!(boxtimes_apolar_dim(&p("x1^2"), 3, &tiny), Err(Error::Guard { .. })));
    }

    #[test]
    fn ldf_space_has_full_dimension() {
        for s in ["x1^2+x2", EX49, "x1^3+x1*x2+x2"] {
            let ps = partials_space(&p(s)).unwrap();
            let l = span_basis(ps.basis().iter().map(|b| b.ldf().unwrap()), ps.f().vars());
            assert_eq!(l.len(), ps.dim(), "{s}");
        }
    }
}
