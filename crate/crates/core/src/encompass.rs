//! Encompassing polynomials: the truncation tests, growth of powers, the
//! gradient dominance probe and the extension `g = Σ_a y^a/a!·(σ^a∘f)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::apolar::{apolar_dim, catalecticant_rank, is_concise, partials_space, span_basis};
use crate::error::{Error, Result};
use crate::exact::{binomial, rank, rat, QMatrix, Rat, SparseEchelon};
use crate::poly::{apply, apply_monomial, Monomial, Poly, VarSet};
use crate::Limits;

fn truncation_rank(polys: &[Poly]) -> usize {
    let mut e = SparseEchelon::new();
    for p in polys {
        e.insert(p.truncate(1).into_terms());
    }
    e.len()
}

/// True iff `P ↦ P_{≤1}` is injective on `D∘f`.
pub fn is_encompassing(f: &Poly) -> Result<bool> {
    let ps = partials_space(f)?;
    Ok(truncation_rank(ps.basis()) == ps.dim())
}

/// True iff `f_{≤1} = 0` and `P ↦ P_{≤1}` is injective on `D_{≥1}∘f`.
pub fn is_almost_encompassing(f: &Poly) -> Result<bool> {
    let ps = partials_space(f)?;
    if !f.truncate(1).is_zero() {
        return Ok(false);
    }
    let ge1 = ps.span_ge(1);
    Ok(truncation_rank(&ge1) == ge1.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Growth {
    pub d: u32,
    /// `dim Ap(f^d)`
    pub lhs: usize,
    /// `binom(ℓ+d−1, d)`
    pub rhs: u128,
    pub equal: bool,
}

fn power_guard(f: &Poly, d: u32, limits: &Limits) -> Result<()> {
    let deg = f.degree().unwrap_or(0) as u64 * d as u64;
    if deg > limits.max_degree as u64 {
        return Err(Error::guard("degree of power", deg, limits.max_degree));
    }
    Ok(())
}

fn binom_guard(n: u64, k: u64, limits: &Limits) -> Result<u128> {
    let b = binomial(n, k);
    let v: u128 = b
        .clone()
        .try_into()
        .map_err(|_| Error::guard("binomial bound", &b, limits.max_terms))?;
    if v > limits.max_terms as u128 {
        return Err(Error::guard("binomial bound", v, limits.max_terms));
    }
    Ok(v)
}

/// Compares `dim Ap(f^d)` with `binom(ℓ+d−1, d)`.
pub fn check_maximal_growth(f: &Poly, d: u32, limits: &Limits) -> Result<Growth> {
    if d == 0 {
        return Err(Error::OutOfRange("d must be at least 1".into()));
    }
    let ell = apolar_dim(f)? as u64;
    let rhs = binom_guard(ell + d as u64 - 1, d as u64, limits)?;
    power_guard(f, d, limits)?;
    let lhs = apolar_dim(&f.pow(d))?;
    Ok(Growth {
        d,
        lhs,
        rhs,
        equal: lhs as u128 == rhs,
    })
}

/// `[dim Ap(f^d)]` for `d = 1..=dmax`.
pub fn growth_table(f: &Poly, dmax: u32, limits: &Limits) -> Result<Vec<usize>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    (1..=dmax)
        .map(|d| {
            power_guard(f, d, limits)?;
            apolar_dim(&f.pow(d))
        })
        .collect()
}

/// Dimension of the span of all `d`-fold products of a basis of `D∘f`.
pub fn product_span_dim(f: &Poly, d: u32, limits: &Limits) -> Result<usize> {
    let ps = partials_space(f)?;
    let ell = ps.dim() as u64;
    binom_guard(ell + d as u64 - 1, d as u64, limits)?;
    let basis = ps.basis();
    let mut e = SparseEchelon::new();
    let mut idx = vec![0usize; d as usize];
    loop {
        let mut prod = Poly::constant(f.vars(), rat(1));
        for &i in &idx {
            prod = &prod * &basis[i];
        }
        e.insert(prod.into_terms());
        // next nondecreasing index sequence
        let mut pos = d as usize;
        loop {
            if pos == 0 {
                return Ok(e.len());
            }
            pos -= 1;
            if idx[pos] + 1 < basis.len() {
                let v = idx[pos] + 1;
                for slot in &mut idx[pos..] {
                    *slot = v;
                }
                break;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradientProbe {
    pub ell: usize,
    pub rank: usize,
    pub dominant: bool,
    pub points_tried: usize,
    pub seed: u64,
}

/// Rank of the Jacobian of the non-constant basis partials at up to three
/// seeded random integer points in `[−1000, 1000]^n`; dominance iff the
/// rank reaches `ℓ−1`.
pub fn gradient_generic_rank(f: &Poly, seed: u64) -> Result<GradientProbe> {
    if !is_concise(f)? {
        return Err(Error::NotConcise("polynomial is not concise".into()));
    }
    let ell = apolar_dim(f)?;
    let n = f.arity();
    let mut e = SparseEchelon::new();
    e.insert(Poly::constant(f.vars(), rat(1)).into_terms());
    let mut partials = Vec::with_capacity(ell.saturating_sub(1));
    let d = f.degree().unwrap_or(0);
    for a in Monomial::all_up_to_degree(n, d) {
        if partials.len() + 1 == ell {
            break;
        }
        let img = apply_monomial(&a, f);
        if e.insert(img.terms().clone()) {
            partials.push(img);
        }
    }
    let jac: Vec<Vec<Poly>> = partials
        .iter()
        .map(|p| (0..n).map(|i| p.derivative(i)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    let mut tried = 0;
    let target = ell - 1;
    while tried < 3 && best < target {
        tried += 1;
        let pt: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-1000..=1000))).collect();
        let rows: Vec<Vec<Rat>> = jac
            .iter()
            .map(|row| row.iter().map(|q| q.eval(&pt)).collect())
            .collect();
        let r = if rows.is_empty() {
            0
        } else {
            rank(&QMatrix::from_rows(rows)?)
        };
        best = best.max(r);
    }
    Ok(GradientProbe {
        ell,
        rank: best,
        dominant: best == target,
        points_tried: tried,
        seed,
    })
}

/// `Σ_a y^a/a!·(σ^a∘f)` over `f`'s variables followed by `ys`. Each σ must
/// have zero constant term so the sum is finite.
pub fn taylor_series(f: &Poly, sigmas: &[Poly], ys: &VarSet, limits: &Limits) -> Result<Poly> {
    if ys.len() != sigmas.len() {
        return Err(Error::ArityMismatch {
            expected: sigmas.len(),
            found: ys.len(),
        });
    }
    for s in sigmas {
        if s.arity() != f.arity() {
            return Err(Error::ArityMismatch {
                expected: f.arity(),
                found: s.arity(),
            });
        }
        if s.min_degree().map_or(true, |d| d == 0) {
            return Err(Error::InvalidOverride(format!(
                "operator `{s}` is zero or has a constant term"
            )));
        }
    }
    let vars = f.vars().concat(ys)?;
    let n = f.arity();
    let mut g = Poly::zero(&vars);
    // Depth-first over nondecreasing operator sequences, one per multi-index.
    let mut stack: Vec<(Vec<u32>, usize, Poly)> = vec![(vec![0; sigmas.len()], 0, f.clone())];
    while let Some((a, last, h)) = stack.pop() {
        let afact = Rat::from_integer(Monomial::new(a.clone()).factorial());
        for (m, c) in h.terms() {
            let mut e = m.exps().to_vec();
            e.extend_from_slice(&a);
            g.add_term(Monomial::new(e), c / &afact);
        }
        if g.num_terms() > limits.max_terms {
            return Err(Error::guard("series terms", g.num_terms(), limits.max_terms));
        }
        for (j, s) in sigmas.iter().enumerate().skip(last) {
            let next = apply(s, &h)?;
            if !next.is_zero() {
                let mut a2 = a.clone();
                a2[j] += 1;
                stack.push((a2, j, next));
            }
        }
    }
    debug_assert_eq!(g.arity(), n + ys.len());
    Ok(g)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionResult {
    #[serde(serialize_with = "ser_display")]
    pub g: Poly,
    #[serde(serialize_with = "ser_display_vec")]
    pub sigma_list: Vec<Poly>,
    /// Homogenization of `g` with respect to `homogenizing_var`.
    #[serde(serialize_with = "ser_display", rename = "G")]
    pub big_g: Poly,
    pub new_vars: Vec<String>,
    pub homogenizing_var: String,
}

fn ser_display<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn ser_display_vec<S: serde::Serializer>(v: &[Poly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

fn fresh_prefix(vars: &VarSet, candidates: &[&str], count: usize, start: usize) -> String {
    for c in candidates {
        if (start..start + count.max(1)).all(|i| vars.index_of(&format!("{c}{i}")).is_none()) {
            return c.to_string();
        }
    }
    let mut k = 0;
    loop {
        let c = format!("y{k}n");
        if (start..start + count.max(1)).all(|i| vars.index_of(&format!("{c}{i}")).is_none()) {
            return c;
        }
        k += 1;
    }
}

/// Default σ list: the smallest dual monomials of degree ≥ 2 whose images
/// extend `f, ∂_1 f, …, ∂_k f` to a basis of `D∘f`.
pub fn default_sigmas(f: &Poly) -> Result<Vec<Poly>> {
    let ell = apolar_dim(f)?;
    let k = f.arity();
    let mut e = SparseEchelon::new();
    e.insert(f.terms().clone());
    for i in 0..k {
        e.insert(f.derivative(i).into_terms());
    }
    let mut out = Vec::new();
    let need = ell - e.len();
    let d = f.degree().unwrap_or(0);
    for deg in 2..=d {
        for a in Monomial::all_of_degree(k, deg) {
            if out.len() == need {
                return Ok(out);
            }
            if !f.terms().keys().any(|m| a.divides(m)) {
                continue;
            }
            if e.insert(apply_monomial(&a, f).into_terms()) {
                out.push(Poly::monomial(f.vars(), a, rat(1)));
            }
        }
    }
    Ok(out)
}

fn validate_sigmas(f: &Poly, sigmas: &[Poly], ell: usize) -> Result<()> {
    let k = f.arity();
    let need = ell - k - 1;
    if sigmas.len() != need {
        return Err(Error::InvalidOverride(format!(
            "need {need} operators to complete a basis of dimension {ell}, got {}",
            sigmas.len()
        )));
    }
    let mut e = SparseEchelon::new();
    e.insert(f.terms().clone());
    for i in 0..k {
        e.insert(f.derivative(i).into_terms());
    }
    for s in sigmas {
        if s.arity() != k {
            return Err(Error::InvalidOverride(format!("operator `{s}` has the wrong arity")));
        }
        if s.min_degree().map_or(true, |d| d < 2) {
            return Err(Error::InvalidOverride(format!(
                "operator `{s}` has terms of degree below 2"
            )));
        }
        if !e.insert(apply(s, f)?.into_terms()) {
            return Err(Error::InvalidOverride(format!(
                "operator `{s}` does not extend the basis"
            )));
        }
    }
    Ok(())
}

/// Builds the encompassing polynomial `g` of the same apolar algebra as `f`
/// and its homogenization `G`.
pub fn encompassing_extension(f: &Poly, sigma_override: Option<&[Poly]>, limits: &Limits) -> Result<ExtensionResult> {
    if !is_concise(f)? {
        return Err(Error::NotConcise("polynomial is not concise".into()));
    }
    let ell = apolar_dim(f)?;
    let sigmas = match sigma_override {
        Some(s) => {
            validate_sigmas(f, s, ell)?;
            s.to_vec()
        }
        None => default_sigmas(f)?,
    };
    let prefix = fresh_prefix(f.vars(), &["y", "w", "u", "t"], sigmas.len(), 1);
    let ys = VarSet::new((1..=sigmas.len()).map(|i| format!("{prefix}{i}")))?;
    let g = taylor_series(f, &sigmas, &ys, limits)?;
    let h = fresh_prefix(g.vars(), &["x", "z", "s"], 1, 0);
    let hv = format!("{h}0");
    let big_g = g.homogenize(&hv, g.degree().unwrap_or(0))?;
    Ok(ExtensionResult {
        g,
        sigma_list: sigmas,
        big_g,
        new_vars: ys.names().to_vec(),
        homogenizing_var: hv,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub n: usize,
    pub d: u32,
    pub concise: bool,
    pub dehomogenization_encompassing: bool,
    /// Rank of the degree-`d` catalecticant of `tw(F^d)`.
    pub rank: usize,
    /// `binom(n+d, d)`
    pub expected: u128,
    pub equal: bool,
    pub middle_k: u32,
    pub middle_rank_twisted: usize,
    pub middle_rank_untwisted: usize,
    pub note: String,
}

/// Compares the degree-`d` catalecticant rank of `tw(F^d)` (twist w.r.t.
/// `v`) with `binom(n+d, d)`, where `F` has `n+1` variables.
pub fn verify_main_theorem(f: &Poly, v: &str, d: u32, limits: &Limits) -> Result<MainTheoremReport> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    f.vars().require(v)?;
    power_guard(f, d, limits)?;
    let n = f.arity() - 1;
    let concise = is_concise(f)?;
    let deh = f.dehomogenize(v)?;
    let enc = !deh.is_zero() && is_encompassing(&deh)?;
    let fd = f.pow(d);
    let tw = fd.twist(v)?;
    let rank = catalecticant_rank(&tw, d)?;
    let expected = binom_guard(n as u64 + d as u64, d as u64, limits)?;
    let deg = fd.degree().unwrap_or(0);
    let middle_k = deg / 2;
    Ok(MainTheoremReport {
        n,
        d,
        concise,
        dehomogenization_encompassing: enc,
        rank,
        expected,
        equal: rank as u128 == expected,
        middle_k,
        middle_rank_twisted: catalecticant_rank(&tw, middle_k)?,
        middle_rank_untwisted: catalecticant_rank(&fd, middle_k)?,
        note: "only the catalecticant equality is checked; smoothable and cactus rank equalities are not computed".into(),
    })
}

/// Linear independence of the classes of `1, α_1, …, α_n` in `Ap(f)`
/// together with `ℓ = n+1`; holds for encompassing `f`.
pub fn dimension_is_arity_plus_one(f: &Poly) -> Result<bool> {
    Ok(apolar_dim(f)? == f.arity() + 1)
}

/// Span of the truncations `P_{≤1}` over a basis of `D∘f`, as an echelon
/// basis. Exposed for diagnostics.
pub fn truncated_partials(f: &Poly) -> Result<Vec<Poly>> {
    let ps = partials_space(f)?;
    Ok(span_basis(ps.basis().iter().map(|b| b.truncate(1)), f.vars()))
}
