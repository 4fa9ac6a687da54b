//! The regression ledger behind `paper-suite`.

use apolarium::apolar::*;
use apolarium::encompass::*;
use apolarium::exact::{binomial, rat, ratio, QMatrix, Rat};
use apolarium::poly::{parse_poly, parse_poly_in, Poly};
use apolarium::sweet::*;
use apolarium::tensor3::*;
use apolarium::{Limits, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// A value quoted as a known result.
    Literal,
    /// A value checked against an independent computation.
    Derived,
    /// Reported, never asserted.
    Informational,
}

type Check = fn(&Limits, u64) -> Result<(bool, String)>;

pub struct Entry {
    pub id: &'static str,
    pub kind: Kind,
    pub topic: &'static str,
    check: Check,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryResult {
    pub id: String,
    pub kind: Kind,
    pub topic: String,
    /// `None` for informational entries.
    pub pass: Option<bool>,
    pub detail: String,
}

fn p(s: &str) -> Poly {
    parse_poly(s).expect("ledger polynomial parses")
}

const TWIST_CONTROL: &str = "x1^3+x2^3+x0*(x1*y1+x2*y2)+x0^2*y0";

fn dims_of(cases: &[(&str, u32, usize)]) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for &(s, d, want) in cases {
        let got = apolar_dim(&p(s).pow(d))?;
        ok &= got == want;
        notes.push(format!("dim Ap(({s})^{d}) = {got}"));
    }
    Ok((ok, notes.join("; ")))
}

fn ledger() -> Vec<Entry> {
    vec![
        Entry {
            id: "01",
            kind: Kind::Literal,
            topic: "apolar algebra of a squarefree monomial",
            check: |_, _| {
                let h = hilbert_function(&p("x1*x2*x3*x4*x5*x6*x7*x8*x9"))?;
                let want: Vec<BigInt> = (0..=9).map(|i| binomial(9, i)).collect();
                let ok = h.sum() == 512 && h.values.iter().zip(&want).all(|(a, b)| BigInt::from(*a) == *b);
                Ok((ok, format!("dim {} with Hilbert function {:?}", h.sum(), h.values)))
            },
        },
        Entry {
            id: "02",
            kind: Kind::Literal,
            topic: "apolar dimensions of small powers",
            check: |_, _| dims_of(&[("x1^2", 1, 3), ("x1^2", 2, 5), ("x1^2+x2", 2, 6)]),
        },
        Entry {
            id: "03",
            kind: Kind::Literal,
            topic: "cubic with a non-smoothable square",
            check: |_, _| {
                let c = "x3^3+x1*x2*x4+x3*x4^2+x2^2*x5+x2*x3*x5+x1*x5^2+x5^3";
                dims_of(&[(c, 1, 12), (c, 2, 67)])
            },
        },
        Entry {
            id: "04",
            kind: Kind::Literal,
            topic: "middle catalecticant ranks",
            check: |_, _| {
                let a = catalecticant_rank(&p("(x0^3+x1^3)^2"), 3)?;
                let b = catalecticant_rank(&p("(x1^2+x2^2+x3^2)^2"), 2)?;
                Ok((a == 4 && b == 6, format!("(x0^3+x1^3)^2 k=3: {a}; (x1^2+x2^2+x3^2)^2 k=2: {b}")))
            },
        },
        Entry {
            id: "05",
            kind: Kind::Literal,
            topic: "twisted catalecticant theorem for a nondegenerate quadric",
            check: |lim, _| {
                let q = p("x0*x3+x1^2+x2^2");
                let mut ok = true;
                let mut notes = Vec::new();
                for (d, want) in [(1u32, 4usize), (2, 10), (3, 20)] {
                    let r = verify_main_theorem(&q, "x0", d, lim)?;
                    ok &= r.rank == want && r.equal;
                    notes.push(format!("d={d}: {}", r.rank));
                }
                Ok((ok, notes.join("; ")))
            },
        },
        Entry {
            id: "06",
            kind: Kind::Literal,
            topic: "twist necessity control",
            check: |lim, _| {
                let r = verify_main_theorem(&p(TWIST_CONTROL), "x0", 2, lim)?;
                let ok = r.expected == 21 && r.middle_rank_twisted == 21 && r.middle_rank_untwisted == 25;
                let detail = format!(
                    "F^2 middle catalecticant (k={}): untwisted {} > binom(7,2) = {}, twisted {}; degree-2 rank of tw(F^2) {}",
                    r.middle_k, r.middle_rank_untwisted, r.expected, r.middle_rank_twisted, r.rank
                );
                Ok((ok, detail))
            },
        },
        Entry {
            id: "07",
            kind: Kind::Derived,
            topic: "tautological apolarity of twisted powers",
            check: |_, _| {
                let mut ok = true;
                let mut gens = 0;
                for s in ["x0^3+x1^3", "x0*x3+x1^2+x2^2", "x0*x2+x1^2", "x0^2*x1+x1^3", "x0*x1*x2"] {
                    for d in 1..=2 {
                        let f = p(s).pow(d);
                        let bound = f.degree().unwrap_or(0) + 1;
                        let r = verify_tautological_apolarity(&f, "x0", bound, true)?;
                        ok &= r.pass;
                        gens += r.checks.len();
                    }
                }
                Ok((ok, format!("5 forms, d <= 2, {gens} homogenized generators")))
            },
        },
        Entry {
            id: "08",
            kind: Kind::Derived,
            topic: "tautological apolarity needs the twist",
            check: |_, _| {
                let a = verify_tautological_apolarity(&p("(x0*x3+x1^2+x2^2)^2"), "x0", 5, false)?;
                let b = verify_tautological_apolarity(&p("(x0*x2+x1^2)^2"), "x0", 5, false)?;
                let bad = a.checks.iter().chain(&b.checks).filter(|c| !c.annihilates).count();
                Ok((!a.pass && !b.pass, format!("untwisted squares: {bad} generators fail to annihilate")))
            },
        },
        Entry {
            id: "09",
            kind: Kind::Derived,
            topic: "encompassing, maximal growth and gradient dominance agree",
            check: |lim, seed| {
                let corpus = [
                    "x1^2+x2", "x1^2", "x1^2+x2^2", "x1*x2", "x1^3+x2^3", "x1^3+x1*x2+x2", "x1^2+x2^2+x3", "x1*x2+x3",
                    "x1^3+x2", "x1^3+x1*x2", "x1*x2*x3", "x1^2*x2+x1", "x1^2+x2^3",
                ];
                let mut mismatches = Vec::new();
                let mut enc_count = 0;
                for s in corpus {
                    let f = p(s);
                    let enc = is_encompassing(&f)?;
                    enc_count += enc as usize;
                    let mut growth = true;
                    for d in 1..=f.degree().unwrap_or(1) {
                        growth &= check_maximal_growth(&f, d, lim)?.equal;
                    }
                    let probe = gradient_generic_rank(&f, seed)?;
                    if enc != growth || enc != probe.dominant {
                        mismatches.push(s);
                    }
                }
                Ok((
                    mismatches.is_empty(),
                    format!("{} polynomials, {enc_count} encompassing, mismatches {mismatches:?}", corpus.len()),
                ))
            },
        },
        Entry {
            id: "10",
            kind: Kind::Derived,
            topic: "apolar dimension of tensor powers",
            check: |lim, _| {
                let mut ok = true;
                for s in ["x1^2", "x1^2+x2", "x1*x2", "x1^3"] {
                    ok &= boxtimes_apolar_dim(&p(s), 2, lim)?.equal;
                }
                Ok((ok, "dim Ap(f boxtimes f) = (dim Ap f)^2 on 4 inputs".into()))
            },
        },
        Entry {
            id: "11",
            kind: Kind::Literal,
            topic: "encompassing extension of a quadric",
            check: |lim, _| {
                let f = p("x1^2+x2^2");
                let s = parse_poly_in("1/2*x1^2", f.vars())?;
                let r = encompassing_extension(&f, Some(&[s]), lim)?;
                let want = parse_poly_in("x1^2+x2^2+y1", r.g.vars())?;
                Ok((r.g == want && is_encompassing(&r.g)?, format!("g = {}", r.g)))
            },
        },
        Entry {
            id: "12",
            kind: Kind::Literal,
            topic: "encompassing extension of a cubic",
            check: |lim, _| {
                let f = p("x1^3+x2^3");
                let v = f.vars().clone();
                let sig = ["1/6*x1^2", "1/6*x2^2", "1/6*x1^3"]
                    .iter()
                    .map(|s| parse_poly_in(s, &v))
                    .collect::<Result<Vec<_>>>()?;
                let r = encompassing_extension(&f, Some(&sig), lim)?;
                let want = parse_poly_in("x1^3+x2^3+x1*y1+x2*y2+y3", r.g.vars())?;
                Ok((r.g == want, format!("g = {} with sigma_i = alpha_i^2/6", r.g)))
            },
        },
        Entry {
            id: "13",
            kind: Kind::Informational,
            topic: "cubic extension with the operators as printed",
            check: |lim, _| {
                let f = p("x1^3+x2^3");
                let v = f.vars().clone();
                let sig = ["1/2*x1^2", "1/2*x2^2", "1/6*x1^3"]
                    .iter()
                    .map(|s| parse_poly_in(s, &v))
                    .collect::<Result<Vec<_>>>()?;
                let r = encompassing_extension(&f, Some(&sig), lim)?;
                Ok((true, format!("sigma_i = alpha_i^2/2 gives g = {}", r.g)))
            },
        },
        Entry {
            id: "14",
            kind: Kind::Literal,
            topic: "Coppersmith-Winograd tensors as apolar algebras",
            check: |_, _| {
                let mut ok = cw(4)?.nnz() == 9;
                for n in [4usize, 5] {
                    let q: Vec<String> = (1..=n - 2).map(|i| format!("x{i}^2")).collect();
                    let (st, _) = structure_tensor_of_apolar(&p(&q.join("+")))?;
                    ok &= st == cw(n)?;
                }
                Ok((ok, "cw(4) has 9 nonzero entries; cw(4), cw(5) equal Ap structure tensors".into()))
            },
        },
        Entry {
            id: "15",
            kind: Kind::Literal,
            topic: "the algebra A_{T,k} and one-generic extension",
            check: |_, _| {
                let a = QMatrix::from_i64(&[&[2, 0], &[0, 0]]);
                let b = QMatrix::from_i64(&[&[1, 3], &[3, 0]]);
                let t = PartiallySymmetricTensor::new(2, vec![a, b])?;
                let atk = algebra_a_tk(&t, 1).without_labels();
                let mut want = Tensor3::new([6, 6, 6]);
                for i in 0..6 {
                    want.add([0, i, i], rat(1))?;
                    if i > 0 {
                        want.add([i, 0, i], rat(1))?;
                    }
                }
                for (idx, v) in [([1, 1, 4], 2), ([1, 1, 5], 1), ([1, 2, 5], 3), ([2, 1, 5], 3)] {
                    want.add(idx, rat(v))?;
                }
                let e = one_generic_extension(&group_tensor(&AbelianGroup::cyclic(3)?), 1)?;
                let unit = e.slice(0, 0)? == QMatrix::identity(e.dims()[1]);
                Ok((atk == want && unit, format!("A_(T,1) pattern {}, one-generic unit slice {unit}", atk == want)))
            },
        },
        Entry {
            id: "16",
            kind: Kind::Literal,
            topic: "T_Z3 degenerates to CW_3",
            check: |_, _| {
                let g = AbelianGroup::cyclic(3)?;
                let t = group_tensor(&g).without_labels();
                let d = toric_degenerate(&t, &weight_blocking(&g, 2)?, &[vec![1], vec![1], vec![1]])?;
                let ok = d == cw(3)?;
                Ok((ok, format!("degeneration equals cw(3): {ok}")))
            },
        },
        Entry {
            id: "17",
            kind: Kind::Literal,
            topic: "a group tensor and its degeneration have the same sweet pieces",
            check: |lim, _| {
                let w = [vec![1], vec![1], vec![1]];
                let large = cw_distribution(&ratio(1, 3), &Rat::zero())?;
                let s = |a: i64, b: i64, c: i64| [vec![a], vec![b], vec![c]];
                let half = BlockDistribution::new(vec![s(0, 0, 0), s(1, 1, -2)], vec![ratio(1, 2), ratio(1, 2)])?;
                let mut ok = true;
                let mut notes = Vec::new();
                for (orders, g, dist, n) in
                    [(vec![3], 2, &large, 3usize), (vec![2, 2], 3, &half, 2), (vec![2, 2], 3, &large, 3)]
                {
                    let grp = AbelianGroup::new(orders.clone())?;
                    let t = group_tensor(&grp).without_labels();
                    let b = weight_blocking(&grp, g)?;
                    let d = toric_degenerate(&t, &b, &w)?;
                    let a = sp_project(&t, &b, dist, n, lim)?;
                    let e = sp_extract(&d, &b, dist, n, lim)?;
                    let same = a.tensor == e.tensor && a.kept == e.kept && e.tensor.nnz() > 0 && e.check.ok();
                    ok &= same;
                    notes.push(format!("{orders:?} N={n}: {same} ({} entries)", e.tensor.nnz()));
                }
                Ok((ok, notes.join("; ")))
            },
        },
        Entry {
            id: "18",
            kind: Kind::Literal,
            topic: "sweet piece of the dual-number tensor",
            check: |lim, _| {
                let s = |a: i64, b: i64, c: i64| [vec![a], vec![b], vec![c]];
                let uni = BlockDistribution::uniform(vec![s(0, 0, 0), s(0, 1, -1), s(1, 0, -1)])?;
                let sp = sp_extract(&dual_numbers_tensor(), &degree_blocking(&[0, 1]), &uni, 3, lim)?;
                let mut ok = sp.tensor.dims() == [3, 3, 3] && sp.tensor.nnz() == 6;
                for (idx, v) in sp.tensor.entries() {
                    let (a, b, c) = (&sp.kept[0][idx[0]], &sp.kept[1][idx[1]], &sp.kept[2][idx[2]]);
                    ok &= *v == rat(1) && (0..3).all(|i| a[i] + b[i] == c[i] && a[i] * b[i] == 0);
                }
                Ok((ok, format!("disjoint-union tensor of format {:?} with {} entries", sp.tensor.dims(), sp.tensor.nnz())))
            },
        },
        Entry {
            id: "19",
            kind: Kind::Literal,
            topic: "CW sweet-piece rank formula",
            check: |lim, _| {
                let third = ratio(1, 3);
                let z = Rat::zero();
                let mut ok = true;
                let mut notes = Vec::new();
                for (n, big_n, want) in [(3u64, 3u64, 26), (4, 3, 63), (3, 6, 717)] {
                    let r = formula_sweet_rank(n, big_n, &third, &z)?;
                    let c = cw_chimney(n as usize, big_n as usize, &third, &z, lim)?;
                    let zl = zero_layers(&c, 2)?;
                    let covered = BigInt::from(zl) >= formula_zero_layer_term(n, big_n)?;
                    ok &= r == BigInt::from(want) && covered;
                    notes.push(format!("n={n} N={big_n}: {r}, chimney zero layers {zl}"));
                }
                Ok((ok, notes.join("; ")))
            },
        },
        Entry {
            id: "20",
            kind: Kind::Literal,
            topic: "Pratt-style bound for the Z/2 group tensor",
            check: |lim, _| {
                let mut ok = formula_pratt(1)? == BigInt::from(4) && formula_pratt(2)? == BigInt::from(31);
                for k in 1..=3u32 {
                    let f = formula_pratt(k)?;
                    let zl = zero_layers(&pratt_chimney(k, lim)?, 2)?;
                    let sb = substitution_bound(&Ambient::GroupPower { order: 2, power: 3 * k }, zl as u64, false)?;
                    ok &= f == BigInt::from(even_symdiff_brute(k, lim)?) && f == even_symdiff_count(k)? && sb.bound == f;
                }
                Ok((ok, "4 and 31; formula = enumeration = chimney bound for k <= 3".into()))
            },
        },
        Entry {
            id: "21",
            kind: Kind::Literal,
            topic: "Veronese of the Boolean algebra",
            check: |_, _| {
                let dims: Vec<BigInt> = (0..=9).map(|i| binomial(9, i)).collect();
                let v = veronese_dims(&dims, 3)?;
                let want: Vec<BigInt> = [1, 84, 84, 1].into_iter().map(BigInt::from).collect();
                Ok((v == want, format!("{:?}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>())))
            },
        },
        Entry {
            id: "22",
            kind: Kind::Informational,
            topic: "Hilbert function of a quadric plus a linear term",
            check: |_, _| {
                let mut notes = Vec::new();
                for n in 3..=5 {
                    let q: Vec<String> = (1..n).map(|i| format!("x{i}^2")).collect();
                    let f = p(&format!("{}+x{n}", q.join("+")));
                    let h = hilbert_function(&f)?;
                    notes.push(format!("n={n}: {:?} (dim {})", h.values, h.sum()));
                }
                Ok((true, notes.join("; ")))
            },
        },
        Entry {
            id: "23",
            kind: Kind::Informational,
            topic: "Veronese subalgebra dimension formula",
            check: |_, _| {
                let brute = dual_numbers_subalgebra_dim(6, 1)?;
                Ok((true, format!("k=1: formula {}, enumeration {brute}", vero_formula(1))))
            },
        },
        Entry {
            id: "24",
            kind: Kind::Informational,
            topic: "growth of powers of almost-encompassing polynomials",
            check: |lim, _| {
                let mut notes = Vec::new();
                for s in ["x1^2+x2^2", "x1*x2", "x1^3+x2^3"] {
                    let f = p(s);
                    let ell = apolar_dim(&f)? as u64;
                    let t = growth_table(&f, 3, lim)?;
                    let bin: Vec<String> = (1..=3u64).map(|d| binomial(ell + d - 1, d).to_string()).collect();
                    notes.push(format!("{s}: almost {} dims {t:?} vs {bin:?}", is_almost_encompassing(&f)?));
                }
                Ok((true, notes.join("; ")))
            },
        },
        Entry {
            id: "25",
            kind: Kind::Derived,
            topic: "rank equalities beyond catalecticants are not computed",
            check: |lim, _| {
                let r = verify_main_theorem(&p("x0*x3+x1^2+x2^2"), "x0", 1, lim)?;
                Ok((r.note.contains("not computed"), r.note))
            },
        },
    ]
}

pub fn run_entries(lim: &Limits, seed: u64) -> Vec<EntryResult> {
    let mut out: Vec<EntryResult> = ledger()
        .par_iter()
        .map(|e| {
            let (pass, detail) = match (e.check)(lim, seed) {
                Ok((ok, d)) => (ok, d),
                Err(err) => (false, format!("error: {err}")),
            };
            EntryResult {
                id: e.id.to_string(),
                kind: e.kind,
                topic: e.topic.to_string(),
                pass: (e.kind != Kind::Informational).then_some(pass),
                detail,
            }
        })
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub(crate) fn run_suite(lim: &Limits, seed: u64) -> Result<(Report, bool)> {
    let entries = run_entries(lim, seed);
    let failed: Vec<&str> = entries.iter().filter(|e| e.pass == Some(false)).map(|e| e.id.as_str()).collect();
    let passed = entries.iter().filter(|e| e.pass == Some(true)).count();
    let informational = entries.iter().filter(|e| e.pass.is_none()).count();
    let provenance: Vec<String> = entries.iter().map(|e| e.topic.clone()).collect();
    let ok = failed.is_empty();
    let report = Report {
        command: "paper-suite".into(),
        inputs: json!({}),
        outputs: json!({
            "total": entries.len(),
            "passed": passed,
            "failed": failed,
            "informational": informational,
            "entries": entries,
        }),
        provenance,
        seed: Some(seed),
    };
    Ok((report, ok))
}
