//! Acceptance run: one line per criterion, exit status 1 if any fails.

mod common;

use std::time::Instant;

use apolarium::apolar::*;
use apolarium::encompass::*;
use apolarium::exact::{binomial, rat, ratio, Rat};
use apolarium::poly::parse_poly_in;
use apolarium::sweet::*;
use apolarium::tensor3::*;
use apolarium::Limits;
use num_bigint::BigInt;
use num_traits::Zero;

use common::*;

type Outcome = (bool, String);

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    let hf = hilbert_function(&p("x1*x2*x3*x4*x5*x6*x7*x8*x9")).unwrap();
    let want: Vec<usize> = (0..=9).map(|i| binomial(9, i).try_into().unwrap()).collect();
    ok &= hf.values == want && hf.sum() == 512;
    notes.push(format!("x1..x9 -> {} {:?}", hf.sum(), hf.values));
    for (s, d, want) in [
        ("x1^2", 1, 3),
        ("x1^2", 2, 5),
        ("x1^2+x2", 2, 6),
        (NONSMOOTHABLE_CUBIC, 1, 12),
        (NONSMOOTHABLE_CUBIC, 2, 67),
    ] {
        let got = apolar_dim(&p(s).pow(d)).unwrap();
        ok &= got == want;
        notes.push(format!("dim Ap(({s})^{d}) = {got}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 60.0;
    notes.push(format!("{secs:.2}s"));
    (ok, notes.join("; "))
}

fn criterion_2() -> Outcome {
    let cases = [
        ("(x0^3+x1^3)^2", 3, 4),
        ("(x1^2+x2^2+x3^2)^2", 2, 6),
        (&format!("({TWIST_CONTROL})^2")[..], 3, 25),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (s, k, want) in cases {
        let r = catalecticant_rank(&p(s), k).unwrap();
        ok &= r == want;
        notes.push(format!("{s} k={k}: {r}"));
    }
    ok &= binomial(4, 2) == BigInt::from(6);
    (ok, notes.join("; "))
}

fn criterion_3() -> Outcome {
    let lim = Limits::default();
    let mut ok = true;
    let mut notes = Vec::new();
    let q = p("x0*x3+x1^2+x2^2");
    for (d, want) in [(1, 4), (2, 10), (3, 20)] {
        let r = verify_main_theorem(&q, "x0", d, &lim).unwrap();
        ok &= r.rank == want && r.expected == want as u128;
        notes.push(format!("tw(Q^{d}) rank {}", r.rank));
    }
    let r = verify_main_theorem(&p(TWIST_CONTROL), "x0", 2, &lim).unwrap();
    ok &= r.expected == 21 && r.middle_rank_twisted == 21 && r.middle_rank_untwisted == 25;
    notes.push(format!(
        "control F: degree-2 cat of tw(F^2) {}, middle (k={}) twisted {} untwisted {}",
        r.rank, r.middle_k, r.middle_rank_twisted, r.middle_rank_untwisted
    ));
    (ok, notes.join("; "))
}

fn criterion_4() -> Outcome {
    let mut ok = true;
    let mut gens = 0;
    let mut failed = Vec::new();
    for s in FORMS {
        for d in 1..=2 {
            let f = p(s).pow(d);
            let bound = f.degree().unwrap() + 1;
            let r = verify_tautological_apolarity(&f, "x0", bound, true).unwrap();
            gens += r.checks.len();
            if !r.pass {
                ok = false;
                failed.push(format!("({s})^{d}"));
            }
        }
    }
    // the twist is needed: without it the check fails for a nondegenerate quadric square
    let control = verify_tautological_apolarity(&p("x0*x3+x1^2+x2^2").pow(2), "x0", 5, false).unwrap();
    ok &= !control.pass;
    (
        ok,
        format!(
            "{} forms, d <= 2, {gens} homogenized generators checked, failures {failed:?}; untwisted control fails: {}",
            FORMS.len(),
            !control.pass
        ),
    )
}

fn criterion_5() -> Outcome {
    let lim = Limits::default();
    let mut corpus: Vec<_> = AFFINE.iter().map(|s| p(s)).collect();
    for s in TO_EXTEND {
        corpus.push(encompassing_extension(&p(s), None, &lim).unwrap().g);
    }
    let mut ok = true;
    let mut bad = Vec::new();
    let mut enc_count = 0;
    let mut violations = 0;
    for f in &corpus {
        let enc = is_encompassing(f).unwrap();
        enc_count += enc as usize;
        let mut growth = true;
        for d in 1..=f.degree().unwrap() {
            let g = check_maximal_growth(f, d, &lim).unwrap();
            growth &= g.equal;
            if g.lhs as u128 > g.rhs {
                violations += 1;
            }
        }
        let probe = gradient_generic_rank(f, 0).unwrap();
        if enc != growth || enc != probe.dominant {
            ok = false;
            bad.push(f.to_string());
        }
    }
    ok &= violations == 0;
    let mut box_ok = true;
    for s in ["x1^2", "x1^2+x2", "x1*x2", "x1^3+x1*x2", "x1^3"] {
        box_ok &= boxtimes_apolar_dim(&p(s), 2, &lim).unwrap().equal;
    }
    ok &= box_ok;
    (
        ok,
        format!(
            "{} polynomials ({enc_count} encompassing), equivalence mismatches {bad:?}, growth inequality violations {violations}, boxtimes equality on 5 inputs: {box_ok}; gradient probe seed 0, 3 points",
            corpus.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let lim = Limits::default();
    let mut ok = true;
    let mut notes = Vec::new();
    let f = p("x1^2+x2^2");
    let s = parse_poly_in("1/2*x1^2", f.vars()).unwrap();
    let r = encompassing_extension(&f, Some(&[s]), &lim).unwrap();
    ok &= r.g == parse_poly_in("x1^2+x2^2+y1", r.g.vars()).unwrap();
    notes.push(format!("quadric g = {}", r.g));

    let f = p("x1^3+x2^3");
    let v = f.vars().clone();
    let sig = |s: &str| parse_poly_in(s, &v).unwrap();
    let normalized = [sig("1/6*x1^2"), sig("1/6*x2^2"), sig("1/6*x1^3")];
    let r = encompassing_extension(&f, Some(&normalized), &lim).unwrap();
    ok &= r.g == parse_poly_in("x1^3+x2^3+x1*y1+x2*y2+y3", r.g.vars()).unwrap();
    notes.push(format!("cubic g = {} (sigma_i = alpha_i^2/6)", r.g));
    let printed = [sig("1/2*x1^2"), sig("1/2*x2^2"), sig("1/6*x1^3")];
    let r = encompassing_extension(&f, Some(&printed), &lim).unwrap();
    notes.push(format!("with sigma_i = alpha_i^2/2: {}", r.g));

    let mut inv = true;
    for s in TO_EXTEND.iter().chain(["x1^2+x2^2", "x1^2*x2+x2^3", "x1^4+x2^4"].iter()) {
        let f = p(s);
        let r = encompassing_extension(&f, None, &lim).unwrap();
        let ys: Vec<&str> = r.new_vars.iter().map(String::as_str).collect();
        inv &= r.g.restrict_zero(&ys).unwrap() == f;
        inv &= is_encompassing(&r.g).unwrap();
        inv &= apolar_dim(&r.g).unwrap() == apolar_dim(&f).unwrap();
        inv &= hilbert_function(&r.g).unwrap() == hilbert_function(&f).unwrap();
    }
    ok &= inv;
    notes.push(format!("default-sigma invariants: {inv}"));
    (ok, notes.join("; "))
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let a = apolarium::exact::QMatrix::from_i64(&[&[2, 0], &[0, 0]]);
    let b = apolarium::exact::QMatrix::from_i64(&[&[1, 3], &[3, 0]]);
    let t = PartiallySymmetricTensor::new(2, vec![a, b]).unwrap();
    let atk = algebra_a_tk(&t, 1);
    // basis 1, x1, x2, y1, a, b
    let mut want = Tensor3::new([6, 6, 6]);
    for i in 0..6 {
        want.add([0, i, i], rat(1)).unwrap();
        if i > 0 {
            want.add([i, 0, i], rat(1)).unwrap();
        }
    }
    for (idx, v) in [([1, 1, 4], 2), ([1, 1, 5], 1), ([1, 2, 5], 3), ([2, 1, 5], 3)] {
        want.add(idx, rat(v)).unwrap();
    }
    let pattern = atk.clone().without_labels() == want;
    ok &= pattern;
    notes.push(format!("A_(T,1) pattern exact: {pattern}"));

    let z3 = group_tensor(&AbelianGroup::cyclic(3).unwrap());
    let e = one_generic_extension(&z3, 1).unwrap();
    let unit = e.slice(0, 0).unwrap() == apolarium::exact::QMatrix::identity(e.dims()[1]);
    ok &= unit;
    notes.push(format!("one-generic e0 slice is identity: {unit}"));
    for n in [4usize, 5] {
        let q: Vec<String> = (1..=n - 2).map(|i| format!("x{i}^2")).collect();
        let (st, _) = structure_tensor_of_apolar(&p(&q.join("+"))).unwrap();
        let eq = st == cw(n).unwrap();
        ok &= eq;
        notes.push(format!("cw({n}) = Ap structure tensor: {eq}"));
    }
    (ok, notes.join("; "))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let lim = Limits::default();
    let mut ok = true;
    let mut notes = Vec::new();
    let w = [vec![1], vec![1], vec![1]];

    let g3 = AbelianGroup::cyclic(3).unwrap();
    let t3 = group_tensor(&g3).without_labels();
    let b3 = weight_blocking(&g3, 2).unwrap();
    let d3 = toric_degenerate(&t3, &b3, &w).unwrap();
    let deg_is_cw = d3 == cw(3).unwrap();
    ok &= deg_is_cw;
    notes.push(format!("T_Z3 degenerates to cw(3): {deg_is_cw}"));

    let large = cw_distribution(&ratio(1, 3), &Rat::zero()).unwrap();
    let sp_t = sp_project(&t3, &b3, &large, 3, &lim).unwrap();
    let sp_d = sp_extract(&d3, &b3, &large, 3, &lim).unwrap();
    let same = sp_t.tensor == sp_d.tensor && sp_t.kept == sp_d.kept && sp_d.tensor.nnz() > 0;
    ok &= same && sp_d.check.ok();
    notes.push(format!("SP(T_Z3) = SP(cw(3)) at N=3: {same} ({} entries)", sp_d.tensor.nnz()));

    let g22 = AbelianGroup::new(vec![2, 2]).unwrap();
    let t22 = group_tensor(&g22).without_labels();
    let b22 = weight_blocking(&g22, 3).unwrap();
    let d22 = toric_degenerate(&t22, &b22, &w).unwrap();
    let s = |a: i64, b: i64, c: i64| [vec![a], vec![b], vec![c]];
    let half = BlockDistribution::new(vec![s(0, 0, 0), s(1, 1, -2)], vec![ratio(1, 2), ratio(1, 2)]).unwrap();
    for (dist, n) in [(&half, 2usize), (&large, 3)] {
        let a = sp_project(&t22, &b22, dist, n, &lim).unwrap();
        let b = sp_extract(&d22, &b22, dist, n, &lim).unwrap();
        let same = a.tensor == b.tensor && b.tensor.nnz() > 0;
        ok &= same && b.check.ok();
        notes.push(format!("Z2xZ2 N={n}: {same}"));
    }

    let tb = dual_numbers_tensor();
    let uni = BlockDistribution::uniform(vec![s(0, 0, 0), s(0, 1, -1), s(1, 0, -1)]).unwrap();
    let sp = sp_extract(&tb, &degree_blocking(&[0, 1]), &uni, 3, &lim).unwrap();
    let mut disjoint = sp.tensor.dims() == [3, 3, 3] && sp.tensor.nnz() == 6;
    for (idx, v) in sp.tensor.entries() {
        let (a, b, c) = (&sp.kept[0][idx[0]], &sp.kept[1][idx[1]], &sp.kept[2][idx[2]]);
        disjoint &= *v == rat(1) && (0..3).all(|i| a[i] + b[i] == c[i] && a[i] * b[i] == 0);
    }
    ok &= disjoint;
    notes.push(format!("SP(T_B) disjointness tensor: {disjoint}"));

    for (n, big_n) in [(3usize, 3usize), (4, 3), (3, 6)] {
        let c = cw_chimney(n, big_n, &ratio(1, 3), &Rat::zero(), &lim).unwrap();
        let z = zero_layers(&c, 2).unwrap();
        let term = formula_zero_layer_term(n as u64, big_n as u64).unwrap();
        ok &= BigInt::from(z) >= term;
        notes.push(format!("zero layers ({n},{big_n}) {z} >= {term}"));
    }
    for k in 1..=4u32 {
        let f = formula_pratt(k).unwrap();
        let brute = BigInt::from(even_symdiff_brute(k, &lim).unwrap());
        let closed = even_symdiff_count(k).unwrap();
        let c = pratt_chimney(k, &lim).unwrap();
        let zl = BigInt::from(zero_layers(&c, 2).unwrap());
        let total = num_traits::pow(BigInt::from(8), k as usize);
        ok &= f == brute && f == closed && &total - &zl == f;
    }
    ok &= formula_pratt(1).unwrap() == BigInt::from(4) && formula_pratt(2).unwrap() == BigInt::from(31);
    notes.push("Pratt formula = symmetric-difference count = 8^k - zero layers for k <= 4".into());
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 120.0;
    notes.push(format!("{secs:.2}s"));
    (ok, notes.join("; "))
}

fn criterion_9() -> Outcome {
    let dims: Vec<BigInt> = (0..=9).map(|i| binomial(9, i)).collect();
    let v = veronese_dims(&dims, 3).unwrap();
    let want: Vec<BigInt> = [1, 84, 84, 1].into_iter().map(BigInt::from).collect();
    (v == want, format!("{v:?}"))
}

fn criterion_10() -> Outcome {
    let r = verify_main_theorem(&p("x0*x3+x1^2+x2^2"), "x0", 1, &Limits::default()).unwrap();
    let noted = r.note.contains("not computed");
    (
        noted,
        "smoothability, border and Waring ranks, omega < 2.38 and probabilistic restrictions are out of scope; reports say so".into(),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("apolar dimensions", criterion_1),
        ("catalecticant ranks", criterion_2),
        ("twist theorem", criterion_3),
        ("tautological apolarity", criterion_4),
        ("encompassing equivalences", criterion_5),
        ("extension construction", criterion_6),
        ("tensor constructions", criterion_7),
        ("sweet pieces", criterion_8),
        ("veronese", criterion_9),
        ("out-of-scope statements recorded", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        failed += !ok as usize;
        println!("criterion {:>2} {:<34} {}  {detail}", i + 1, name, if ok { "PASS" } else { "FAIL" });
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
