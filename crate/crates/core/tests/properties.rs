mod common;

use apolarium::apolar::*;
use apolarium::encompass::check_maximal_growth;
use apolarium::exact::{binomial, rank, rat, QMatrix, Rat};
use apolarium::poly::{apply, parse_poly_in, Monomial, Poly, VarSet};
use apolarium::sweet::*;
use apolarium::tensor3::{kronecker, Tensor3};
use apolarium::Limits;
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

fn vars(n: usize) -> VarSet {
    VarSet::numbered("x", n)
}

/// Random polynomial in `n` variables with degree at most `d`.
fn poly(n: usize, d: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec(0..=d, n), -4i64..=4);
    prop::collection::vec(term, 1..=max_terms).prop_map(move |ts| {
        let vs = vars(n);
        let mut f = Poly::zero(&vs);
        for (mut e, c) in ts {
            // cap the total degree
            while e.iter().sum::<u32>() > d {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            f.add_term(Monomial::new(e), rat(c));
        }
        f
    })
}

fn nonzero_poly(n: usize, d: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    poly(n, d, max_terms).prop_filter("nonzero", |f| !f.is_zero())
}

/// Homogeneous polynomial of degree `d`.
fn form(n: usize, d: u32) -> impl Strategy<Value = Poly> {
    poly(n, d, 5).prop_map(move |f| f.homogeneous_part(d))
}

fn matrix(r: usize, c: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
        .prop_map(|rows| QMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn display_parse_round_trip(f in poly(3, 4, 6)) {
        prop_assert_eq!(parse_poly_in(&f.to_string(), f.vars()).unwrap(), f);
    }

    #[test]
    fn partials_space_is_a_module(f in nonzero_poly(3, 4, 5)) {
        let ps = partials_space(&f).unwrap();
        let basis = ps.basis().to_vec();
        for b in &basis {
            for i in 0..f.arity() {
                let mut with = basis.clone();
                with.push(b.derivative(i));
                prop_assert_eq!(span_basis(with, f.vars()).len(), basis.len());
            }
        }
        prop_assert_eq!(hilbert_function(&f).unwrap().sum(), ps.dim());
    }

    #[test]
    fn apolarity_is_bilinear(
        s1 in poly(3, 3, 3), s2 in poly(3, 3, 3), f in poly(3, 4, 5), g in poly(3, 4, 5), c in -5i64..=5
    ) {
        prop_assert_eq!(apply(&(&s1 + &s2), &f).unwrap(), &apply(&s1, &f).unwrap() + &apply(&s2, &f).unwrap());
        prop_assert_eq!(apply(&s1, &(&f + &g)).unwrap(), &apply(&s1, &f).unwrap() + &apply(&s1, &g).unwrap());
        prop_assert_eq!(apply(&s1.scale(&rat(c)), &f).unwrap(), apply(&s1, &f).unwrap().scale(&rat(c)));
    }

    #[test]
    fn operators_compose(s1 in poly(2, 2, 3), s2 in poly(2, 2, 3), f in poly(2, 5, 5)) {
        let lhs = apply(&(&s1 * &s2), &f).unwrap();
        let rhs = apply(&s1, &apply(&s2, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twist_is_linear(f in form(3, 3), g in form(3, 3), c in -5i64..=5) {
        let tw = |h: &Poly| h.twist("x1").unwrap();
        prop_assert_eq!(tw(&(&f + &g)), &tw(&f) + &tw(&g));
        prop_assert_eq!(tw(&f.scale(&rat(c))), tw(&f).scale(&rat(c)));
    }

    #[test]
    fn extreme_degree_parts_multiply(f in nonzero_poly(3, 3, 4), g in nonzero_poly(3, 3, 4)) {
        let fg = &f * &g;
        prop_assert_eq!(fg.ldf().unwrap(), &f.ldf().unwrap() * &g.ldf().unwrap());
        prop_assert_eq!(fg.tdf().unwrap(), &f.tdf().unwrap() * &g.tdf().unwrap());
    }

    #[test]
    fn rank_ignores_transpose_and_row_order(m in matrix(4, 5), perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle()) {
        let r = rank(&m);
        prop_assert_eq!(rank(&m.transpose()), r);
        let rows = m.to_rows();
        let shuffled = QMatrix::from_rows(perm.iter().map(|&i| rows[i].clone()).collect()).unwrap();
        prop_assert_eq!(rank(&shuffled), r);
        prop_assert!(r <= 4);
    }

    #[test]
    fn powers_never_exceed_maximal_growth(f in nonzero_poly(2, 3, 4), d in 1u32..=3) {
        let g = check_maximal_growth(&f, d, &Limits::default()).unwrap();
        prop_assert!(g.lhs as u128 <= g.rhs);
    }

    #[test]
    fn annihilator_elements_kill(f in nonzero_poly(2, 4, 4)) {
        let deg = f.degree().unwrap();
        for g in annihilator_upto(&f, deg + 1).unwrap() {
            prop_assert!(apply(&g, &f).unwrap().is_zero());
        }
    }

    #[test]
    fn catalecticant_rank_is_symmetric(f in form(3, 4)) {
        prop_assume!(!f.is_zero());
        for k in 0..=4 {
            prop_assert_eq!(catalecticant_rank(&f, k).unwrap(), catalecticant_rank(&f, 4 - k).unwrap());
        }
    }

    #[test]
    fn tightness_survives_kronecker_powers(
        labels in prop::collection::vec((-2i64..=2, -2i64..=2), 2..=4),
        mask in prop::collection::vec(any::<bool>(), 64),
    ) {
        // axis 3 label forced to −(a1 + a2) on kept entries
        let n = labels.len();
        let l1: Vec<i64> = labels.iter().map(|x| x.0).collect();
        let l2: Vec<i64> = labels.iter().map(|x| x.1).collect();
        let mut l3 = vec![0i64; n];
        for (k, slot) in l3.iter_mut().enumerate() {
            *slot = -(l1[k % n] + l2[(k + 1) % n]);
        }
        let mut t = Tensor3::new([n, n, n]);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if l1[i] + l2[j] + l3[k] == 0 && mask[(i * n + j) * n + k] {
                        t.add([i, j, k], rat(1)).unwrap();
                    }
                }
            }
        }
        let b = Blocking::scalar([l1, l2, l3]);
        prop_assert!(is_tight(&t, &b).unwrap());
        let t2 = kronecker(&t, &t, &Limits::default()).unwrap();
        prop_assert!(is_tight(&t2, &b.kronecker(&b).unwrap()).unwrap());
    }

    #[test]
    fn marginals_are_distributions(weights in prop::collection::vec(0u32..5, 1..6)) {
        prop_assume!(weights.iter().any(|&w| w > 0));
        let total: u32 = weights.iter().sum();
        let support: Vec<[Label; 3]> = (0..weights.len() as i64).map(|i| [vec![i % 2], vec![i / 2], vec![-i]]).collect();
        let probs: Vec<Rat> = weights.iter().map(|&w| Rat::new(BigInt::from(w), BigInt::from(total))).collect();
        let p = BlockDistribution::new(support, probs).unwrap();
        for m in marginals(&p) {
            prop_assert!(m.values().sum::<Rat>().is_one());
        }
    }
}

#[test]
fn apolar_dimension_of_powers_matches_symmetric_powers_for_encompassing() {
    // Ap(f^d) ≅ S^d Ap(f) for encompassing f
    for s in ["x1^2+x2", "x1*x2+x3", "x1^2+x2^2+x3"] {
        let f = common::p(s);
        let ell = apolar_dim(&f).unwrap() as u64;
        for d in 1..=3u32 {
            let want = binomial(ell + d as u64 - 1, d as u64);
            assert_eq!(BigInt::from(apolar_dim(&f.pow(d)).unwrap()), want, "{s} d={d}");
        }
    }
}
