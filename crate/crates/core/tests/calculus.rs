//! Integration tests for shuffles, nested and repeated integrals, the
//! Rota-Baxter identities and the Taylor formula.

use std::collections::BTreeMap;

use intdiff::calculus::{
    c_mn, c_mn_by_recursion, generalized_shuffle_expand, nested_integral, repeated_integral_operator, rota_baxter_check, shuffle, taylor_first,
    taylor_operator_identity, taylor_parts, x_n, x_n_by_powers, ShuffleTensor,
};
use intdiff::opalg::OpAlg;
use intdiff::ring::IdRing;
use intdiff::rings::{HurwitzRing, LaurentLogRing, PolyRing, ShiftedPolyRing};
use intdiff::scalar::{binomial, factorial, qi, Scalar, Zp, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Rank of the coordinate vectors of `elems`, by Gaussian elimination.
fn rank<R: IdRing>(ring: &R, elems: &[R::Elem]) -> usize {
    let mut rows: Vec<BTreeMap<R::Key, R::Scalar>> = elems.iter().map(|e| ring.coords(e).into_iter().collect()).collect();
    let mut rank = 0;
    while let Some(pos) = rows.iter().position(|r| !r.is_empty()) {
        let pivot = rows.swap_remove(pos);
        let (k, c) = pivot.iter().next().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let inv = c.inv().expect("field");
        for row in rows.iter_mut() {
            if let Some(d) = row.get(&k).cloned() {
                let factor = d * inv.clone();
                for (k2, c2) in &pivot {
                    let v = row.get(k2).cloned().unwrap_or_else(R::Scalar::zero) - factor.clone() * c2.clone();
                    if v.is_zero() {
                        row.remove(k2);
                    } else {
                        row.insert(k2.clone(), v);
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn shuffles_of_distinct_letters_are_all_interleavings() {
    for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)] {
        let a: Vec<u32> = (0..m).collect();
        let b: Vec<u32> = (10..10 + n).collect();
        let s: ShuffleTensor<u32, Q> = shuffle(&a, &b);
        assert_eq!(qi(s.len() as i64), binomial::<Q>(m as usize + n as usize, m as usize));
        for (c, w) in s.terms() {
            assert!(c.is_one());
            // Each word keeps the relative order of both inputs.
            let left: Vec<u32> = w.iter().copied().filter(|x| *x < 10).collect();
            let right: Vec<u32> = w.iter().copied().filter(|x| *x >= 10).collect();
            assert_eq!((left, right), (a.clone(), b.clone()));
        }
    }
    let s: ShuffleTensor<char, Q> = shuffle(&['a'], &['a']);
    assert_eq!(s.terms(), &[(qi(2), vec!['a', 'a'])]);
}

fn word(rng: &mut StdRng, corpus: &[<LaurentLogRing as IdRing>::Elem], max: usize) -> Vec<<LaurentLogRing as IdRing>::Elem> {
    let len = rng.gen_range(1..=max);
    (0..len).map(|_| corpus[rng.gen_range(0..corpus.len())].clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn shuffle_is_commutative_and_associative(seed in any::<u64>()) {
        let l = LaurentLogRing;
        let corpus = l.corpus();
        let mut rng = StdRng::seed_from_u64(seed);
        let (a, b, c) = (word(&mut rng, &corpus, 2), word(&mut rng, &corpus, 2), word(&mut rng, &corpus, 2));
        let (ta, tb, tc) = (ShuffleTensor::<_, Q>::word(a.clone()), ShuffleTensor::word(b.clone()), ShuffleTensor::word(c));
        prop_assert_eq!(ta.shuffle(&tb).coords(&l), tb.shuffle(&ta).coords(&l));
        prop_assert_eq!(ta.shuffle(&tb).shuffle(&tc).coords(&l), ta.shuffle(&tb.shuffle(&tc)).coords(&l));
    }

    #[test]
    fn shuffle_is_the_product_of_nested_polynomial_integrals(seed in any::<u64>()) {
        let p = PolyRing;
        let mut rng = StdRng::seed_from_u64(seed);
        let mut w = || -> Vec<_> { (0..rng.gen_range(1..=3)).map(|_| p.sample(&mut rng, 2)).collect() };
        let (f, g) = (w(), w());
        let prod = p.mul(&nested_integral(&p, &f), &nested_integral(&p, &g));
        prop_assert_eq!(shuffle::<_, Q>(&f, &g).evaluate(&p), prod.clone());
        prop_assert!(generalized_shuffle_expand(&p, &f, &g).unwrap().eval_terms.is_empty());
    }
}

#[test]
fn generalized_shuffle_on_laurent_words() {
    let l = LaurentLogRing;
    let corpus = l.corpus();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut with_terms = 0;
    for _ in 0..250 {
        let f = word(&mut rng, &corpus, 3);
        let g = word(&mut rng, &corpus, 3);
        let gs = generalized_shuffle_expand(&l, &f, &g).unwrap();
        let lhs = l.mul(&nested_integral(&l, &f), &nested_integral(&l, &g));
        assert_eq!(gs.evaluate(&l), lhs);
        with_terms += usize::from(!gs.eval_terms.is_empty());
    }
    assert!(with_terms > 0);
}

#[test]
fn repeated_integrals_are_independent() {
    let p = PolyRing;
    let xs: Vec<_> = (0..=6).map(|n| x_n(&p, n)).collect();
    assert_eq!(rank(&p, &xs), 7);
    let h = HurwitzRing::<Zp<5>>::new(8);
    let xs: Vec<_> = (0..=6).map(|n| x_n(&h, n)).collect();
    assert_eq!(rank(&h, &xs), 7);
    let s = ShiftedPolyRing::new(qi(1));
    let xs: Vec<_> = (0..=6).map(|n| x_n(&s, n)).collect();
    assert_eq!(rank(&s, &xs), 7);
    // Products stay in the span of x_0, …, x_{m+n}.
    for m in 0..=3 {
        for n in 0..=3 {
            let mut span: Vec<_> = (0..=m + n).map(|k| x_n(&s, k)).collect();
            span.push(s.mul(&x_n(&s, m), &x_n(&s, n)));
            assert_eq!(rank(&s, &span), m + n + 1);
        }
    }
}

fn divided_powers<R: IdRing>(ring: &R, bound: usize) {
    for m in 0..=bound {
        for n in 0..=bound - m {
            let lhs = ring.mul(&x_n(ring, m), &x_n(ring, n));
            assert_eq!(lhs, ring.scale(&binomial::<R::Scalar>(m + n, m), &x_n(ring, m + n)), "x_{m}·x_{n}");
        }
    }
}

#[test]
fn products_of_repeated_integrals_with_multiplicative_evaluation() {
    divided_powers(&PolyRing, 8);
    divided_powers(&HurwitzRing::<Zp<5>>::new(12), 8);
    divided_powers(&HurwitzRing::<Q>::new(12), 8);
    let p = PolyRing;
    for n in 0..=6 {
        let inv = factorial::<Q>(n).inv().unwrap();
        assert_eq!(x_n(&p, n), p.monomial(n as u32, inv));
    }
}

#[test]
fn evaluation_constants_from_first_row() {
    let s = ShiftedPolyRing::new(qi(1));
    for m in 1..6 {
        for n in 1..=6 - m {
            assert_eq!(c_mn_by_recursion(&s, m, n).unwrap(), c_mn(&s, m, n), "c_{m},{n}");
        }
    }
    // c_{1,1} = E(x₁²) with E = 1 − ∫∂, and nonzero here.
    let x1 = x_n(&s, 1);
    let sq = s.mul(&x1, &x1);
    assert_eq!(c_mn(&s, 1, 1), s.sub(&sq, &s.integrate(&s.derive(&sq))));
    assert!(!s.is_zero(&c_mn(&s, 1, 1)));
    let l = LaurentLogRing;
    for m in 1..4 {
        for n in 1..4 {
            assert_eq!(c_mn_by_recursion(&l, m, n).unwrap(), c_mn(&l, m, n));
        }
    }
    assert!(c_mn_by_recursion(&HurwitzRing::<Zp<5>>::new(8), 1, 1).is_err());
}

#[test]
fn repeated_integrals_by_powers() {
    for shift in [0, 1, -3] {
        let s = ShiftedPolyRing::new(qi(shift));
        for n in 0..=6 {
            assert_eq!(x_n_by_powers(&s, n).unwrap(), x_n(&s, n), "shift {shift}, n = {n}");
        }
    }
    let l = LaurentLogRing;
    for n in 0..=5 {
        assert_eq!(x_n_by_powers(&l, n).unwrap(), x_n(&l, n));
    }
}

#[test]
fn rota_baxter_examples() {
    let p = PolyRing;
    let rep = rota_baxter_check(&p, &p.one(), &p.one());
    assert!(rep.with_evaluation && rep.classical && p.is_zero(&rep.e_term));
    assert_eq!(rep.lhs, p.monomial(2, qi(1)));

    let l = LaurentLogRing;
    let rep = rota_baxter_check(&l, &l.x_pow(-2), &l.one());
    assert_eq!(rep.e_term, l.constant(&qi(-1)));
    assert!(rep.with_evaluation && !rep.classical);
    let rep = rota_baxter_check(&l, &l.x(), &l.x_pow(-1));
    assert!(rep.classical && rep.hybrid_with_evaluation && !rep.hybrid_classical);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rota_baxter_with_evaluation_always_holds(seed in any::<u64>()) {
        let l = LaurentLogRing;
        let mut rng = StdRng::seed_from_u64(seed);
        let (f, g) = (l.sample(&mut rng, 3), l.sample(&mut rng, 3));
        let rep = rota_baxter_check(&l, &f, &g);
        prop_assert!(rep.with_evaluation && rep.hybrid_with_evaluation);
        prop_assert_eq!(rep.classical, l.is_zero(&rep.e_term));
        let s = ShiftedPolyRing::new(qi(2));
        let rep = rota_baxter_check(&s, &s.sample(&mut rng, 3), &s.sample(&mut rng, 3));
        prop_assert!(rep.with_evaluation && rep.hybrid_with_evaluation);
    }

    #[test]
    fn taylor_parts_sum_to_the_function(seed in any::<u64>(), n in 0usize..4) {
        let p = PolyRing;
        let mut rng = StdRng::seed_from_u64(seed);
        let f = p.sample(&mut rng, 4);
        let parts = taylor_parts(&p, &f, n).unwrap();
        prop_assert!(p.is_zero(&parts.correction));
        prop_assert_eq!(p.add(&parts.poly, &parts.remainder), f.clone());
        // The Taylor polynomial from the values of the derivatives at 0.
        let mut expected = p.zero();
        for k in 0..=n {
            let c = p.eval_at(&p.derive_n(&f, k), &Q::zero()) * factorial::<Q>(k).inv().unwrap();
            expected = p.add(&expected, &p.monomial(k as u32, c));
        }
        prop_assert_eq!(parts.poly, expected);

        let l = LaurentLogRing;
        let g = l.sample(&mut rng, 3);
        let parts = taylor_parts(&l, &g, n).unwrap();
        prop_assert_eq!(l.add(&l.add(&parts.poly, &parts.remainder), &parts.correction), g);
    }
}

#[test]
fn logarithm_needs_a_correction_term() {
    let l = LaurentLogRing;
    let parts = taylor_parts(&l, &l.ln(), 1).unwrap();
    assert!(l.is_zero(&parts.poly));
    assert_eq!(parts.remainder, l.add(&l.ln(), &l.one()));
    assert_eq!(parts.correction, l.constant(&qi(-1)));
}

#[test]
fn operator_taylor_formula() {
    let alg = OpAlg::new(LaurentLogRing);
    for n in 0..=3 {
        assert_eq!(taylor_first(&alg, n), alg.one());
        let (one, rhs) = taylor_operator_identity(&alg, n).unwrap();
        assert_eq!(one, rhs);
        assert_eq!(repeated_integral_operator(&alg, n).unwrap(), alg.pow(&alg.i(), n as u32 + 1));
    }
    let shifted = OpAlg::new(ShiftedPolyRing::new(qi(1)));
    assert!(taylor_operator_identity(&shifted, 1).is_err());
}
