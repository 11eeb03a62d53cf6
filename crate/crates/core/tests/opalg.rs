//! Integration tests for the operator ring: normal forms, the rewrite rules
//! as operator identities, order independence, the action on the ring,
//! equational proofs and integral elimination.

use intdiff::opalg::{Env, Nf, OpAlg, OpExpr, Proof, Strategy};
use intdiff::ring::IdRing;
use intdiff::rings::{ExpPolyRing, HurwitzRing, LaurentLogRing, MatrixRing, PolyRing, ShiftedPolyRing};
use intdiff::scalar::{qi, Q};
use intdiff::syntax::parse_elem;
use intdiff::Error;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn c<E>(f: E) -> OpExpr<E> {
    OpExpr::Coeff(f)
}
fn prod<E>(v: Vec<OpExpr<E>>) -> OpExpr<E> {
    OpExpr::Prod(v)
}
fn sum<E>(v: Vec<OpExpr<E>>) -> OpExpr<E> {
    OpExpr::Sum(v)
}
fn neg<R: IdRing>(r: &R, e: OpExpr<R::Elem>) -> OpExpr<R::Elem> {
    prod(vec![c(r.neg(&r.one())), e])
}

/// The rewrite rules as pairs of unreduced expressions `(lhs, rhs)`.
fn rule_identities<R: IdRing>(r: &R, f: &R::Elem) -> Vec<(&'static str, OpExpr<R::Elem>, OpExpr<R::Elem>)> {
    let (d, i, e) = (OpExpr::d, OpExpr::i, OpExpr::e);
    let int_f = r.integrate(f);
    let int_1 = r.integrate(&r.one());
    vec![
        ("∂f", prod(vec![d(), c(f.clone())]), sum(vec![prod(vec![c(f.clone()), d()]), c(r.derive(f))])),
        ("∂E", prod(vec![d(), e()]), c(r.zero())),
        ("∂∫", prod(vec![d(), i()]), c(r.one())),
        ("EfE", prod(vec![e(), c(f.clone()), e()]), prod(vec![c(r.evaluate(f)), e()])),
        ("EE", prod(vec![e(), e()]), e()),
        ("E∫", prod(vec![e(), i()]), c(r.zero())),
        (
            "∫f∂",
            prod(vec![i(), c(f.clone()), d()]),
            sum(vec![c(f.clone()), neg(r, prod(vec![e(), c(f.clone())])), neg(r, prod(vec![i(), c(r.derive(f))]))]),
        ),
        ("∫fE", prod(vec![i(), c(f.clone()), e()]), prod(vec![c(int_f.clone()), e()])),
        (
            "∫f∫",
            prod(vec![i(), c(f.clone()), i()]),
            sum(vec![
                prod(vec![c(int_f.clone()), i()]),
                neg(r, prod(vec![i(), c(int_f.clone())])),
                neg(r, prod(vec![e(), c(int_f), i()])),
            ]),
        ),
        ("∫∂", prod(vec![i(), d()]), sum(vec![c(r.one()), neg(r, e())])),
        ("∫E", prod(vec![i(), e()]), prod(vec![c(int_1.clone()), e()])),
        (
            "∫∫",
            prod(vec![i(), i()]),
            sum(vec![
                prod(vec![c(int_1.clone()), i()]),
                neg(r, prod(vec![i(), c(int_1.clone())])),
                neg(r, prod(vec![e(), c(int_1), i()])),
            ]),
        ),
    ]
}

/// Checks every rewrite rule by the prover and by its action on random
/// elements.
fn rules_hold<R: IdRing>(alg: &OpAlg<R>, seed: u64) {
    let r = &alg.ring;
    let mut rng = StdRng::seed_from_u64(seed);
    let f = r.sample(&mut rng, 2);
    for (name, lhs, rhs) in rule_identities(r, &f) {
        assert!(alg.prove_equal(&lhs, &rhs).is_equal(), "{name} with f = {}", r.format(&f));
        for _ in 0..3 {
            let g = r.sample(&mut rng, 2);
            assert_eq!(alg.apply_expr(&lhs, &g), alg.apply_expr(&rhs, &g), "{name} acting on {}", r.format(&g));
        }
    }
}

fn random_expr<R: IdRing>(r: &R, rng: &mut StdRng, size: usize) -> OpExpr<R::Elem> {
    let terms = rng.gen_range(1..=2);
    sum((0..terms)
        .map(|_| {
            let len = rng.gen_range(1..=size);
            prod((0..len)
                .map(|_| match rng.gen_range(0..5) {
                    0 => OpExpr::d(),
                    1 | 2 => OpExpr::i(),
                    3 => OpExpr::e(),
                    _ => c(r.sample(rng, 1)),
                })
                .collect())
        })
        .collect())
}

fn order_independent<R: IdRing>(alg: &OpAlg<R>, seed: u64, strategies: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let e = random_expr(&alg.ring, &mut rng, 5);
    let reference = alg.normalize(&e);
    for s in 0..strategies {
        assert_eq!(alg.normalize_with(&e, Strategy::Random(seed ^ (s * 7919)), None), reference);
    }
}

fn action_compatible<R: IdRing>(alg: &OpAlg<R>, seed: u64) {
    let r = &alg.ring;
    let mut rng = StdRng::seed_from_u64(seed);
    let e = random_expr(r, &mut rng, 5);
    let nf = alg.normalize(&e);
    for _ in 0..3 {
        let f = r.sample(&mut rng, 2);
        assert_eq!(alg.apply(&nf, &f), alg.apply_expr(&e, &f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rewrite_rules_are_identities(seed in any::<u64>()) {
        rules_hold(&OpAlg::new(PolyRing), seed);
        rules_hold(&OpAlg::new(LaurentLogRing), seed);
        rules_hold(&OpAlg::new(ExpPolyRing::recursive()), seed);
        rules_hold(&OpAlg::new(ShiftedPolyRing::new(qi(2))), seed);
        rules_hold(&OpAlg::new(MatrixRing::new(PolyRing, 2)), seed);
    }

    #[test]
    fn normal_forms_do_not_depend_on_the_strategy(seed in any::<u64>()) {
        order_independent(&OpAlg::new(LaurentLogRing), seed, 8);
        order_independent(&OpAlg::new(ExpPolyRing::recursive()), seed, 4);
        order_independent(&OpAlg::new(MatrixRing::new(PolyRing, 2)), seed, 4);
    }

    #[test]
    fn normal_forms_act_like_their_expressions(seed in any::<u64>()) {
        action_compatible(&OpAlg::new(PolyRing), seed);
        action_compatible(&OpAlg::new(LaurentLogRing), seed);
        action_compatible(&OpAlg::new(ExpPolyRing::recursive()), seed);
        action_compatible(&OpAlg::new(HurwitzRing::<Q>::new(40)), seed);
        action_compatible(&OpAlg::new(MatrixRing::new(LaurentLogRing, 2)), seed);
    }

    #[test]
    fn multiplication_is_associative_and_agrees_with_the_action(seed in any::<u64>()) {
        let alg = OpAlg::new(LaurentLogRing);
        let r = &alg.ring;
        let mut rng = StdRng::seed_from_u64(seed);
        let a = alg.normalize(&random_expr(r, &mut rng, 3));
        let b = alg.normalize(&random_expr(r, &mut rng, 3));
        let cc = alg.normalize(&random_expr(r, &mut rng, 3));
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &cc), alg.mul(&a, &alg.mul(&b, &cc)));
        prop_assert_eq!(alg.mul(&alg.one(), &a), a.clone());
        prop_assert_eq!(alg.mul(&a, &alg.one()), a.clone());
        let f = r.sample(&mut rng, 2);
        prop_assert_eq!(alg.apply(&alg.mul(&a, &b), &f), alg.apply(&a, &alg.apply(&b, &f)));
    }

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>()) {
        let alg = OpAlg::new(LaurentLogRing);
        let mut rng = StdRng::seed_from_u64(seed);
        let nf = alg.normalize(&random_expr(&alg.ring, &mut rng, 5));
        let again = alg.nf(&alg.format(&nf)).unwrap();
        prop_assert_eq!(again, nf);
    }

    #[test]
    fn constants_commute_with_operators(seed in any::<u64>(), k in -4i64..5) {
        let alg = OpAlg::new(LaurentLogRing);
        let mut rng = StdRng::seed_from_u64(seed);
        let l = alg.normalize(&random_expr(&alg.ring, &mut rng, 4));
        let cst = alg.coeff(&alg.ring.constant(&qi(k)));
        prop_assert_eq!(alg.mul(&cst, &l), alg.mul(&l, &cst));
    }

    #[test]
    fn multiplicative_evaluation_collapses_initial_terms(seed in any::<u64>()) {
        let alg = OpAlg::multiplicative(PolyRing);
        let mut rng = StdRng::seed_from_u64(seed);
        let nf = alg.normalize(&random_expr(&alg.ring, &mut rng, 5));
        // Only f·∂ʲ, f·∫·g and f·E·∂ʲ remain.
        use intdiff::opalg::Item;
        let one = alg.ring.one();
        for (_, w) in alg.words(&nf) {
            if let Some(p) = w.iter().position(|x| matches!(x, Item::P(_))) {
                prop_assert!(
                    w[p + 1..].iter().all(|x| matches!(x, Item::D) || *x == Item::C(one.clone())),
                    "{}", alg.format(&nf)
                );
            }
        }
    }

    #[test]
    fn decomposition_sums_back(seed in any::<u64>()) {
        let alg = OpAlg::new(LaurentLogRing);
        let mut rng = StdRng::seed_from_u64(seed);
        let nf = alg.normalize(&random_expr(&alg.ring, &mut rng, 5));
        let (d, i, e) = nf.decompose();
        prop_assert!(d.is_differential());
        prop_assert!(e.is_initial() || e.is_zero());
        prop_assert_eq!(d.add(&i).add(&e), nf);
    }
}

#[test]
fn normal_form_examples() {
    let p = OpAlg::new(PolyRing);
    assert_eq!(p.nf("d*x").unwrap(), p.nf("x*d + 1").unwrap());
    assert_eq!(p.format(&p.nf("d*x").unwrap()), "1 + x*d");
    assert!(p.nf("e*i").unwrap().is_zero());
    assert_eq!(p.format(&p.nf("i*d").unwrap()), "1 - e");
    assert_eq!(p.nf("d*i").unwrap(), p.one());
    assert_eq!(p.nf("e*e").unwrap(), p.e());

    let l = OpAlg::new(LaurentLogRing);
    let expected = l.nf("(-x^-1)*i - i*(-x^-1) - e*(-x^-1)*i").unwrap();
    assert_eq!(l.nf("i*x^-2*i").unwrap(), expected);
    assert_eq!(l.nf("(i*x^-2)*d").unwrap(), l.nf("x^-2 - e*x^-2 - i*(-2*x^-3)").unwrap());
}

#[test]
fn decomposition_examples() {
    let l = OpAlg::new(LaurentLogRing);
    let (d, i, e) = l.nf("1 - e").unwrap().decompose();
    assert_eq!((d, i.is_zero(), e), (l.one(), true, l.e().neg()));
    let (d, i, e) = l.nf("x*d^2 + i*x^-1").unwrap().decompose();
    assert_eq!((d, i, e.is_zero()), (l.nf("x*d^2").unwrap(), l.nf("i*x^-1").unwrap(), true));
    let (d, i, e) = l.nf("i*x^-1*d").unwrap().decompose();
    assert_eq!(d, l.nf("x^-1").unwrap());
    assert_eq!(i, l.nf("i*x^-2").unwrap());
    assert_eq!(e, l.nf("-e*x^-1").unwrap());
}

#[test]
fn action_examples() {
    let l = OpAlg::new(LaurentLogRing);
    let r = &l.ring;
    let f = parse_elem(r, "3 + 2*x^-1 + 5*ln(x)").unwrap();
    assert_eq!(l.apply(&l.e(), &f), r.constant(&qi(3)));
    assert_eq!(l.apply(&l.nf("i*d").unwrap(), &r.ln()), r.ln());
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10 {
        let g = r.sample(&mut rng, 3);
        assert_eq!(l.apply(&l.nf("d*i").unwrap(), &g), g);
    }
}

#[test]
fn equational_proofs() {
    let l = OpAlg::new(LaurentLogRing);
    let mut env = Env::new();
    env.elems.insert("f".to_string(), l.ring.x_pow(-1));
    let lhs = l.parse("i*f*d", &env).unwrap();
    let rhs = l.parse("f - e*f - i*(D f)", &env).unwrap();
    assert!(l.prove_equal(&lhs, &rhs).is_equal());
    let rb = (l.parse("i*i", &env).unwrap(), l.parse("I1*i - i*I1 - e*I1*i", &env).unwrap());
    assert!(l.prove_equal(&rb.0, &rb.1).is_equal());
    match l.prove_equal(&l.parse("d*i", &env).unwrap(), &l.parse("i*d", &env).unwrap()) {
        Proof::Unequal { witness } => assert_eq!(witness, l.e()),
        Proof::Equal => panic!("∂∫ and ∫∂ differ"),
    }
}

#[test]
fn functionals_beyond_evaluation() {
    let mut alg = OpAlg::new(PolyRing);
    let r = alg.ring.clone();
    let at1 = alg.add_functional("at1", std::sync::Arc::new(move |f: &_| r.constant(&r.eval_at(f, &qi(1)))), true).unwrap();
    let phi = alg.phi(at1);
    // ∂·φ = 0 and ∫·φ = ∫1·φ
    assert!(alg.mul(&alg.d(), &phi).is_zero());
    assert_eq!(alg.mul(&alg.i(), &phi), alg.mul(&alg.coeff(&alg.ring.x()), &phi));
    // a multiplicative functional absorbs coefficients
    let x2 = alg.coeff(&alg.ring.monomial(2, qi(1)));
    assert_eq!(alg.mul(&phi, &x2), phi);
    assert_eq!(alg.nf("phi:at1*x^2*e").unwrap(), alg.e());
}

#[test]
fn integral_elimination() {
    let p = OpAlg::new(PolyRing);
    let l = p.nf("i*(1 + x)").unwrap();
    let out = p.eliminate_integrals_left(&l).unwrap();
    assert_eq!(out.factors, vec![p.ring.one()]);
    assert_eq!(out.result, p.nf("1 + x").unwrap());
    let diff = p.nf("x*d^2 + 1").unwrap();
    let out = p.eliminate_integrals_left(&diff).unwrap();
    assert!(out.factors.is_empty());
    assert_eq!(out.result, diff);
    assert!(matches!(p.eliminate_integrals_left(&p.e()), Err(Error::IsInitialOperator)));

    let l = OpAlg::new(LaurentLogRing);
    let op = l.nf("x*i*x^-1 + d").unwrap();
    let out = l.eliminate_integrals_left(&op).unwrap();
    let factor = l.nf("x*d - 1").unwrap();
    assert_eq!(l.mul(&factor, &op), out.result);
    assert!(out.result.is_differential());

    let ed = p.nf("e*d").unwrap();
    let out = p.eliminate_integrals_right(&ed).unwrap();
    assert!(out.factors.is_empty());
    assert_eq!(out.result, ed);
    let op = p.nf("e*x*i").unwrap();
    let out = p.eliminate_integrals_right(&op).unwrap();
    assert_eq!(out.result, p.mul(&p.e(), &out.differential));
    assert!(!out.differential.is_zero() && out.differential.is_differential());

    let (k, f) = p.extract_fe(&p.nf("d^2").unwrap()).unwrap();
    assert_eq!((k, f), (2, p.ring.one()));
    let (k, f) = p.extract_fe(&p.nf("3").unwrap()).unwrap();
    assert_eq!((k, f), (0, p.ring.constant(&qi(3))));
    let lx = p.nf("x*d + x^2").unwrap();
    let (k, f) = p.extract_fe(&lx).unwrap();
    assert_eq!(k, 0);
    assert_eq!(p.product(&[lx, p.e()]), p.mul(&p.coeff(&f), &p.e()));
    assert!(matches!(p.extract_fe(&Nf::<PolyRing>::zero()), Err(Error::ZeroOperator)));

    let m = OpAlg::new(MatrixRing::new(PolyRing, 2));
    assert!(matches!(m.eliminate_integrals_left(&m.i()), Err(Error::DomainRequired)));
}

#[test]
fn canonical_json_lists_three_parts() {
    let l = OpAlg::new(LaurentLogRing);
    let v = l.to_json(&l.nf("x*d + i*x^-1 - e*x*i").unwrap());
    assert_eq!(v["differential"].as_array().unwrap().len(), 1);
    assert_eq!(v["integral"].as_array().unwrap().len(), 1);
    assert_eq!(v["initial"].as_array().unwrap().len(), 1);
}
