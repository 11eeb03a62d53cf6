//! Integration tests for linear boundary problems: Wronskians, right
//! inverses by variation of constants, Green's operators with initial
//! conditions, the companion system and the matrix/scalar isomorphism.

use intdiff::odes::{
    companion_right_inverse, first_order_operator, green_first_order, green_scalar, initial_conditions, initial_matrix, is_right_inverse,
    matrix_to_scalar, pairwise_wronskians, right_inverse_first_order, scalar_operator, scalar_to_matrix, variation_of_constants, wronskian,
    FirstOrderProblem, ScalarProblem,
};
use intdiff::opalg::{Nf, OpAlg, OpExpr};
use intdiff::ring::IdRing;
use intdiff::rings::{ExpPolyRing, LaurentLogRing, MatrixRing, PolyRing};
use intdiff::scalar::{q, qi};
use intdiff::Error;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn laurent_second_order() -> ScalarProblem<<LaurentLogRing as IdRing>::Elem, intdiff::Q> {
    let r = LaurentLogRing;
    let coeffs = vec![r.scale(&qi(2), &r.x_pow(-2)), r.scale(&qi(-2), &r.x_pow(-1))];
    ScalarProblem::new(&r, coeffs, vec![r.x(), r.x_pow(2)]).unwrap()
}

fn laurent_third_order() -> ScalarProblem<<LaurentLogRing as IdRing>::Elem, intdiff::Q> {
    let r = LaurentLogRing;
    let coeffs = vec![r.scale(&qi(-6), &r.x_pow(-3)), r.scale(&qi(6), &r.x_pow(-2)), r.scale(&qi(-3), &r.x_pow(-1))];
    ScalarProblem::new(&r, coeffs, vec![r.x(), r.x_pow(2), r.x_pow(3)]).unwrap()
}

fn exp_second_order() -> (OpAlg<ExpPolyRing>, ScalarProblem<<ExpPolyRing as IdRing>::Elem, intdiff::Q>) {
    let alg = OpAlg::new(ExpPolyRing::eval_at_zero());
    let r = alg.ring.clone();
    let p = ScalarProblem::new(&r, vec![r.constant(&qi(-1)), r.zero()], vec![r.exp(qi(1)), r.exp(qi(-1))]).unwrap();
    (alg, p)
}

#[test]
fn wronskian_examples() {
    let l = LaurentLogRing;
    assert_eq!(wronskian(&l, &[l.x(), l.x_pow(2)]).unwrap(), l.x_pow(2));
    assert_eq!(wronskian(&l, &[l.x(), l.x_pow(2), l.x_pow(3)]).unwrap(), l.scale(&qi(2), &l.x_pow(3)));
    let p = PolyRing;
    assert_eq!(wronskian(&p, &[p.one(), p.x()]).unwrap(), p.one());
    // Linearly dependent functions have vanishing Wronskian.
    assert!(p.is_zero(&wronskian(&p, &[p.x(), p.scale(&qi(3), &p.x())]).unwrap()));
    let m = MatrixRing::new(PolyRing, 2);
    assert!(matches!(wronskian(&m, &[m.one()]), Err(Error::CommutativeRequired)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// `W(W(f₁,fₙ),…,W(fₙ₋₁,fₙ)) = fₙ^{n−2}·W(f₁,…,fₙ)`.
    #[test]
    fn wronskians_of_pairs(seed in any::<u64>(), n in 2usize..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let l = LaurentLogRing;
        let corpus = l.corpus();
        let fs: Vec<_> = (0..n).map(|_| l.add(&corpus[rng.gen_range(0..corpus.len())], &l.sample(&mut rng, 1))).collect();
        let gs = pairwise_wronskians(&l, &fs).unwrap();
        let lhs = wronskian(&l, &gs).unwrap();
        let rhs = l.mul(&l.pow(&fs[n - 1], n as u32 - 2), &wronskian(&l, &fs).unwrap());
        prop_assert_eq!(lhs, rhs);

        let p = PolyRing;
        let fs: Vec<_> = (0..n).map(|_| p.sample(&mut rng, 3)).collect();
        let gs = pairwise_wronskians(&p, &fs).unwrap();
        prop_assert_eq!(wronskian(&p, &gs).unwrap(), p.mul(&p.pow(&fs[n - 1], n as u32 - 2), &wronskian(&p, &fs).unwrap()));
    }

    #[test]
    fn right_inverses_solve_the_equation(seed in any::<u64>()) {
        let alg = OpAlg::new(LaurentLogRing);
        let r = &alg.ring;
        let mut rng = StdRng::seed_from_u64(seed);
        for p in [laurent_second_order(), laurent_third_order()] {
            let l = scalar_operator(&alg, &p.coeffs);
            let h = variation_of_constants(&alg, &p).unwrap();
            let f = r.sample(&mut rng, 2);
            let u = alg.apply(&h, &f);
            // L·u computed directly from derivatives.
            let mut lu = r.derive_n(&u, p.order());
            for (k, a) in p.coeffs.iter().enumerate() {
                lu = r.add(&lu, &r.mul(a, &r.derive_n(&u, k)));
            }
            prop_assert_eq!(lu, f.clone());
            prop_assert_eq!(alg.apply(&l, &u), f);
        }
    }

    #[test]
    fn green_operators_meet_initial_conditions(seed in any::<u64>()) {
        let (alg, p) = exp_second_order();
        let r = &alg.ring;
        let g = green_scalar(&alg, &p).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let f = r.sample(&mut rng, 2);
        let u = alg.apply(&g, &f);
        prop_assert_eq!(r.sub(&r.derive_n(&u, 2), &u), f);
        prop_assert!(r.is_zero(&r.evaluate(&u)));
        prop_assert!(r.is_zero(&r.evaluate(&r.derive(&u))));
    }
}

#[test]
fn laurent_right_inverses() {
    let alg = OpAlg::new(LaurentLogRing);
    let r = &alg.ring;
    let p = laurent_second_order();
    let h = variation_of_constants(&alg, &p).unwrap();
    let expected = alg.product(&[alg.coeff(&r.x()), alg.i()]).neg().add(&alg.product(&[alg.coeff(&r.x_pow(2)), alg.i(), alg.coeff(&r.x_pow(-1))]));
    assert_eq!(h, expected);
    assert!(is_right_inverse(&alg, &scalar_operator(&alg, &p.coeffs), &h));
    // E x = E x² = 0, so the initial value matrix is singular.
    assert!(matches!(green_scalar(&alg, &p), Err(Error::InitialMatrixInvalid)));

    let p3 = laurent_third_order();
    let h3 = variation_of_constants(&alg, &p3).unwrap();
    let half = q(1, 2);
    let expected = alg
        .product(&[alg.coeff(&r.scale(&half, &r.x_pow(3))), alg.i(), alg.coeff(&r.x_pow(-1))])
        .sub(&alg.product(&[alg.coeff(&r.x_pow(2)), alg.i()]))
        .add(&alg.product(&[alg.coeff(&r.scale(&half, &r.x())), alg.i(), alg.coeff(&r.x())]));
    assert_eq!(h3, expected);
    let route = companion_right_inverse(&alg, &p3).unwrap();
    assert!(route.matrix_is_right_inverse && route.entry_is_right_inverse && route.derivative_column && route.matches_direct);
    assert_eq!(route.last_column[0], h3);
}

#[test]
fn first_order_problems() {
    let alg = OpAlg::new(LaurentLogRing);
    let r = &alg.ring;
    let p = FirstOrderProblem::new(r, r.neg(&r.x_pow(-1)), r.x()).unwrap();
    let h = right_inverse_first_order(&alg, &p).unwrap();
    assert_eq!(h, alg.product(&[alg.coeff(&r.x()), alg.i(), alg.coeff(&r.x_pow(-1))]));
    assert!(is_right_inverse(&alg, &first_order_operator(&alg, &p.a), &h));
    // The evaluation keeps the constant term only, so E x = 0 and no initial
    // condition at the evaluation can be imposed.
    assert!(r.is_zero(&r.evaluate(&r.x())));
    assert!(matches!(green_first_order(&alg, &p), Err(Error::EzNotInvertible)));

    let e = OpAlg::new(ExpPolyRing::eval_at_zero());
    let er = &e.ring;
    let p = FirstOrderProblem::new(er, er.constant(&qi(-3)), er.exp(qi(3))).unwrap();
    let g = green_first_order(&e, &p).unwrap();
    assert!(is_right_inverse(&e, &first_order_operator(&e, &p.a), &g));
    assert_eq!(initial_conditions(&e, &g, 1), vec![true]);
    assert!(matches!(FirstOrderProblem::new(er, er.zero(), er.exp(qi(1))), Err(Error::InvalidProblem(_))));
}

#[test]
fn matrix_first_order_system() {
    let inner = ExpPolyRing::eval_at_zero();
    let mr = MatrixRing::new(inner.clone(), 2);
    let alg = OpAlg::new(mr.clone());
    let (one, zero) = (inner.one(), inner.zero());
    let x = inner.monomial(qi(0), 1, qi(1));
    let a = mr.from_rows(vec![vec![inner.neg(&one), inner.neg(&one)], vec![zero.clone(), inner.neg(&one)]]).unwrap();
    let ex = inner.exp(qi(1));
    let emx = inner.exp(qi(-1));
    let z = mr.from_rows(vec![vec![ex.clone(), inner.mul(&ex, &x)], vec![zero.clone(), ex.clone()]]).unwrap();
    let z_inv = mr.from_rows(vec![vec![emx.clone(), inner.neg(&inner.mul(&emx, &x))], vec![zero.clone(), emx.clone()]]).unwrap();
    assert_eq!(mr.mul(&z, &z_inv), mr.one());
    assert_eq!(mr.invert(&z), Some(z_inv.clone()));
    let p = FirstOrderProblem::with_inverses(&mr, a.clone(), z, Some(z_inv), Some(mr.one())).unwrap();
    let l = first_order_operator(&alg, &a);
    let h = right_inverse_first_order(&alg, &p).unwrap();
    assert!(is_right_inverse(&alg, &l, &h));
    let g = green_first_order(&alg, &p).unwrap();
    assert!(is_right_inverse(&alg, &l, &g));
    assert!(alg.mul(&alg.e(), &g).is_zero());
    assert_eq!(initial_conditions(&alg, &g, 1), vec![true]);
}

#[test]
fn green_operators_of_higher_order() {
    let (alg, p) = exp_second_order();
    assert_eq!(initial_matrix(&alg.ring, &p.zs).unwrap(), vec![vec![q(1, 2), q(1, 2)], vec![q(1, 2), q(-1, 2)]]);
    let g = green_scalar(&alg, &p).unwrap();
    assert!(is_right_inverse(&alg, &scalar_operator(&alg, &p.coeffs), &g));
    assert_eq!(initial_conditions(&alg, &g, 2), vec![true, true]);

    let palg = OpAlg::new(PolyRing);
    let r = &palg.ring;
    let p = ScalarProblem::new(r, vec![r.zero(), r.zero(), r.zero()], vec![r.one(), r.x(), r.monomial(2, q(1, 2))]).unwrap();
    let g = green_scalar(&palg, &p).unwrap();
    assert_eq!(g, palg.pow(&palg.i(), 3));
    assert_eq!(initial_conditions(&palg, &g, 3), vec![true, true, true]);
}

fn random_scalar_matrix(salg: &OpAlg<PolyRing>, rng: &mut StdRng, n: usize) -> Vec<Vec<Nf<PolyRing>>> {
    let r = &salg.ring;
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let len = rng.gen_range(0..=3);
                    let word: Vec<OpExpr<_>> = (0..len)
                        .map(|_| match rng.gen_range(0..4) {
                            0 => OpExpr::d(),
                            1 => OpExpr::i(),
                            2 => OpExpr::e(),
                            _ => OpExpr::Coeff(r.sample(rng, 1)),
                        })
                        .collect();
                    if rng.gen_bool(0.2) {
                        Nf::<PolyRing>::zero()
                    } else {
                        salg.normalize(&OpExpr::Prod(word))
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(salg: &OpAlg<PolyRing>, a: &[Vec<Nf<PolyRing>>], b: &[Vec<Nf<PolyRing>>]) -> Vec<Vec<Nf<PolyRing>>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(Nf::<PolyRing>::zero(), |acc, k| acc.add(&salg.mul(&a[i][k], &b[k][j])))).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn matrix_scalar_isomorphism(seed in any::<u64>(), n in 2usize..4) {
        let salg = OpAlg::new(PolyRing);
        let malg = OpAlg::new(MatrixRing::new(PolyRing, n));
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_scalar_matrix(&salg, &mut rng, n);
        let b = random_scalar_matrix(&salg, &mut rng, n);
        let pa = scalar_to_matrix(&malg, &salg, &a).unwrap();
        let pb = scalar_to_matrix(&malg, &salg, &b).unwrap();
        prop_assert_eq!(matrix_to_scalar(&malg, &salg, &pa).unwrap(), a.clone());
        prop_assert_eq!(scalar_to_matrix(&malg, &salg, &mat_mul(&salg, &a, &b)).unwrap(), malg.mul(&pa, &pb));
        prop_assert_eq!(matrix_to_scalar(&malg, &salg, &malg.mul(&pa, &pb)).unwrap(), mat_mul(&salg, &a, &b));
    }
}
