//! Integration tests for the tensor reduction systems: ambiguity counts,
//! confluence of the completed systems, the defining rules, irreducible
//! words, and agreement with the operator normal forms.

use intdiff::opalg::{Item, OpAlg, OpExpr, Strategy};
use intdiff::ring::IdRing;
use intdiff::rings::{ExpPolyRing, LaurentLogRing, PolyRing};
use intdiff::tenred::{
    check_confluence, check_defining_rules, default_instances, enumerate_ambiguities, irreducible_words, AmbiguityKind, Engine, Letter,
    ReductionSystem, Slot, SystemName,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Terms<R> = Vec<(<R as IdRing>::Scalar, Vec<Slot<<R as IdRing>::Elem>>)>;

fn counts(name: SystemName) -> (usize, usize) {
    let ambs = enumerate_ambiguities(&ReductionSystem::named(name));
    let overlaps = ambs.iter().filter(|a| a.kind == AmbiguityKind::Overlap).count();
    (overlaps, ambs.len() - overlaps)
}

#[test]
fn ambiguity_counts() {
    assert_eq!(counts(SystemName::Diff), (2, 3));
    assert_eq!(counts(SystemName::Ido), (47, 7));
    assert_eq!(counts(SystemName::IdoPhi), (47, 7));
    assert_eq!(counts(SystemName::IdoPhiMult), (53, 9));
    assert_eq!(counts(SystemName::IdoPhiMultE), (53, 9));
    assert_eq!(counts(SystemName::IdoDefining), (10, 7));
}

#[test]
fn completed_systems_are_confluent() {
    let inst = default_instances();
    for name in [SystemName::Diff, SystemName::Ido, SystemName::IdoPhi, SystemName::IdoPhiMult, SystemName::IdoPhiMultE] {
        let rep = check_confluence(&ReductionSystem::named(name), &inst);
        let open: Vec<_> = rep.results.iter().filter(|r| !r.resolved).map(|r| r.description.clone()).collect();
        assert!(rep.all_resolved(), "{}: {open:?}", name.as_str());
        assert!(rep.results.iter().all(|r| r.checks > 0));
    }
}

#[test]
fn defining_systems_are_not_confluent_but_hold() {
    let inst = default_instances();
    for (def, done) in [(SystemName::IdoDefining, SystemName::Ido), (SystemName::IdoPhiDefining, SystemName::IdoPhi)] {
        let def = ReductionSystem::named(def);
        let rep = check_confluence(&def, &inst);
        assert!(!rep.all_resolved());
        assert!(rep.resolved() < rep.count());
        let holds = check_defining_rules(&def, &ReductionSystem::named(done), &inst);
        assert!(holds.all_equal(), "{:?}", holds.rules);
    }
}

#[test]
fn irreducible_words_match_their_description() {
    for name in [SystemName::Diff, SystemName::Ido, SystemName::IdoPhi, SystemName::IdoPhiMult, SystemName::IdoPhiMultE] {
        let sys = ReductionSystem::named(name);
        let rep = irreducible_words(&sys, 5);
        assert!(rep.matches(), "{}: {:?}", name.as_str(), rep.mismatches);
    }
    let ido = irreducible_words(&ReductionSystem::named(SystemName::Ido), 3);
    assert!(ido.words.contains(&vec![Letter::Rt, Letter::I, Letter::Rt]));
    assert!(ido.words.contains(&vec![Letter::E, Letter::Rt, Letter::D]));
    assert!(!ido.words.contains(&vec![Letter::E, Letter::I]));
    assert!(!ido.words.contains(&vec![Letter::I, Letter::I]));
    // Without the completion, words such as ∫⊗∫ stay irreducible.
    let def = irreducible_words(&ReductionSystem::named(SystemName::IdoDefining), 2);
    assert!(def.words.contains(&vec![Letter::I, Letter::I]));
    assert!(!def.matches());
}

/// Pure tensors of the product of split factors.
fn expand<R: IdRing>(factors: Vec<Terms<R>>) -> Terms<R> {
    factors.into_iter().fold(vec![(R::Scalar::one(), Vec::new())], |acc, f| {
        acc.iter()
            .flat_map(|(c, w)| {
                f.iter().map(move |(d, v)| {
                    let mut w2 = w.clone();
                    w2.extend(v.iter().cloned());
                    (c.clone() * d.clone(), w2)
                })
            })
            .collect()
    })
    .into_iter()
    .filter(|(c, _)| !c.is_zero())
    .collect()
}

enum Gen<E> {
    C(E),
    D,
    I,
    E,
}

fn random_word<R: IdRing>(r: &R, rng: &mut StdRng, len: usize) -> Vec<Gen<R::Elem>> {
    (0..len)
        .map(|_| match rng.gen_range(0..5) {
            0 => Gen::D,
            1 | 2 => Gen::I,
            3 => Gen::E,
            _ => Gen::C(r.sample(rng, 1)),
        })
        .collect()
}

fn to_tensor<R: IdRing>(eng: &Engine<R>, w: &[Gen<R::Elem>]) -> Terms<R> {
    let one = || R::Scalar::one();
    let factors = w
        .iter()
        .map(|g| match g {
            Gen::C(f) => eng.split(f),
            Gen::D => vec![(one(), vec![Slot::D])],
            Gen::I => vec![(one(), vec![Slot::I])],
            Gen::E => vec![(one(), vec![Slot::E])],
        })
        .collect();
    expand::<R>(factors)
}

fn nf_to_tensor<R: IdRing>(eng: &Engine<R>, alg: &OpAlg<R>, w: &[Gen<R::Elem>]) -> Terms<R> {
    let expr = OpExpr::Prod(
        w.iter()
            .map(|g| match g {
                Gen::C(f) => OpExpr::Coeff(f.clone()),
                Gen::D => OpExpr::d(),
                Gen::I => OpExpr::i(),
                Gen::E => OpExpr::e(),
            })
            .collect(),
    );
    let nf = alg.normalize(&expr);
    let one = || R::Scalar::one();
    alg.words(&nf)
        .into_iter()
        .flat_map(|(c, items)| {
            let mut factors = vec![vec![(c, Vec::new())]];
            for it in items {
                factors.push(match it {
                    Item::C(f) => eng.split(&f),
                    Item::D => vec![(one(), vec![Slot::D])],
                    Item::I => vec![(one(), vec![Slot::I])],
                    Item::P(_) => vec![(one(), vec![Slot::E])],
                });
            }
            expand::<R>(factors)
        })
        // A unit constant slot stands for the empty word.
        .map(|(c, w)| (c, w.into_iter().filter(|s| *s != Slot::K).collect()))
        .collect()
}

fn diamond<R: IdRing>(ring: R, seed: u64) {
    let eng = Engine::new(ring.clone());
    let sys = ReductionSystem::named(SystemName::Ido);
    let mut rng = StdRng::seed_from_u64(seed);
    let len = rng.gen_range(1..=6);
    let w = random_word(&ring, &mut rng, len);
    let terms = to_tensor(&eng, &w);
    let reference = eng.reduce(&sys, terms.clone(), Strategy::Leftmost, None);
    for s in 0..4u64 {
        assert_eq!(eng.reduce(&sys, terms.clone(), Strategy::Random(seed.wrapping_add(s)), None), reference);
    }
    // The operator normal form expands to the same irreducible tensor.
    let alg = OpAlg::new(ring);
    let from_nf = nf_to_tensor(&eng, &alg, &w);
    assert_eq!(eng.reduce(&sys, from_nf.clone(), Strategy::Leftmost, None), reference);
    assert_eq!(eng.canonical(&from_nf), reference);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_independent_of_the_strategy(seed in any::<u64>()) {
        diamond(PolyRing, seed);
        diamond(LaurentLogRing, seed);
        diamond(ExpPolyRing::recursive(), seed);
    }
}

#[test]
fn system_text_is_reloadable() {
    for name in SystemName::ALL {
        let sys = ReductionSystem::named(name);
        let back = ReductionSystem::from_text(&sys.name, &sys.to_text(), sys.alphabet.clone(), sys.e_in_phim).unwrap();
        assert_eq!(back, sys);
    }
}
