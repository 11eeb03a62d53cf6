//! Tensors with concrete slot payloads and their reduction.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::opalg::Strategy;
use crate::ring::{FunctionalFn, IdRing};

use super::letter::{format_word, order_key, Letter, Word};
use super::system::{ReductionSystem, RuleKind};

/// A slot of a pure tensor with its payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot<E> {
    /// The scalar `1 ∈ K` (scalar factors live in the coefficient).
    K,
    /// An element of `R̃`, i.e. with vanishing evaluation.
    Rt(E),
    /// `∂`.
    D,
    /// `∫`.
    I,
    /// `E`.
    E,
    /// A further functional, by index into the engine's list.
    Pt(usize),
    /// A further multiplicative functional, by index.
    Pm(usize),
}

impl<E> Slot<E> {
    /// The letter addressing the slot.
    pub fn letter(&self) -> Letter {
        match self {
            Slot::K => Letter::K,
            Slot::Rt(_) => Letter::Rt,
            Slot::D => Letter::D,
            Slot::I => Letter::I,
            Slot::E => Letter::E,
            Slot::Pt(_) => Letter::Pt,
            Slot::Pm(_) => Letter::Pm,
        }
    }
}

/// A slot with its payload expanded to a basis key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlotKey<K> {
    /// `K`.
    K,
    /// A basis element of `R̃`.
    Rt(K),
    /// `∂`.
    D,
    /// `∫`.
    I,
    /// `E`.
    E,
    /// A further functional.
    Pt(usize),
    /// A further multiplicative functional.
    Pm(usize),
}

/// A tensor in canonical coordinates: basis words to nonzero coefficients.
pub type Tensor<K, S> = BTreeMap<Vec<SlotKey<K>>, S>;

type Term<S, E> = (S, Vec<Slot<E>>);

/// Reduction of tensors over a concrete ring and concrete functionals.
pub struct Engine<R: IdRing> {
    /// The coefficient ring; its constants must be the base scalars.
    pub ring: R,
    /// Further functionals `Φ̃`, with names.
    pub pt: Vec<(String, FunctionalFn<R::Elem>)>,
    /// Further multiplicative functionals `Φ̃ₘ`, with names.
    pub pm: Vec<(String, FunctionalFn<R::Elem>)>,
}

impl<R: IdRing> Engine<R> {
    /// An engine with the evaluation as its only functional.
    pub fn new(ring: R) -> Self {
        Engine { ring, pt: Vec::new(), pm: Vec::new() }
    }

    /// The slots of `x ∈ R = K ⊕ R̃`: `(Ex)·K` and `x − Ex`, without zeros.
    pub fn split(&self, x: &R::Elem) -> Vec<Term<R::Scalar, R::Elem>> {
        let ex = self.ring.evaluate(x);
        let c = self.scalar(&ex, "evaluation");
        let rest = self.ring.sub(x, &ex);
        let mut out = Vec::new();
        if !c.is_zero() {
            out.push((c, vec![Slot::K]));
        }
        if !self.ring.is_zero(&rest) {
            out.push((R::Scalar::one(), vec![Slot::Rt(rest)]));
        }
        out
    }

    /// The pure tensors of `x` as an `R`-slot tensor.
    pub fn from_elem(&self, x: &R::Elem) -> Vec<Term<R::Scalar, R::Elem>> {
        self.split(x)
    }

    fn scalar(&self, x: &R::Elem, what: &str) -> R::Scalar {
        self.ring
            .scalar_value(x)
            .unwrap_or_else(|| panic!("{what} value {} is not a scalar; constants must be the base scalars", self.ring.format(x)))
    }

    fn payload(&self, s: &Slot<R::Elem>) -> R::Elem {
        match s {
            Slot::K => self.ring.one(),
            Slot::Rt(x) => x.clone(),
            _ => panic!("not an R slot"),
        }
    }

    fn functional(&self, s: &Slot<R::Elem>, x: &R::Elem) -> R::Scalar {
        match s {
            Slot::E => self.scalar(&self.ring.evaluate(x), "evaluation"),
            Slot::Pt(i) => self.scalar(&(self.pt[*i].1)(x), &self.pt[*i].0),
            Slot::Pm(i) => self.scalar(&(self.pm[*i].1)(x), &self.pm[*i].0),
            _ => panic!("not a functional slot"),
        }
    }

    /// The word of a pure tensor.
    pub fn word(slots: &[Slot<R::Elem>]) -> Word {
        slots.iter().map(Slot::letter).collect()
    }

    /// Expands pieces (each a sum of slot sequences) into their product.
    fn product(&self, coeff: R::Scalar, pieces: Vec<Vec<Term<R::Scalar, R::Elem>>>) -> Vec<Term<R::Scalar, R::Elem>> {
        let mut acc = vec![(coeff, Vec::new())];
        for piece in pieces {
            let mut next = Vec::new();
            for (c, w) in &acc {
                for (d, w2) in &piece {
                    let mut w3 = w.clone();
                    w3.extend(w2.iter().cloned());
                    next.push((c.clone() * d.clone(), w3));
                }
            }
            acc = next;
        }
        acc
    }

    fn fixed(s: &Slot<R::Elem>) -> Vec<Term<R::Scalar, R::Elem>> {
        vec![(R::Scalar::one(), vec![s.clone()])]
    }

    /// The image of the matched slots under a rule's replacement map.
    pub fn replace(&self, kind: RuleKind, m: &[Slot<R::Elem>]) -> Vec<Term<R::Scalar, R::Elem>> {
        let one = R::Scalar::one;
        let neg = || -R::Scalar::one();
        let r = &self.ring;
        let unit = || vec![(one(), Vec::new())];
        let integral_triple = |y: R::Elem| {
            let s = self.split(&y);
            let mut out = self.product(one(), vec![s.clone(), Self::fixed(&Slot::I)]);
            out.extend(self.product(neg(), vec![Self::fixed(&Slot::I), s.clone()]));
            out.extend(self.product(neg(), vec![Self::fixed(&Slot::E), s, Self::fixed(&Slot::I)]));
            out
        };
        match kind {
            RuleKind::K => unit(),
            RuleKind::RR => self.split(&r.mul(&self.payload(&m[0]), &self.payload(&m[1]))),
            RuleKind::DR => {
                let mut out = self.product(one(), vec![Self::fixed(&m[1]), Self::fixed(&Slot::D)]);
                out.extend(self.split(&r.derive(&self.payload(&m[1]))));
                out
            }
            RuleKind::DI => unit(),
            RuleKind::ID => vec![(one(), Vec::new()), (neg(), vec![Slot::E])],
            RuleKind::DPhi | RuleKind::EI => Vec::new(),
            RuleKind::PhiRPhi => vec![(self.functional(&m[0], &self.payload(&m[1])), vec![m[2].clone()])],
            RuleKind::PhiPhi => vec![(self.functional(&m[0], &r.one()), vec![m[1].clone()])],
            RuleKind::IRD => {
                let mut out = Self::fixed(&m[1]);
                out.extend(self.product(neg(), vec![Self::fixed(&Slot::E), Self::fixed(&m[1])]));
                out.extend(self.product(neg(), vec![Self::fixed(&Slot::I), self.split(&r.derive(&self.payload(&m[1])))]));
                out
            }
            RuleKind::IRPhi => self.product(one(), vec![self.split(&r.integrate(&self.payload(&m[1]))), Self::fixed(&m[2])]),
            RuleKind::IRI => integral_triple(r.integrate(&self.payload(&m[1]))),
            RuleKind::IPhi => self.product(one(), vec![self.split(&r.integrate(&r.one())), Self::fixed(&m[1])]),
            RuleKind::II => integral_triple(r.integrate(&r.one())),
            RuleKind::DRPhi => self.product(one(), vec![self.split(&r.derive(&self.payload(&m[1]))), Self::fixed(&m[2])]),
            RuleKind::PhimR => vec![(self.functional(&m[0], &self.payload(&m[1])), vec![m[0].clone()])],
        }
    }

    /// Applies rule `rule` of `sys` at position `pos` of the pure tensor,
    /// asserting that every resulting word is smaller in the order.
    pub fn apply(&self, sys: &ReductionSystem, rule: usize, slots: &[Slot<R::Elem>], pos: usize) -> Vec<Term<R::Scalar, R::Elem>> {
        let len = sys.rules[rule].pattern.len();
        let mid = self.replace(sys.rules[rule].kind, &slots[pos..pos + len]);
        let pieces = vec![vec![(R::Scalar::one(), slots[..pos].to_vec())], mid, vec![(R::Scalar::one(), slots[pos + len..].to_vec())]];
        let out: Vec<_> = self.product(R::Scalar::one(), pieces).into_iter().filter(|(c, _)| !c.is_zero()).collect();
        let before = order_key(&Self::word(slots));
        for (_, w) in &out {
            assert!(
                order_key(&Self::word(w)) < before,
                "rule {} does not decrease {} to {}",
                sys.rules[rule].name,
                format_word(&Self::word(slots)),
                format_word(&Self::word(w))
            );
        }
        out
    }

    /// All `(position, rule)` pairs matching the pure tensor.
    pub fn redexes(&self, sys: &ReductionSystem, slots: &[Slot<R::Elem>]) -> Vec<(usize, usize)> {
        let w = Self::word(slots);
        let mut out = Vec::new();
        for pos in 0..w.len() {
            for (i, r) in sys.rules.iter().enumerate() {
                if pos + r.pattern.len() <= w.len() && r.pattern.iter().zip(&w[pos..]).all(|(p, c)| sys.matches(*p, *c)) {
                    out.push((pos, i));
                }
            }
        }
        out
    }

    /// Reduces a sum of pure tensors to an irreducible tensor in canonical
    /// coordinates. With a trace, each step is recorded as text.
    pub fn reduce(
        &self,
        sys: &ReductionSystem,
        terms: Vec<Term<R::Scalar, R::Elem>>,
        strategy: Strategy,
        mut trace: Option<&mut Vec<String>>,
    ) -> Tensor<R::Key, R::Scalar> {
        let mut pending = terms;
        let mut done = Vec::new();
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(StdRng::seed_from_u64(seed)),
            Strategy::Leftmost => None,
        };
        while !pending.is_empty() {
            let idx = match rng.as_mut() {
                Some(g) => g.gen_range(0..pending.len()),
                None => pending.len() - 1,
            };
            let (c, w) = pending.swap_remove(idx);
            if c.is_zero() {
                continue;
            }
            let all = self.redexes(sys, &w);
            let pick = match rng.as_mut() {
                _ if all.is_empty() => None,
                Some(g) => Some(all[g.gen_range(0..all.len())]),
                None => all.iter().min_by_key(|(p, r)| (*p, *r)).copied(),
            };
            let Some((pos, rule)) = pick else {
                done.push((c, w));
                continue;
            };
            let out = self.apply(sys, rule, &w, pos);
            if let Some(t) = trace.as_deref_mut() {
                let after: Vec<String> = out.iter().map(|(d, w2)| self.format_term(&(c.clone() * d.clone()), w2)).collect();
                t.push(format!(
                    "{}: {} => {}",
                    sys.rules[rule].name,
                    self.format_term(&c, &w),
                    if after.is_empty() { "0".to_string() } else { after.join(" + ") }
                ));
            }
            for (d, w2) in out.into_iter().rev() {
                pending.push((c.clone() * d, w2));
            }
        }
        self.canonical(&done)
    }

    /// Canonical coordinates of a sum of pure tensors.
    pub fn canonical(&self, terms: &[Term<R::Scalar, R::Elem>]) -> Tensor<R::Key, R::Scalar> {
        let mut out: Tensor<R::Key, R::Scalar> = BTreeMap::new();
        for (c, w) in terms {
            let payloads: Vec<&R::Elem> = w.iter().filter_map(|s| if let Slot::Rt(x) = s { Some(x) } else { None }).collect();
            for (keys, d) in self.ring.tensor_coords(&payloads) {
                let mut it = keys.into_iter();
                let word: Vec<SlotKey<R::Key>> = w
                    .iter()
                    .map(|s| match s {
                        Slot::K => SlotKey::K,
                        Slot::Rt(_) => SlotKey::Rt(it.next().expect("one key per payload")),
                        Slot::D => SlotKey::D,
                        Slot::I => SlotKey::I,
                        Slot::E => SlotKey::E,
                        Slot::Pt(i) => SlotKey::Pt(*i),
                        Slot::Pm(i) => SlotKey::Pm(*i),
                    })
                    .collect();
                let e = out.entry(word).or_insert_with(R::Scalar::zero);
                *e = e.clone() + c.clone() * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// A pure tensor as text, e.g. `2·(x)⊗∂`.
    pub fn format_term(&self, c: &R::Scalar, w: &[Slot<R::Elem>]) -> String {
        let body = if w.is_empty() {
            "ε".to_string()
        } else {
            w.iter()
                .map(|s| match s {
                    Slot::K => "1".to_string(),
                    Slot::Rt(x) => format!("({})", self.ring.format(x)),
                    Slot::D => "∂".into(),
                    Slot::I => "∫".into(),
                    Slot::E => "E".into(),
                    Slot::Pt(i) => self.pt[*i].0.clone(),
                    Slot::Pm(i) => self.pm[*i].0.clone(),
                })
                .collect::<Vec<_>>()
                .join("⊗")
        };
        format!("{c}·{body}")
    }

    /// A canonical tensor as text.
    pub fn format_tensor(&self, t: &Tensor<R::Key, R::Scalar>) -> String {
        if t.is_empty() {
            return "0".into();
        }
        t.iter()
            .map(|(w, c)| {
                let slots: Vec<Slot<R::Elem>> = w
                    .iter()
                    .map(|k| match k {
                        SlotKey::K => Slot::K,
                        SlotKey::Rt(b) => Slot::Rt(self.ring.basis_elem(b)),
                        SlotKey::D => Slot::D,
                        SlotKey::I => Slot::I,
                        SlotKey::E => Slot::E,
                        SlotKey::Pt(i) => Slot::Pt(*i),
                        SlotKey::Pm(i) => Slot::Pm(*i),
                    })
                    .collect();
                self.format_term(c, &slots)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::PolyRing;
    use crate::scalar::qi;
    use crate::tenred::SystemName;

    #[test]
    fn derivation_past_x() {
        let eng = Engine::new(PolyRing);
        let sys = ReductionSystem::named(SystemName::Diff);
        let x = PolyRing.x();
        let t = eng.reduce(&sys, vec![(qi(1), vec![Slot::D, Slot::Rt(x.clone())])], Strategy::Leftmost, None);
        let expected = eng.canonical(&[(qi(1), vec![Slot::Rt(x), Slot::D]), (qi(1), vec![])]);
        assert_eq!(t, expected);
    }

    #[test]
    fn evaluation_then_integral_vanishes() {
        let eng = Engine::new(PolyRing);
        let sys = ReductionSystem::named(SystemName::Ido);
        let t = eng.reduce(&sys, vec![(qi(1), vec![Slot::E, Slot::I])], Strategy::Leftmost, None);
        assert!(t.is_empty());
        let t = eng.reduce(&sys, vec![(qi(3), vec![Slot::K])], Strategy::Leftmost, None);
        assert_eq!(t, eng.canonical(&[(qi(3), vec![])]));
    }
}
