//! The rewrite system on words of coefficients and generators.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::ring::IdRing;

use super::functional::FunctionalTable;

/// A letter of an operator word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Item<E> {
    /// Multiplication by a ring element.
    C(E),
    /// The derivation `∂`.
    D,
    /// The integration `∫`.
    I,
    /// A functional by table index; `0` is `E`.
    P(usize),
}

/// The rewrite rules, in the priority used by the leftmost strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// A zero coefficient annihilates the term.
    Zero,
    /// A constant coefficient `c·1` becomes a scalar.
    Scalar,
    /// `f·g = (fg)`.
    Merge,
    /// `∂·f = f·∂ + ∂f`.
    DerivCoeff,
    /// `∂·∫ = 1`.
    DerivInt,
    /// `∂·φ = 0`.
    DerivPhi,
    /// `φ·f = (φf)·φ` for multiplicative `φ`.
    MultPhiCoeff,
    /// `φ·f·ψ = (φf)·ψ`.
    PhiCoeffPhi,
    /// `φ·ψ = (φ1)·ψ`.
    PhiPhi,
    /// `E·∫ = 0`.
    EvalInt,
    /// `E·h·∫ = E·(h − Eh)·∫`.
    EvalCoeffInt,
    /// `∫·f·∂ = f − E·f − ∫·∂f`.
    IntCoeffDeriv,
    /// `∫·f·φ = ∫f·φ`.
    IntCoeffPhi,
    /// `∫·f·∫ = ∫f·∫ − ∫·∫f − E·∫f·∫`.
    IntCoeffInt,
    /// `∫·∂ = 1 − E`.
    IntDeriv,
    /// `∫·φ = ∫1·φ`.
    IntPhi,
    /// `∫·∫ = ∫1·∫ − ∫·∫1 − E·∫1·∫`.
    IntInt,
}

impl Rule {
    /// The rule as an identity in text form.
    pub fn text(self) -> &'static str {
        match self {
            Rule::Zero => "0*L = 0",
            Rule::Scalar => "c*L = c L (constant coefficient)",
            Rule::Merge => "f*g = (fg)",
            Rule::DerivCoeff => "d*f = f*d + (D f)",
            Rule::DerivInt => "d*i = 1",
            Rule::DerivPhi => "d*phi = 0",
            Rule::MultPhiCoeff => "phi*f = (phi f)*phi",
            Rule::PhiCoeffPhi => "phi*f*psi = (phi f)*psi",
            Rule::PhiPhi => "phi*psi = (phi 1)*psi",
            Rule::EvalInt => "e*i = 0",
            Rule::EvalCoeffInt => "e*h*i = e*(h - e h)*i",
            Rule::IntCoeffDeriv => "i*f*d = f - e*f - i*(D f)",
            Rule::IntCoeffPhi => "i*f*phi = (I f)*phi",
            Rule::IntCoeffInt => "i*f*i = (I f)*i - i*(I f) - e*(I f)*i",
            Rule::IntDeriv => "i*d = 1 - e",
            Rule::IntPhi => "i*phi = I1*phi",
            Rule::IntInt => "i*i = I1*i - i*I1 - e*I1*i",
        }
    }
}

/// Choice of the redex in each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Always rewrite the leftmost redex of the first pending term.
    Leftmost,
    /// Pick a pending term and one of its redexes uniformly at random.
    Random(u64),
}

/// One rewrite step, for tracing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// The rule applied.
    pub rule: Rule,
    /// The term before the step.
    pub before: String,
    /// The resulting terms.
    pub after: Vec<String>,
}

/// A scalar multiple of a word.
pub(crate) type Term<S, E> = (S, Vec<Item<E>>);

pub(crate) struct Rewriter<'a, R: IdRing> {
    pub ring: &'a R,
    pub funcs: &'a FunctionalTable<R::Elem>,
}

impl<'a, R: IdRing> Rewriter<'a, R> {
    /// The rule applicable at position `p`, if any.
    fn rule_at(&self, w: &[Item<R::Elem>], p: usize) -> Option<Rule> {
        use Item::*;
        let ring = self.ring;
        let at = |k: usize| w.get(p + k);
        match (at(0)?, at(1), at(2)) {
            (C(f), _, _) if ring.is_zero(f) => Some(Rule::Zero),
            (C(f), _, _) if ring.scalar_value(f).is_some() => Some(Rule::Scalar),
            (C(_), Some(C(_)), _) => Some(Rule::Merge),
            (D, Some(C(_)), _) => Some(Rule::DerivCoeff),
            (D, Some(I), _) => Some(Rule::DerivInt),
            (D, Some(P(_)), _) => Some(Rule::DerivPhi),
            (P(k), Some(C(_)), _) if self.funcs.is_multiplicative(*k) => Some(Rule::MultPhiCoeff),
            (P(_), Some(C(_)), Some(P(_))) => Some(Rule::PhiCoeffPhi),
            (P(_), Some(P(_)), _) => Some(Rule::PhiPhi),
            (P(0), Some(I), _) => Some(Rule::EvalInt),
            (P(0), Some(C(h)), Some(I)) if !ring.is_zero(&ring.evaluate(h)) => Some(Rule::EvalCoeffInt),
            (I, Some(C(_)), Some(D)) => Some(Rule::IntCoeffDeriv),
            (I, Some(C(_)), Some(P(_))) => Some(Rule::IntCoeffPhi),
            (I, Some(C(_)), Some(I)) => Some(Rule::IntCoeffInt),
            (I, Some(D), _) => Some(Rule::IntDeriv),
            (I, Some(P(_)), _) => Some(Rule::IntPhi),
            (I, Some(I), _) => Some(Rule::IntInt),
            _ => None,
        }
    }

    fn redexes(&self, w: &[Item<R::Elem>]) -> Vec<(usize, Rule)> {
        (0..w.len()).filter_map(|p| self.rule_at(w, p).map(|r| (p, r))).collect()
    }

    fn first_redex(&self, w: &[Item<R::Elem>]) -> Option<(usize, Rule)> {
        (0..w.len()).find_map(|p| self.rule_at(w, p).map(|r| (p, r)))
    }

    /// Applies `rule` at `p` and returns the resulting terms with their
    /// scalar factors.
    fn apply(&self, w: &[Item<R::Elem>], p: usize, rule: Rule) -> Vec<Term<R::Scalar, R::Elem>> {
        use Item::*;
        let ring = self.ring;
        let one_s = || <R::Scalar as num_traits::One>::one();
        let neg_s = || -one_s();
        let splice = |len: usize, repl: Vec<Item<R::Elem>>| -> Vec<Item<R::Elem>> {
            let mut out = Vec::with_capacity(w.len() + repl.len());
            out.extend_from_slice(&w[..p]);
            out.extend(repl);
            out.extend_from_slice(&w[p + len..]);
            out
        };
        let coeff = |k: usize| match &w[p + k] {
            C(f) => f.clone(),
            _ => unreachable!("pattern checked"),
        };
        let phi = |k: usize| match &w[p + k] {
            P(i) => *i,
            _ => unreachable!("pattern checked"),
        };
        let i1 = || ring.integrate(&ring.one());
        match rule {
            Rule::Zero => vec![],
            Rule::Scalar => {
                let c = ring.scalar_value(&coeff(0)).expect("constant coefficient");
                vec![(c, splice(1, vec![]))]
            }
            Rule::Merge => vec![(one_s(), splice(2, vec![C(ring.mul(&coeff(0), &coeff(1)))]))],
            Rule::DerivCoeff => {
                let f = coeff(1);
                vec![(one_s(), splice(2, vec![C(ring.derive(&f)), ])), (one_s(), splice(2, vec![C(f), D]))]
            }
            Rule::DerivInt => vec![(one_s(), splice(2, vec![]))],
            Rule::DerivPhi => vec![],
            Rule::MultPhiCoeff => {
                let k = phi(0);
                vec![(one_s(), splice(2, vec![C(self.funcs.apply(ring, k, &coeff(1))), P(k)]))]
            }
            Rule::PhiCoeffPhi => {
                let v = self.funcs.apply(ring, phi(0), &coeff(1));
                vec![(one_s(), splice(3, vec![C(v), P(phi(2))]))]
            }
            Rule::PhiPhi => {
                let v = self.funcs.apply(ring, phi(0), &ring.one());
                vec![(one_s(), splice(2, vec![C(v), P(phi(1))]))]
            }
            Rule::EvalInt => vec![],
            Rule::EvalCoeffInt => {
                let h = coeff(1);
                vec![(one_s(), splice(3, vec![P(0), C(ring.sub(&h, &ring.evaluate(&h))), I]))]
            }
            Rule::IntCoeffDeriv => {
                let f = coeff(1);
                vec![
                    (one_s(), splice(3, vec![C(f.clone())])),
                    (neg_s(), splice(3, vec![P(0), C(f.clone())])),
                    (neg_s(), splice(3, vec![I, C(ring.derive(&f))])),
                ]
            }
            Rule::IntCoeffPhi => vec![(one_s(), splice(3, vec![C(ring.integrate(&coeff(1))), P(phi(2))]))],
            Rule::IntCoeffInt => {
                let f = ring.integrate(&coeff(1));
                int_int(&splice, f)
            }
            Rule::IntDeriv => vec![(one_s(), splice(2, vec![])), (neg_s(), splice(2, vec![P(0)]))],
            Rule::IntPhi => vec![(one_s(), splice(2, vec![C(i1()), P(phi(1))]))],
            Rule::IntInt => int_int(&|len, repl| splice(len - 1, repl), i1()),
        }
    }

    /// Reduces a list of terms to irreducible terms. Each step is recorded
    /// in `trace` if given.
    pub fn reduce(
        &self,
        terms: Vec<Term<R::Scalar, R::Elem>>,
        strategy: Strategy,
        mut trace: Option<&mut Vec<TraceStep>>,
    ) -> Vec<Term<R::Scalar, R::Elem>> {
        let mut pending = terms;
        let mut done = Vec::new();
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(StdRng::seed_from_u64(seed)),
            Strategy::Leftmost => None,
        };
        while !pending.is_empty() {
            let idx = match rng.as_mut() {
                Some(r) => r.gen_range(0..pending.len()),
                None => pending.len() - 1,
            };
            let (c, w) = pending.swap_remove(idx);
            if num_traits::Zero::is_zero(&c) {
                continue;
            }
            let redex = match rng.as_mut() {
                Some(r) => {
                    let all = self.redexes(&w);
                    if all.is_empty() {
                        None
                    } else {
                        Some(all[r.gen_range(0..all.len())])
                    }
                }
                None => self.first_redex(&w),
            };
            let Some((p, rule)) = redex else {
                done.push((c, w));
                continue;
            };
            let out = self.apply(&w, p, rule);
            if let Some(t) = trace.as_deref_mut() {
                t.push(TraceStep {
                    rule,
                    before: format_term(self.ring, self.funcs, &c, &w),
                    after: out.iter().map(|(d, w2)| format_term(self.ring, self.funcs, &(c.clone() * d.clone()), w2)).collect(),
                });
            }
            // Push in reverse so that the leftmost strategy processes the
            // results in order.
            for (d, w2) in out.into_iter().rev() {
                pending.push((c.clone() * d, w2));
            }
        }
        done
    }
}

/// The three terms `F·∫ − ∫·F − E·F·∫` replacing a pattern of length 3 at the
/// current position.
fn int_int<E: Clone, S: num_traits::One + std::ops::Neg<Output = S>>(
    splice: &dyn Fn(usize, Vec<Item<E>>) -> Vec<Item<E>>,
    f: E,
) -> Vec<(S, Vec<Item<E>>)> {
    use Item::*;
    vec![
        (S::one(), splice(3, vec![C(f.clone()), I])),
        (-S::one(), splice(3, vec![I, C(f.clone())])),
        (-S::one(), splice(3, vec![P(0), C(f), I])),
    ]
}

/// Formats one word letter.
pub(crate) fn format_item<R: IdRing>(ring: &R, funcs: &FunctionalTable<R::Elem>, it: &Item<R::Elem>) -> String {
    match it {
        Item::C(f) => paren(&ring.format(f)),
        Item::D => "d".into(),
        Item::I => "i".into(),
        Item::P(k) => funcs.display_name(*k),
    }
}

/// Parenthesizes printed elements that are sums or start with a sign.
pub(crate) fn paren(s: &str) -> String {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.contains(" + ") || body.contains(" - ") || s.starts_with('-') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

/// Formats a scalar multiple of a word.
pub(crate) fn format_term<R: IdRing>(ring: &R, funcs: &FunctionalTable<R::Elem>, c: &R::Scalar, w: &[Item<R::Elem>]) -> String {
    let body: Vec<String> = w.iter().map(|it| format_item(ring, funcs, it)).collect();
    let body = if body.is_empty() { "1".to_string() } else { body.join("*") };
    if num_traits::One::is_one(c) {
        body
    } else {
        format!("{}*{body}", paren(&c.to_string()))
    }
}
