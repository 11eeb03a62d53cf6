//! Ambiguity enumeration and S-polynomial checking.

use std::collections::BTreeSet;

use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::opalg::Strategy;
use crate::ring::{FunctionalFn, IdRing};
use crate::rings::{ExpPolyRing, HurwitzRing, LaurentLogRing, PolyRing, ShiftedPolyRing};
use crate::scalar::{q, qi, Q};
use crate::F5;

use super::engine::{Engine, Slot};
use super::letter::{format_word, Letter, Word};
use super::system::ReductionSystem;

/// The two kinds of ambiguities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AmbiguityKind {
    /// A suffix of the first pattern meets a prefix of the second.
    Overlap,
    /// The second pattern lies inside the first.
    Inclusion,
}

/// A minimal situation where two rules apply to one word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    /// Overlap or inclusion.
    pub kind: AmbiguityKind,
    /// Indices of the rules `(σ, τ)`; `σ` applies at position 0.
    pub rules: (usize, usize),
    /// Position at which `τ` applies.
    pub offset: usize,
    /// The ambiguity word over `Z`, with each shared letter replaced by the
    /// common specialization of the two pattern letters.
    pub word: Word,
}

impl Ambiguity {
    /// Description like `overlap IRD/DR on I R D R`.
    pub fn describe(&self, sys: &ReductionSystem) -> String {
        let kind = match self.kind {
            AmbiguityKind::Overlap => "overlap",
            AmbiguityKind::Inclusion => "inclusion",
        };
        format!("{kind} {}/{} on {}", sys.rules[self.rules.0].name, sys.rules[self.rules.1].name, format_word(&self.word))
    }
}

/// The letter whose specialization set is the intersection of those of `a`
/// and `b`, if nonempty.
fn meet(sys: &ReductionSystem, a: Letter, b: Letter) -> Option<Letter> {
    let sa: BTreeSet<Letter> = sys.spec(a).into_iter().collect();
    let sb: BTreeSet<Letter> = sys.spec(b).into_iter().collect();
    let inter: BTreeSet<Letter> = sa.intersection(&sb).copied().collect();
    if inter.is_empty() {
        None
    } else if inter == sa {
        Some(a)
    } else if inter == sb {
        Some(b)
    } else if inter.len() == 1 {
        inter.into_iter().next()
    } else {
        [Letter::R, Letter::Phi, Letter::PhiM].into_iter().find(|l| sys.spec(*l).into_iter().collect::<BTreeSet<_>>() == inter)
    }
}

/// Unifies `b` with `a[at..]`, returning `a` with the met letters.
fn unify(sys: &ReductionSystem, a: &[Letter], b: &[Letter], at: usize) -> Option<Word> {
    let mut w = a.to_vec();
    for (i, l) in b.iter().enumerate() {
        if at + i < w.len() {
            w[at + i] = meet(sys, w[at + i], *l)?;
        } else {
            w.push(*l);
        }
    }
    Some(w)
}

/// All overlap and inclusion ambiguities of the system, including those
/// that only arise through common specializations, deduplicated by rule
/// pair and word. Overlaps come first.
pub fn enumerate_ambiguities(sys: &ReductionSystem) -> Vec<Ambiguity> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |amb: Ambiguity, out: &mut Vec<Ambiguity>| {
        if seen.insert((amb.kind, amb.rules, amb.word.clone())) {
            out.push(amb);
        }
    };
    for (i, s) in sys.rules.iter().enumerate() {
        for (j, t) in sys.rules.iter().enumerate() {
            let (ls, lt) = (s.pattern.len(), t.pattern.len());
            for k in 1..ls.min(lt) {
                if let Some(word) = unify(sys, &s.pattern, &t.pattern, ls - k) {
                    push(Ambiguity { kind: AmbiguityKind::Overlap, rules: (i, j), offset: ls - k, word }, &mut out);
                }
            }
        }
    }
    for (i, s) in sys.rules.iter().enumerate() {
        for (j, t) in sys.rules.iter().enumerate() {
            let (ls, lt) = (s.pattern.len(), t.pattern.len());
            if lt > ls {
                continue;
            }
            for p in 0..=ls - lt {
                if i == j && p == 0 {
                    continue;
                }
                if let Some(word) = unify(sys, &s.pattern, &t.pattern, p) {
                    push(Ambiguity { kind: AmbiguityKind::Inclusion, rules: (i, j), offset: p, word }, &mut out);
                }
            }
        }
    }
    out
}

/// Result of checking one ambiguity or one rule on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Both sides reduced to the same tensor in every trial.
    Resolved {
        /// Number of concrete trials.
        checks: usize,
        /// Reduction trace of the first trial.
        trace: Vec<String>,
    },
    /// A trial whose two sides reduce to different tensors.
    Unresolved {
        /// The concrete situation and the nonzero difference.
        detail: String,
        /// Reduction trace of the failing trial.
        trace: Vec<String>,
    },
    /// The instance does not satisfy the system's hypotheses.
    Skipped,
}

/// A source of concrete payloads for checking S-polynomials.
pub trait Instantiation: Send + Sync {
    /// Name of the ring and functionals.
    fn name(&self) -> String;
    /// `true` if the evaluation is multiplicative.
    fn e_multiplicative(&self) -> bool;
    /// Checks the S-polynomial of `amb` on `trials` random instantiations of
    /// each concrete specialization of its word.
    fn check(&self, sys: &ReductionSystem, amb: &Ambiguity, trials: usize) -> Outcome;
    /// Checks that both sides of `defining.rules[rule]` reduce to the same
    /// tensor under `completed`.
    fn check_rule(&self, defining: &ReductionSystem, rule: usize, completed: &ReductionSystem, trials: usize) -> Outcome;
}

/// A ring with further functionals, used to instantiate slots.
pub struct Instance<R: IdRing> {
    /// Display name.
    pub name: String,
    /// The engine holding the ring and the functionals.
    pub engine: Engine<R>,
    /// `true` if the evaluation is multiplicative.
    pub e_multiplicative: bool,
    /// Seed for payload sampling.
    pub seed: u64,
}

type Term<R> = (<R as IdRing>::Scalar, Vec<Slot<<R as IdRing>::Elem>>);

impl<R: IdRing> Instance<R> {
    /// An instance; `pt` are arbitrary functionals into the constants and
    /// `pm` multiplicative ones.
    pub fn new(
        name: &str,
        ring: R,
        pt: Vec<(String, FunctionalFn<R::Elem>)>,
        pm: Vec<(String, FunctionalFn<R::Elem>)>,
        e_multiplicative: bool,
    ) -> Self {
        Instance { name: name.into(), engine: Engine { ring, pt, pm }, e_multiplicative, seed: 0x1d0 }
    }

    fn usable(&self, sys: &ReductionSystem) -> bool {
        !(sys.e_in_phim && !self.e_multiplicative)
    }

    /// Concrete words specializing a word over `Z`.
    fn concrete_words(sys: &ReductionSystem, w: &[Letter]) -> Vec<Word> {
        let mut acc: Vec<Word> = vec![Vec::new()];
        for l in w {
            let opts = sys.spec(*l);
            acc = acc
                .into_iter()
                .flat_map(|p| {
                    opts.iter().map(move |o| {
                        let mut q = p.clone();
                        q.push(*o);
                        q
                    })
                })
                .collect();
        }
        acc
    }

    fn rt_sample(&self, rng: &mut StdRng) -> R::Elem {
        let r = &self.engine.ring;
        let size = rng.gen_range(1..=3);
        let x = r.sample(rng, size);
        let y = r.sub(&x, &r.evaluate(&x));
        if r.is_zero(&y) {
            r.integrate(&r.one())
        } else {
            y
        }
    }

    fn slots(&self, w: &[Letter], rng: &mut StdRng) -> Vec<Slot<R::Elem>> {
        w.iter()
            .map(|l| match l {
                Letter::K => Slot::K,
                Letter::Rt => Slot::Rt(self.rt_sample(rng)),
                Letter::D => Slot::D,
                Letter::I => Slot::I,
                Letter::E => Slot::E,
                Letter::Pt => Slot::Pt(rng.gen_range(0..self.engine.pt.len())),
                Letter::Pm => Slot::Pm(rng.gen_range(0..self.engine.pm.len())),
                _ => unreachable!("concrete word"),
            })
            .collect()
    }

    /// Reduces two sides and compares; returns the trace and, on failure,
    /// the difference.
    fn compare(&self, sys: &ReductionSystem, slots: &[Slot<R::Elem>], left: Vec<Term<R>>, right: Vec<Term<R>>) -> (Vec<String>, Option<String>) {
        let eng = &self.engine;
        let mut tl = Vec::new();
        let mut tr = Vec::new();
        let a = eng.reduce(sys, left, Strategy::Leftmost, Some(&mut tl));
        let b = eng.reduce(sys, right, Strategy::Leftmost, Some(&mut tr));
        let mut trace = vec![format!("start: {}", eng.format_term(&R::Scalar::one(), slots))];
        trace.extend(tl.into_iter().map(|s| format!("left  {s}")));
        trace.extend(tr.into_iter().map(|s| format!("right {s}")));
        trace.push(format!("left result:  {}", eng.format_tensor(&a)));
        trace.push(format!("right result: {}", eng.format_tensor(&b)));
        if a == b {
            (trace, None)
        } else {
            let mut diff = a.clone();
            for (k, c) in b {
                let e = diff.entry(k).or_insert_with(num_traits::Zero::zero);
                *e = e.clone() - c;
            }
            diff.retain(|_, c| !num_traits::Zero::is_zero(c));
            let detail = format!("{} on {}: S-polynomial reduces to {}", self.name, eng.format_term(&R::Scalar::one(), slots), eng.format_tensor(&diff));
            (trace, Some(detail))
        }
    }

    fn run(&self, words: Vec<Word>, trials: usize, mut side: impl FnMut(&[Slot<R::Elem>]) -> (Vec<String>, Option<String>)) -> Outcome {
        let mut rng = StdRng::seed_from_u64(self.seed);
        let mut first = None;
        let mut checks = 0;
        for w in words {
            if w.contains(&Letter::Pt) && self.engine.pt.is_empty() || w.contains(&Letter::Pm) && self.engine.pm.is_empty() {
                continue;
            }
            let n = if w.contains(&Letter::Rt) || w.contains(&Letter::Pt) || w.contains(&Letter::Pm) { trials } else { 1 };
            for _ in 0..n {
                let slots = self.slots(&w, &mut rng);
                let (trace, fail) = side(&slots);
                checks += 1;
                if let Some(detail) = fail {
                    return Outcome::Unresolved { detail, trace };
                }
                first.get_or_insert(trace);
            }
        }
        Outcome::Resolved { checks, trace: first.unwrap_or_default() }
    }
}

impl<R: IdRing> Instantiation for Instance<R> {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn e_multiplicative(&self) -> bool {
        self.e_multiplicative
    }

    fn check(&self, sys: &ReductionSystem, amb: &Ambiguity, trials: usize) -> Outcome {
        if !self.usable(sys) {
            return Outcome::Skipped;
        }
        let words = Self::concrete_words(sys, &amb.word);
        self.run(words, trials, |slots| {
            let left = self.engine.apply(sys, amb.rules.0, slots, 0);
            let right = self.engine.apply(sys, amb.rules.1, slots, amb.offset);
            self.compare(sys, slots, left, right)
        })
    }

    fn check_rule(&self, defining: &ReductionSystem, rule: usize, completed: &ReductionSystem, trials: usize) -> Outcome {
        if !self.usable(completed) {
            return Outcome::Skipped;
        }
        let words = Self::concrete_words(defining, &defining.rules[rule].pattern);
        self.run(words, trials, |slots| {
            let left = vec![(R::Scalar::one(), slots.to_vec())];
            let right = self.engine.apply(defining, rule, slots, 0);
            self.compare(completed, slots, left, right)
        })
    }
}

fn coeff_functional<R>(ring: R, weights: Vec<(R::Key, R::Scalar)>) -> FunctionalFn<R::Elem>
where
    R: IdRing,
{
    std::sync::Arc::new(move |f: &R::Elem| {
        let cs = ring.coords(f);
        let v = weights
            .iter()
            .map(|(k, w)| cs.iter().find(|(k2, _)| k2 == k).map(|(_, c)| c.clone() * w.clone()).unwrap_or_else(num_traits::Zero::zero))
            .fold(<R::Scalar as num_traits::Zero>::zero(), |a, b| a + b);
        ring.constant(&v)
    })
}

/// The shipped corpus of instances: polynomials, Laurent-log sums, both
/// exponential-polynomial integrations, a shifted integration and Hurwitz
/// series over `Q` and over `Z/5Z`. Each carries a coefficient functional as
/// `Φ̃` and a multiplicative functional as `Φ̃ₘ`.
pub fn default_instances() -> Vec<Box<dyn Instantiation>> {
    let mut out: Vec<Box<dyn Instantiation>> = Vec::new();

    let poly = PolyRing;
    let p1 = poly.clone();
    let at_one: FunctionalFn<_> = std::sync::Arc::new(move |f| p1.constant(&p1.eval_at(f, &qi(1))));
    let p2 = poly.clone();
    let mixed: FunctionalFn<_> = std::sync::Arc::new(move |f| p2.constant(&(qi(2) * p2.eval_at(f, &qi(1)) + f.coeff(&1))));
    let p3 = poly.clone();
    let at_half: FunctionalFn<_> = std::sync::Arc::new(move |f| p3.constant(&p3.eval_at(f, &q(-1, 2))));
    out.push(Box::new(Instance::new(
        "Q[x]",
        poly,
        vec![("phi:mixed".into(), mixed), ("phi:x2".into(), coeff_functional(PolyRing, vec![(2, qi(1)), (0, qi(3))]))],
        vec![("phi:at1".into(), at_one), ("phi:at-1/2".into(), at_half)],
        true,
    )));

    let ll = LaurentLogRing;
    let pm_ll: FunctionalFn<_> = {
        // x ↦ 1 on the Laurent part: the value at x = 1, where ln 1 = 0.
        let r = ll.clone();
        std::sync::Arc::new(move |f: &<LaurentLogRing as IdRing>::Elem| {
            let v = r.coords(f).into_iter().filter(|((_, n), _)| *n == 0).fold(qi(0), |a, (_, c)| a + c);
            r.constant(&v)
        })
    };
    out.push(Box::new(Instance::new(
        "Q[x,1/x,ln x]",
        ll.clone(),
        vec![("phi:c".into(), coeff_functional(ll, vec![((1, 0), qi(1)), ((-1, 1), qi(2)), ((0, 1), qi(-1))]))],
        vec![("phi:at1".into(), pm_ll)],
        false,
    )));

    for (name, ring, mult) in [("exp-poly (recursive)", ExpPolyRing::recursive(), false), ("exp-poly (at 0)", ExpPolyRing::eval_at_zero(), true)] {
        let r = ring.clone();
        let at0: FunctionalFn<_> = std::sync::Arc::new(move |f| r.constant(&r.eval_at_zero_value(f)));
        let weights: Vec<_> = ring.coords(&ring.sum(&ring.corpus())).into_iter().take(3).collect();
        out.push(Box::new(Instance::new(name, ring.clone(), vec![("phi:c".into(), coeff_functional(ring, weights))], vec![("phi:at0".into(), at0)], mult)));
    }

    let sh = ShiftedPolyRing::new(qi(1));
    let p = PolyRing;
    let at0: FunctionalFn<_> = std::sync::Arc::new(move |f| p.constant(&p.eval_at(f, &qi(0))));
    out.push(Box::new(Instance::new(
        "Q[x] shifted by 1",
        sh.clone(),
        vec![("phi:c".into(), coeff_functional(sh, vec![(1, qi(1)), (3, q(1, 2))]))],
        vec![("phi:at0".into(), at0)],
        false,
    )));

    let hq: HurwitzRing<Q> = HurwitzRing::new(5);
    let r = hq.clone();
    // Σ aᵢ/i! is the value at 1 of the corresponding series xⁱ/i!.
    let at1: FunctionalFn<_> = std::sync::Arc::new(move |f: &<HurwitzRing<Q> as IdRing>::Elem| {
        let v = r.coords(f).into_iter().fold(qi(0), |a, (i, c)| a + c / crate::scalar::factorial::<Q>(i));
        r.constant(&v)
    });
    out.push(Box::new(Instance::new(
        "Hurwitz series over Q",
        hq.clone(),
        vec![("phi:c".into(), coeff_functional(hq, vec![(1, qi(1)), (2, qi(-2))]))],
        vec![("phi:at1".into(), at1)],
        true,
    )));

    let hf: HurwitzRing<F5> = HurwitzRing::new(6);
    let r = hf.clone();
    let a0: FunctionalFn<_> = std::sync::Arc::new(move |f: &<HurwitzRing<F5> as IdRing>::Elem| r.evaluate(f));
    out.push(Box::new(Instance::new(
        "Hurwitz series over Z/5Z",
        hf.clone(),
        vec![("phi:c".into(), coeff_functional(hf, vec![(1, F5::new(1)), (4, F5::new(3))]))],
        vec![("phi:a0".into(), a0)],
        true,
    )));
    out
}

/// The result for one ambiguity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguityResult {
    /// Position in the enumeration.
    pub index: usize,
    /// The ambiguity.
    pub ambiguity: Ambiguity,
    /// Text description.
    pub description: String,
    /// Names of the instances that were checked.
    pub instances_checked: Vec<String>,
    /// Total number of concrete trials.
    pub checks: usize,
    /// `true` if every trial reduced the S-polynomial to zero.
    pub resolved: bool,
    /// Reduction trace of the first (or failing) trial.
    pub trace: Vec<String>,
    /// The failing trial, if any.
    pub failure: Option<String>,
}

/// Confluence report of a system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    /// System name.
    pub system: String,
    /// The rules in text form.
    pub rules: Vec<String>,
    /// One entry per ambiguity.
    pub results: Vec<AmbiguityResult>,
}

impl ConfluenceReport {
    /// Number of ambiguities.
    pub fn count(&self) -> usize {
        self.results.len()
    }

    /// Number of overlap ambiguities.
    pub fn overlaps(&self) -> usize {
        self.results.iter().filter(|r| r.ambiguity.kind == AmbiguityKind::Overlap).count()
    }

    /// Number of inclusion ambiguities.
    pub fn inclusions(&self) -> usize {
        self.count() - self.overlaps()
    }

    /// Number of resolved ambiguities.
    pub fn resolved(&self) -> usize {
        self.results.iter().filter(|r| r.resolved).count()
    }

    /// `true` if every ambiguity is resolved.
    pub fn all_resolved(&self) -> bool {
        self.results.iter().all(|r| r.resolved)
    }

    /// JSON form with per-ambiguity traces.
    pub fn to_json(&self) -> Value {
        json!({
            "system": self.system,
            "rules": self.rules,
            "count": self.count(),
            "overlaps": self.overlaps(),
            "inclusions": self.inclusions(),
            "resolved": self.resolved(),
            "all_resolved": self.all_resolved(),
            "ambiguities": self.results.iter().map(|r| json!({
                "index": r.index,
                "kind": r.ambiguity.kind,
                "rules": [r.ambiguity.rules.0, r.ambiguity.rules.1],
                "description": r.description,
                "word": format_word(&r.ambiguity.word),
                "offset": r.ambiguity.offset,
                "instances_checked": r.instances_checked,
                "checks": r.checks,
                "resolved": r.resolved,
                "trace": r.trace,
                "failure": r.failure,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Number of random instantiations per concrete specialization.
const TRIALS: usize = 3;

/// Enumerates the ambiguities of `sys` and checks each S-polynomial on every
/// instance. Ambiguities are checked in parallel and merged by index.
pub fn check_confluence(sys: &ReductionSystem, instances: &[Box<dyn Instantiation>]) -> ConfluenceReport {
    let ambs = enumerate_ambiguities(sys);
    let check_one = |index: usize, amb: &Ambiguity| {
        let mut result = AmbiguityResult {
            index,
            ambiguity: amb.clone(),
            description: amb.describe(sys),
            instances_checked: Vec::new(),
            checks: 0,
            resolved: true,
            trace: Vec::new(),
            failure: None,
        };
        for inst in instances {
            match inst.check(sys, amb, TRIALS) {
                Outcome::Skipped => {}
                Outcome::Resolved { checks, trace } => {
                    result.instances_checked.push(inst.name());
                    result.checks += checks;
                    if result.trace.is_empty() {
                        result.trace = trace;
                    }
                }
                Outcome::Unresolved { detail, trace } => {
                    result.instances_checked.push(inst.name());
                    result.resolved = false;
                    result.trace = trace;
                    result.failure = Some(detail);
                    break;
                }
            }
        }
        result
    };
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).clamp(1, 8);
    let chunk = ambs.len().div_ceil(threads).max(1);
    let mut results: Vec<AmbiguityResult> = std::thread::scope(|s| {
        let handles: Vec<_> = ambs
            .chunks(chunk)
            .enumerate()
            .map(|(ci, part)| {
                let check_one = &check_one;
                s.spawn(move || part.iter().enumerate().map(|(i, a)| check_one(ci * chunk + i, a)).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("ambiguity check panicked")).collect()
    });
    results.sort_by_key(|r| r.index);
    ConfluenceReport { system: sys.name.clone(), rules: sys.rules.iter().map(|r| r.text()).collect(), results }
}

/// Whether each defining rule holds in the completed system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningReport {
    /// The defining system.
    pub defining: String,
    /// The completed system.
    pub completed: String,
    /// Per rule: text, whether both sides agree, and the failure if any.
    pub rules: Vec<(String, bool, Option<String>)>,
}

impl DefiningReport {
    /// `true` if every defining rule holds.
    pub fn all_equal(&self) -> bool {
        self.rules.iter().all(|(_, ok, _)| *ok)
    }
}

/// Checks that the two sides of every rule of `defining` reduce to the same
/// tensor under `completed`, so both systems generate the same ideal.
pub fn check_defining_rules(defining: &ReductionSystem, completed: &ReductionSystem, instances: &[Box<dyn Instantiation>]) -> DefiningReport {
    let rules = (0..defining.rules.len())
        .map(|i| {
            let mut failure = None;
            for inst in instances {
                if let Outcome::Unresolved { detail, .. } = inst.check_rule(defining, i, completed, TRIALS) {
                    failure = Some(detail);
                    break;
                }
            }
            (defining.rules[i].text(), failure.is_none(), failure)
        })
        .collect();
    DefiningReport { defining: defining.name.clone(), completed: completed.name.clone(), rules }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tenred::SystemName;

    #[test]
    fn diff_has_dr_rr_overlap() {
        let sys = ReductionSystem::named(SystemName::Diff);
        let ambs = enumerate_ambiguities(&sys);
        assert!(ambs.iter().any(|a| a.kind == AmbiguityKind::Overlap && a.word == vec![Letter::D, Letter::R, Letter::R]));
    }

    #[test]
    fn disjoint_single_letters_have_no_ambiguities() {
        let mut sys = ReductionSystem::named(SystemName::Ido);
        sys.rules.retain(|r| r.pattern.len() == 1);
        assert!(enumerate_ambiguities(&sys).is_empty());
    }
}
