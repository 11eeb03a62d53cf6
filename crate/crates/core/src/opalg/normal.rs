//! Normal forms and the operator algebra over a ring.

use std::collections::BTreeMap;

use num_traits::One;
use serde_json::{json, Value};

use crate::error::Result;
use crate::ring::{FunctionalFn, IdRing};
use crate::syntax::{join_terms, Expr};

use super::expr::{apply_expr, elaborate, parse_operator, Env, Gen, OpExpr};
use super::functional::FunctionalTable;
use super::rewrite::{format_term, paren, Item, Rewriter, Strategy, Term, TraceStep};
use super::Nf;

/// Shape of a normal-form term; the coefficient slots are listed in brackets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// `[f]·∂ʲ`.
    Diff(u32),
    /// `[f]·∫·[g]`.
    Int,
    /// `[f]·φ·[h]·∂ʲ` with the functional index.
    Init(usize, u32),
    /// `[f]·φ·[h]·∫·[g]` with the functional index.
    InitInt(usize),
}

impl Shape {
    /// Number of coefficient slots.
    pub fn slots(self) -> usize {
        match self {
            Shape::Diff(_) => 1,
            Shape::Int | Shape::Init(..) => 2,
            Shape::InitInt(_) => 3,
        }
    }

    /// `true` for differential terms.
    pub fn is_differential(self) -> bool {
        matches!(self, Shape::Diff(_))
    }

    /// `true` for integral terms `f·∫·g`.
    pub fn is_integral(self) -> bool {
        matches!(self, Shape::Int)
    }

    /// `true` for initial terms (containing a functional).
    pub fn is_initial(self) -> bool {
        matches!(self, Shape::Init(..) | Shape::InitInt(_))
    }

    /// The word with the given coefficients in the slots.
    pub(crate) fn word<E: Clone>(self, slots: &[E]) -> Vec<Item<E>> {
        use Item::*;
        let c = |k: usize| C(slots[k].clone());
        let mut w = match self {
            Shape::Diff(_) => vec![c(0)],
            Shape::Int => vec![c(0), I, c(1)],
            Shape::Init(k, _) => vec![c(0), P(k), c(1)],
            Shape::InitInt(k) => vec![c(0), P(k), c(1), I, c(2)],
        };
        if let Shape::Diff(j) | Shape::Init(_, j) = self {
            w.extend(std::iter::repeat(D).take(j as usize));
        }
        w
    }
}

/// A canonical sum of normal-form terms.
///
/// Each term is addressed by its shape and the basis-key word of its
/// coefficient slots in the tensor product over the constants; terms are
/// ordered differential, integral, initial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm<K: Ord, S> {
    terms: BTreeMap<(Shape, Vec<K>), S>,
}

impl<K: Ord + Clone, S: crate::scalar::Scalar> Default for NormalForm<K, S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone, S: crate::scalar::Scalar> NormalForm<K, S> {
    /// The zero operator.
    pub fn zero() -> Self {
        NormalForm { terms: BTreeMap::new() }
    }

    /// `true` for the zero operator.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of basis terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// `true` if there are no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The terms: `(shape, slot keys) ↦ scalar`.
    pub fn terms(&self) -> &BTreeMap<(Shape, Vec<K>), S> {
        &self.terms
    }

    pub(crate) fn add_term(&mut self, key: (Shape, Vec<K>), c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn filter(&self, keep: impl Fn(Shape) -> bool) -> Self {
        NormalForm { terms: self.terms.iter().filter(|((s, _), _)| keep(*s)).map(|(k, v)| (k.clone(), v.clone())).collect() }
    }

    /// The differential part `Σ f·∂ʲ`.
    pub fn differential_part(&self) -> Self {
        self.filter(Shape::is_differential)
    }

    /// The integral part `Σ f·∫·g`.
    pub fn integral_part(&self) -> Self {
        self.filter(Shape::is_integral)
    }

    /// The initial part (terms with functionals).
    pub fn initial_part(&self) -> Self {
        self.filter(Shape::is_initial)
    }

    /// Splits into differential, integral and initial parts.
    pub fn decompose(&self) -> (Self, Self, Self) {
        (self.differential_part(), self.integral_part(), self.initial_part())
    }

    /// `true` if only differential terms occur.
    pub fn is_differential(&self) -> bool {
        self.terms.keys().all(|(s, _)| s.is_differential())
    }

    /// `true` if only initial terms occur.
    pub fn is_initial(&self) -> bool {
        self.terms.keys().all(|(s, _)| s.is_initial())
    }

    /// Highest derivative order among differential terms.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().filter_map(|(s, _)| if let Shape::Diff(j) = s { Some(*j) } else { None }).max()
    }
}

/// Outcome of an equality proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proof<N> {
    /// Both sides have the same normal form.
    Equal,
    /// The normal form of the difference is nonzero.
    Unequal {
        /// Normal form of `lhs − rhs`.
        witness: N,
    },
}

impl<N> Proof<N> {
    /// `true` for [`Proof::Equal`].
    pub fn is_equal(&self) -> bool {
        matches!(self, Proof::Equal)
    }
}

/// The operator ring over a coefficient ring and a table of functionals.
#[derive(Clone, Debug)]
pub struct OpAlg<R: IdRing> {
    /// Coefficient ring.
    pub ring: R,
    /// Functionals; index `0` is `E`.
    pub funcs: FunctionalTable<R::Elem>,
}

impl<R: IdRing> OpAlg<R> {
    /// Operators over `ring` with only the evaluation `E`.
    pub fn new(ring: R) -> Self {
        OpAlg { ring, funcs: FunctionalTable::new() }
    }

    /// Operators over `ring` with a given functional table.
    pub fn with_functionals(ring: R, funcs: FunctionalTable<R::Elem>) -> Self {
        OpAlg { ring, funcs }
    }

    /// Operators over `ring` where `E` is used multiplicatively
    /// (`E·f = (Ef)·E`); sound only for multiplicative evaluations.
    pub fn multiplicative(ring: R) -> Self {
        OpAlg { ring, funcs: FunctionalTable::new().with_multiplicative_e() }
    }

    /// Adds a functional; see [`FunctionalTable::add`].
    pub fn add_functional(&mut self, name: &str, map: FunctionalFn<R::Elem>, multiplicative: bool) -> Result<usize> {
        self.funcs.add(&self.ring, name, map, multiplicative)
    }

    fn rewriter(&self) -> Rewriter<'_, R> {
        Rewriter { ring: &self.ring, funcs: &self.funcs }
    }

    /// Collects irreducible words into a normal form.
    fn collect(&self, terms: Vec<Term<R::Scalar, R::Elem>>) -> Nf<R> {
        let mut out = NormalForm::zero();
        let one = self.ring.one();
        for (c, w) in terms {
            let (shape, slots) = classify(&w, &one);
            let refs: Vec<&R::Elem> = slots.iter().collect();
            for (keys, d) in self.ring.tensor_coords(&refs) {
                out.add_term((shape, keys), c.clone() * d);
            }
        }
        out
    }

    /// Reduces scalar multiples of words with the given strategy.
    pub fn reduce_words(&self, terms: Vec<(R::Scalar, Vec<Item<R::Elem>>)>, strategy: Strategy, trace: Option<&mut Vec<TraceStep>>) -> Nf<R> {
        self.collect(self.rewriter().reduce(terms, strategy, trace))
    }

    /// Expands an expression into a sum of words.
    pub fn expand(&self, e: &OpExpr<R::Elem>) -> Vec<(R::Scalar, Vec<Item<R::Elem>>)> {
        match e {
            OpExpr::Coeff(f) => vec![(R::Scalar::one(), vec![Item::C(f.clone())])],
            OpExpr::Gen(Gen::D) => vec![(R::Scalar::one(), vec![Item::D])],
            OpExpr::Gen(Gen::I) => vec![(R::Scalar::one(), vec![Item::I])],
            OpExpr::Gen(Gen::Phi(k)) => vec![(R::Scalar::one(), vec![Item::P(*k)])],
            OpExpr::Sum(v) => v.iter().flat_map(|t| self.expand(t)).collect(),
            OpExpr::Prod(v) => {
                let mut acc = vec![(R::Scalar::one(), Vec::new())];
                for factor in v {
                    let f = self.expand(factor);
                    let mut next = Vec::with_capacity(acc.len() * f.len());
                    for (c, w) in &acc {
                        for (d, w2) in &f {
                            let mut w3 = w.clone();
                            w3.extend(w2.iter().cloned());
                            next.push((c.clone() * d.clone(), w3));
                        }
                    }
                    acc = next;
                }
                acc
            }
        }
    }

    /// The normal form of an expression (leftmost strategy).
    pub fn normalize(&self, e: &OpExpr<R::Elem>) -> Nf<R> {
        self.reduce_words(self.expand(e), Strategy::Leftmost, None)
    }

    /// The normal form with an explicit strategy and optional trace.
    pub fn normalize_with(&self, e: &OpExpr<R::Elem>, strategy: Strategy, trace: Option<&mut Vec<TraceStep>>) -> Nf<R> {
        self.reduce_words(self.expand(e), strategy, trace)
    }

    /// Elaborates operator text in an environment.
    pub fn parse(&self, text: &str, env: &Env<R::Elem>) -> Result<OpExpr<R::Elem>> {
        parse_operator(&self.ring, &self.funcs, env, text)
    }

    /// Elaborates a parsed expression.
    pub fn elaborate(&self, e: &Expr, env: &Env<R::Elem>) -> Result<OpExpr<R::Elem>> {
        elaborate(&self.ring, &self.funcs, env, e)
    }

    /// Parses and normalizes operator text without definitions.
    pub fn nf(&self, text: &str) -> Result<Nf<R>> {
        Ok(self.normalize(&self.parse(text, &Env::new())?))
    }

    /// Words representing the terms of a normal form (one word per basis
    /// term, with basis elements in the slots).
    pub fn words(&self, a: &Nf<R>) -> Vec<(R::Scalar, Vec<Item<R::Elem>>)> {
        a.terms
            .iter()
            .map(|((shape, keys), c)| {
                let slots: Vec<R::Elem> = keys.iter().map(|k| self.ring.basis_elem(k)).collect();
                (c.clone(), shape.word(&slots))
            })
            .collect()
    }

    /// The operator `1`.
    pub fn one(&self) -> Nf<R> {
        self.word(&[])
    }

    /// Multiplication by `f`.
    pub fn coeff(&self, f: &R::Elem) -> Nf<R> {
        self.word(&[Item::C(f.clone())])
    }

    /// Multiplication by the constant `c`.
    pub fn scalar(&self, c: &R::Scalar) -> Nf<R> {
        self.one().scale(c)
    }

    /// `∂`.
    pub fn d(&self) -> Nf<R> {
        self.word(&[Item::D])
    }

    /// `∫`.
    pub fn i(&self) -> Nf<R> {
        self.word(&[Item::I])
    }

    /// `E`.
    pub fn e(&self) -> Nf<R> {
        self.word(&[Item::P(0)])
    }

    /// The functional with index `k`.
    pub fn phi(&self, k: usize) -> Nf<R> {
        self.word(&[Item::P(k)])
    }

    /// The normal form of a single word.
    pub fn word(&self, w: &[Item<R::Elem>]) -> Nf<R> {
        self.reduce_words(vec![(R::Scalar::one(), w.to_vec())], Strategy::Leftmost, None)
    }

    /// Product `a·b`.
    pub fn mul(&self, a: &Nf<R>, b: &Nf<R>) -> Nf<R> {
        let wa = self.words(a);
        let wb = self.words(b);
        let mut terms = Vec::with_capacity(wa.len() * wb.len());
        for (c, w) in &wa {
            for (d, w2) in &wb {
                let mut w3 = w.clone();
                w3.extend(w2.iter().cloned());
                terms.push((c.clone() * d.clone(), w3));
            }
        }
        self.reduce_words(terms, Strategy::Leftmost, None)
    }

    /// Product of a list of factors, left to right.
    pub fn product(&self, factors: &[Nf<R>]) -> Nf<R> {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `a^n`.
    pub fn pow(&self, a: &Nf<R>, n: u32) -> Nf<R> {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Decides `a = b` in the operator ring.
    pub fn prove_equal(&self, a: &OpExpr<R::Elem>, b: &OpExpr<R::Elem>) -> Proof<Nf<R>> {
        self.compare(&self.normalize(a), &self.normalize(b))
    }

    /// Compares two normal forms.
    pub fn compare(&self, a: &Nf<R>, b: &Nf<R>) -> Proof<Nf<R>> {
        let d = a.sub(b);
        if d.is_zero() {
            Proof::Equal
        } else {
            Proof::Unequal { witness: d }
        }
    }

    /// The action of a normal form on a ring element.
    pub fn apply(&self, a: &Nf<R>, f: &R::Elem) -> R::Elem {
        let ring = &self.ring;
        let mut acc = ring.zero();
        for ((shape, keys), c) in &a.terms {
            let b: Vec<R::Elem> = keys.iter().map(|k| ring.basis_elem(k)).collect();
            let v = match *shape {
                Shape::Diff(j) => ring.mul(&b[0], &ring.derive_n(f, j as usize)),
                Shape::Int => ring.mul(&b[0], &ring.integrate(&ring.mul(&b[1], f))),
                Shape::Init(k, j) => {
                    let inner = ring.mul(&b[1], &ring.derive_n(f, j as usize));
                    ring.mul(&b[0], &self.funcs.apply(ring, k, &inner))
                }
                Shape::InitInt(k) => {
                    let inner = ring.mul(&b[1], &ring.integrate(&ring.mul(&b[2], f)));
                    ring.mul(&b[0], &self.funcs.apply(ring, k, &inner))
                }
            };
            acc = ring.add(&acc, &ring.scale(c, &v));
        }
        acc
    }

    /// The action of an unreduced expression, by direct recursion.
    pub fn apply_expr(&self, e: &OpExpr<R::Elem>, f: &R::Elem) -> R::Elem {
        apply_expr(&self.ring, &self.funcs, e, f)
    }

    /// Groups the terms of `a` and returns `(shape, first-slot element,
    /// remaining slot elements)`. Terms `f·φ·h·∫·g` are first summed over
    /// the middle slot, so that `h ∈ ∫R` stays visible as one element; all
    /// other terms are grouped by shape and all slots but the first.
    pub fn grouped(&self, a: &Nf<R>) -> Vec<(Shape, R::Elem, Vec<R::Elem>)> {
        let ring = &self.ring;
        let mut groups: BTreeMap<(Shape, Vec<R::Key>), R::Elem> = BTreeMap::new();
        let mut middles: BTreeMap<(Shape, R::Key, R::Key), R::Elem> = BTreeMap::new();
        for ((shape, keys), c) in &a.terms {
            if let Shape::InitInt(_) = shape {
                let entry = middles.entry((*shape, keys[0].clone(), keys[2].clone())).or_insert_with(|| ring.zero());
                *entry = ring.add(entry, &ring.scale(c, &ring.basis_elem(&keys[1])));
                continue;
            }
            let first = ring.scale(c, &ring.basis_elem(&keys[0]));
            let entry = groups.entry((*shape, keys[1..].to_vec())).or_insert_with(|| ring.zero());
            *entry = ring.add(entry, &first);
        }
        let mut out: Vec<(Shape, R::Elem, Vec<R::Elem>)> = groups
            .into_iter()
            .filter(|(_, f)| !ring.is_zero(f))
            .map(|((shape, rest), f)| (shape, f, rest.iter().map(|k| ring.basis_elem(k)).collect()))
            .collect();
        let mut init_int: Vec<(Shape, R::Elem, Vec<R::Elem>)> = Vec::new();
        for ((shape, f, g), h) in middles {
            if ring.is_zero(&h) {
                continue;
            }
            let g = ring.basis_elem(&g);
            let f = ring.basis_elem(&f);
            match init_int.iter_mut().find(|(s, _, rest)| *s == shape && rest[0] == h && rest[1] == g) {
                Some(entry) => entry.1 = ring.add(&entry.1, &f),
                None => init_int.push((shape, f, vec![h, g])),
            }
        }
        out.extend(init_int.into_iter().filter(|(_, f, _)| !ring.is_zero(f)));
        out
    }

    /// Prints a normal form in the operator syntax; the output parses back
    /// to an equal operator.
    pub fn format(&self, a: &Nf<R>) -> String {
        let ring = &self.ring;
        let one = ring.one();
        let terms = self
            .grouped(a)
            .into_iter()
            .map(|(shape, f, rest)| {
                let mut factors: Vec<String> = Vec::new();
                let gen = |s: &mut Vec<String>, g: String| s.push(g);
                let elem = |s: &mut Vec<String>, e: &R::Elem| {
                    if *e != one {
                        s.push(paren(&ring.format(e)));
                    }
                };
                match shape {
                    Shape::Diff(j) => push_d(&mut factors, j),
                    Shape::Int => {
                        gen(&mut factors, "i".into());
                        elem(&mut factors, &rest[0]);
                    }
                    Shape::Init(k, j) => {
                        gen(&mut factors, self.funcs.display_name(k));
                        elem(&mut factors, &rest[0]);
                        push_d(&mut factors, j);
                    }
                    Shape::InitInt(k) => {
                        gen(&mut factors, self.funcs.display_name(k));
                        elem(&mut factors, &rest[0]);
                        gen(&mut factors, "i".into());
                        elem(&mut factors, &rest[1]);
                    }
                }
                let text = ring.format(&f);
                let body = text.strip_prefix('-').unwrap_or(&text);
                let single = !(body.contains(" + ") || body.contains(" - "));
                let (neg, lead) = if single { (text.starts_with('-'), body.to_string()) } else { (false, format!("({text})")) };
                if lead != "1" || factors.is_empty() {
                    factors.insert(0, lead);
                }
                (neg, factors.join("*"))
            })
            .collect();
        join_terms(terms)
    }

    /// Canonical JSON: differential, integral and initial arrays of terms
    /// with basis-coordinate coefficients.
    pub fn to_json(&self, a: &Nf<R>) -> Value {
        let ring = &self.ring;
        let mut diff = Vec::new();
        let mut int = Vec::new();
        let mut init = Vec::new();
        for ((shape, keys), c) in &a.terms {
            let slots: Vec<String> = keys.iter().map(|k| ring.format(&ring.basis_elem(k))).collect();
            let mut entry = json!({ "coeff": c.to_string(), "slots": slots });
            match shape {
                Shape::Diff(j) => {
                    entry["order"] = json!(j);
                    diff.push(entry);
                }
                Shape::Int => int.push(entry),
                Shape::Init(k, j) => {
                    entry["functional"] = json!(self.funcs.display_name(*k));
                    entry["tail"] = json!({ "d": j });
                    init.push(entry);
                }
                Shape::InitInt(k) => {
                    entry["functional"] = json!(self.funcs.display_name(*k));
                    entry["tail"] = json!("i");
                    init.push(entry);
                }
            }
        }
        json!({ "text": self.format(a), "differential": diff, "integral": int, "initial": init })
    }

    /// Formats a term list (used by traces and diagnostics).
    pub fn format_word(&self, c: &R::Scalar, w: &[Item<R::Elem>]) -> String {
        format_term(&self.ring, &self.funcs, c, w)
    }
}

fn push_d(out: &mut Vec<String>, j: u32) {
    match j {
        0 => {}
        1 => out.push("d".into()),
        _ => out.push(format!("d^{j}")),
    }
}

/// Reads an irreducible word as a normal-form shape with its slots.
fn classify<E: Clone>(w: &[Item<E>], one: &E) -> (Shape, Vec<E>) {
    let mut pos = 0;
    let take_c = |pos: &mut usize| -> E {
        if let Some(Item::C(f)) = w.get(*pos) {
            *pos += 1;
            f.clone()
        } else {
            one.clone()
        }
    };
    let f = take_c(&mut pos);
    let count_d = |pos: usize| -> u32 {
        let n = w[pos..].iter().take_while(|it| matches!(it, Item::D)).count();
        assert_eq!(pos + n, w.len(), "irreducible word outside the normal-form shapes");
        n as u32
    };
    match w.get(pos) {
        None | Some(Item::D) => (Shape::Diff(count_d(pos)), vec![f]),
        Some(Item::I) => {
            pos += 1;
            let g = take_c(&mut pos);
            assert_eq!(pos, w.len(), "irreducible word outside the normal-form shapes");
            (Shape::Int, vec![f, g])
        }
        Some(Item::P(k)) => {
            let k = *k;
            pos += 1;
            let h = take_c(&mut pos);
            if let Some(Item::I) = w.get(pos) {
                pos += 1;
                let g = take_c(&mut pos);
                assert_eq!(pos, w.len(), "irreducible word outside the normal-form shapes");
                (Shape::InitInt(k), vec![f, h, g])
            } else {
                (Shape::Init(k, count_d(pos)), vec![f, h])
            }
        }
        Some(Item::C(_)) => unreachable!("adjacent coefficients are merged"),
    }
}
