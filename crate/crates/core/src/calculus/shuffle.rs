//! Shuffle products and nested integrals.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{IdRing, TensorCoords};
use crate::scalar::Scalar;

/// A linear combination of words `a₁⊗…⊗aₙ`, each representing the nested
/// integral `∫a₁∫a₂…∫aₙ`; the empty word represents `1`.
///
/// Identical words are merged and zero coefficients dropped. Equality of
/// words is syntactic; use [`ShuffleTensor::coords`] for equality in the
/// tensor product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleTensor<E, S> {
    terms: Vec<(S, Vec<E>)>,
}

impl<E: Clone + PartialEq, S: Scalar> Default for ShuffleTensor<E, S> {
    fn default() -> Self {
        ShuffleTensor::zero()
    }
}

impl<E: Clone + PartialEq, S: Scalar> ShuffleTensor<E, S> {
    /// The zero tensor.
    pub fn zero() -> Self {
        ShuffleTensor { terms: Vec::new() }
    }

    /// The single word with coefficient 1.
    pub fn word(w: Vec<E>) -> Self {
        ShuffleTensor { terms: vec![(S::one(), w)] }
    }

    /// The terms `(coefficient, word)`.
    pub fn terms(&self) -> &[(S, Vec<E>)] {
        &self.terms
    }

    /// Number of distinct words.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// `true` for the zero tensor.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·w`, merging with an identical word.
    pub fn add_term(&mut self, c: S, w: Vec<E>) {
        if c.is_zero() {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|(_, v)| *v == w) {
            let sum = self.terms[pos].0.clone() + c;
            if sum.is_zero() {
                self.terms.remove(pos);
            } else {
                self.terms[pos].0 = sum;
            }
        } else {
            self.terms.push((c, w));
        }
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, w) in &other.terms {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (d, w) in &self.terms {
            out.add_term(c.clone() * d.clone(), w.clone());
        }
        out
    }

    /// `self ⊗ other`, concatenating words.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (c, a) in &self.terms {
            for (d, b) in &other.terms {
                let mut w = a.clone();
                w.extend(b.iter().cloned());
                out.add_term(c.clone() * d.clone(), w);
            }
        }
        out
    }

    /// The bilinear extension of the shuffle product.
    pub fn shuffle(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (c, a) in &self.terms {
            for (d, b) in &other.terms {
                for (e, w) in shuffle::<E, S>(a, b).terms {
                    out.add_term(c.clone() * d.clone() * e, w);
                }
            }
        }
        out
    }

    /// The nested integrals summed in the ring.
    pub fn evaluate<R: IdRing<Elem = E, Scalar = S>>(&self, ring: &R) -> E {
        self.terms.iter().fold(ring.zero(), |acc, (c, w)| ring.add(&acc, &ring.scale(c, &nested_integral(ring, w))))
    }

    /// Exact coordinates in the tensor product over the constants.
    pub fn coords<R: IdRing<Elem = E, Scalar = S>>(&self, ring: &R) -> TensorCoords<R::Key, S> {
        let mut out: TensorCoords<R::Key, S> = TensorCoords::new();
        for (c, w) in &self.terms {
            let refs: Vec<&E> = w.iter().collect();
            for (k, d) in ring.tensor_coords(&refs) {
                let e = out.entry(k).or_insert_with(S::zero);
                *e = e.clone() + c.clone() * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Text such as `2·(x)⊗(1) + (1)`; the empty word prints as `ε`.
    pub fn format<R: IdRing<Elem = E, Scalar = S>>(&self, ring: &R) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(c, w)| {
                let body = if w.is_empty() { "ε".to_string() } else { w.iter().map(|a| format!("({})", ring.format(a))).collect::<Vec<_>>().join("⊗") };
                if c.is_one() {
                    body
                } else {
                    format!("{c}·{body}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// JSON: a list of `{coeff, word}` entries.
    pub fn to_json<R: IdRing<Elem = E, Scalar = S>>(&self, ring: &R) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(c, w)| json!({"coeff": c.to_string(), "word": w.iter().map(|a| ring.format(a)).collect::<Vec<_>>()}))
                .collect(),
        )
    }
}

/// The shuffle product of two words: the sum of all `C(m+n, m)`
/// interleavings, by the recursion
/// `a ⧢ b = a₁⊗(a₂ᵐ ⧢ b) + b₁⊗(a ⧢ b₂ⁿ)` with `a ⧢ ε = ε ⧢ a = a`.
pub fn shuffle<E: Clone + PartialEq, S: Scalar>(a: &[E], b: &[E]) -> ShuffleTensor<E, S> {
    if a.is_empty() || b.is_empty() {
        let mut w = a.to_vec();
        w.extend(b.iter().cloned());
        return ShuffleTensor::word(w);
    }
    let left = ShuffleTensor::word(vec![a[0].clone()]).concat(&shuffle(&a[1..], b));
    let right = ShuffleTensor::word(vec![b[0].clone()]).concat(&shuffle(a, &b[1..]));
    left.add(&right)
}

/// The nested integral `∫a₁∫a₂…∫aₙ`, with `1` for the empty word.
pub fn nested_integral<R: IdRing>(ring: &R, w: &[R::Elem]) -> R::Elem {
    w.iter().rev().fold(ring.one(), |acc, a| ring.integrate(&ring.mul(a, &acc)))
}

/// One evaluation term `e(f_{i+1}^m, g_{j+1}^n)·φ(f_1^i ⧢ g_1^j)` of the
/// generalized shuffle relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalTerm<E, S> {
    /// Length `i` of the retained prefix of `f`.
    pub i: usize,
    /// Length `j` of the retained prefix of `g`.
    pub j: usize,
    /// The constant `E(φ(f_{i+1}^m)·φ(g_{j+1}^n))`.
    pub coeff: E,
    /// `f_1^i ⧢ g_1^j`.
    pub shuffle: ShuffleTensor<E, S>,
}

/// The product of two nested integrals expanded as the shuffle plus
/// evaluation terms of lower depth:
/// `φ(f)φ(g) = φ(f⧢g) + Σ_{i<m, j<n} e(f_{i+1}^m, g_{j+1}^n)·φ(f_1^i ⧢ g_1^j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedShuffle<E, S> {
    /// `f ⧢ g`.
    pub shuffle: ShuffleTensor<E, S>,
    /// The evaluation terms with nonzero constant.
    pub eval_terms: Vec<EvalTerm<E, S>>,
}

impl<E: Clone + PartialEq, S: Scalar> GeneralizedShuffle<E, S> {
    /// The right-hand side evaluated in the ring.
    pub fn evaluate<R: IdRing<Elem = E, Scalar = S>>(&self, ring: &R) -> E {
        self.eval_terms
            .iter()
            .fold(self.shuffle.evaluate(ring), |acc, t| ring.add(&acc, &ring.mul(&t.coeff, &t.shuffle.evaluate(ring))))
    }

    /// JSON with the shuffle and the table of evaluation coefficients.
    pub fn to_json<R: IdRing<Elem = E, Scalar = S>>(&self, ring: &R) -> Value {
        json!({
            "shuffle": self.shuffle.to_json(ring),
            "eval_terms": self.eval_terms.iter().map(|t| json!({
                "i": t.i,
                "j": t.j,
                "coeff": ring.format(&t.coeff),
                "shuffle": t.shuffle.to_json(ring),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Expands `φ(f)·φ(g)` by the generalized shuffle relation; the evaluation
/// coefficients are computed in the ring. Requires a commutative ring.
pub fn generalized_shuffle_expand<R: IdRing>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> Result<GeneralizedShuffle<R::Elem, R::Scalar>> {
    if !ring.is_commutative() {
        return Err(Error::CommutativeRequired);
    }
    let (m, n) = (f.len(), g.len());
    let mut eval_terms = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let coeff = ring.evaluate(&ring.mul(&nested_integral(ring, &f[i..]), &nested_integral(ring, &g[j..])));
            if !ring.is_zero(&coeff) {
                eval_terms.push(EvalTerm { i, j, coeff, shuffle: shuffle(&f[..i], &g[..j]) });
            }
        }
    }
    Ok(GeneralizedShuffle { shuffle: shuffle(f, g), eval_terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{LaurentLogRing, PolyRing};
    use crate::scalar::{qi, Q};

    #[test]
    fn single_letters_shuffle_both_ways() {
        let s: ShuffleTensor<char, Q> = shuffle(&['f'], &['g']);
        assert_eq!(s.terms(), &[(qi(1), vec!['f', 'g']), (qi(1), vec!['g', 'f'])]);
        let s: ShuffleTensor<char, Q> = shuffle(&['a', 'b'], &[]);
        assert_eq!(s.terms(), &[(qi(1), vec!['a', 'b'])]);
    }

    #[test]
    fn nested_integrals() {
        let r = PolyRing;
        assert_eq!(nested_integral(&r, &[]), r.one());
        assert_eq!(nested_integral(&r, &[r.one(), r.one()]), r.monomial(2, crate::scalar::q(1, 2)));
        let l = LaurentLogRing;
        assert_eq!(nested_integral(&l, &[l.x_pow(-1)]), l.ln());
    }

    #[test]
    fn laurent_expansion_has_evaluation_term() {
        let l = LaurentLogRing;
        let gs = generalized_shuffle_expand(&l, &[l.x_pow(-2)], &[l.one()]).unwrap();
        assert_eq!(gs.eval_terms.len(), 1);
        assert_eq!(gs.eval_terms[0].coeff, l.constant(&qi(-1)));
        let lhs = l.mul(&nested_integral(&l, &[l.x_pow(-2)]), &nested_integral(&l, &[l.one()]));
        assert_eq!(lhs, l.constant(&qi(-1)));
        assert_eq!(gs.evaluate(&l), lhs);
    }
}
