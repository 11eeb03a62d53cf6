//! Hurwitz series over an exact coefficient field.

use std::marker::PhantomData;

use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::ring::{IdRing, Sparse};
use crate::scalar::{binomial, Scalar};
use crate::syntax::{coeff_prefix, join_terms, Expr};

/// Element: index `i` ↦ coefficient `aᵢ` of the sequence `(a₀, a₁, …)`.
pub type Hurwitz<K> = Sparse<usize, K>;

/// Hurwitz series `(a₀, a₁, …)` with the product
/// `(ab)ₙ = Σₖ C(n,k) aₖ bₙ₋ₖ`, `∂` the left shift and `∫` the right shift
/// inserting `0`; the evaluation returns `a₀`.
///
/// Elements are finitely supported, so `∂∫ = id` and `∫∂ = id − E` hold
/// exactly; `len` bounds only sampling and is not a truncation. The basis
/// element `h(i)` is the unit sequence at position `i` (the analogue of
/// `xⁱ/i!`), and `x = h(1)`. Over `Z/pZ` the ring has zero divisors
/// (`h(1)ᵖ = p!·h(p) = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzRing<K: Scalar> {
    /// Support bound used when sampling random elements.
    pub len: usize,
    _k: PhantomData<K>,
}

impl<K: Scalar> HurwitzRing<K> {
    /// Creates the ring; `len` bounds the support of sampled elements.
    pub fn new(len: usize) -> Self {
        HurwitzRing { len: len.max(1), _k: PhantomData }
    }

    /// The basis element `h(i)`.
    pub fn h(&self, i: usize) -> Hurwitz<K> {
        Sparse::term(i, K::one())
    }

    /// The dense coefficient vector `(a₀, …, a_{N−1})`.
    pub fn to_vec(&self, a: &Hurwitz<K>, n: usize) -> Vec<K> {
        (0..n).map(|i| a.coeff(&i)).collect()
    }
}

impl<K: Scalar> IdRing for HurwitzRing<K> {
    type Scalar = K;
    type Elem = Hurwitz<K>;
    type Key = usize;

    fn name(&self) -> String {
        match K::characteristic() {
            0 => "Hurwitz series over Q".into(),
            p => format!("Hurwitz series over Z/{p}Z"),
        }
    }
    fn zero(&self) -> Hurwitz<K> {
        Sparse::zero()
    }
    fn one(&self) -> Hurwitz<K> {
        Sparse::term(0, K::one())
    }
    fn constant(&self, c: &K) -> Hurwitz<K> {
        Sparse::term(0, c.clone())
    }
    fn add(&self, a: &Hurwitz<K>, b: &Hurwitz<K>) -> Hurwitz<K> {
        a.plus(b)
    }
    fn neg(&self, a: &Hurwitz<K>) -> Hurwitz<K> {
        a.negated()
    }
    fn mul(&self, a: &Hurwitz<K>, b: &Hurwitz<K>) -> Hurwitz<K> {
        a.bilinear(b, |&i, &j| Sparse::term(i + j, binomial::<K>(i + j, i)))
    }
    fn scale(&self, c: &K, a: &Hurwitz<K>) -> Hurwitz<K> {
        a.scaled(c)
    }
    fn is_zero(&self, a: &Hurwitz<K>) -> bool {
        a.0.is_empty()
    }
    fn derive(&self, a: &Hurwitz<K>) -> Hurwitz<K> {
        a.map_linear(|&i| if i == 0 { Sparse::zero() } else { Sparse::term(i - 1, K::one()) })
    }
    fn integrate(&self, a: &Hurwitz<K>) -> Hurwitz<K> {
        a.map_linear(|&i| Sparse::term(i + 1, K::one()))
    }
    fn evaluate(&self, a: &Hurwitz<K>) -> Hurwitz<K> {
        Sparse::term(0, a.coeff(&0))
    }
    fn coords(&self, a: &Hurwitz<K>) -> Vec<(usize, K)> {
        a.coords()
    }
    fn basis_elem(&self, k: &usize) -> Hurwitz<K> {
        self.h(*k)
    }
    fn is_domain(&self) -> bool {
        K::characteristic() == 0
    }
    fn invert(&self, a: &Hurwitz<K>) -> Option<Hurwitz<K>> {
        if a.0.len() == 1 {
            if let Some(c) = a.0.get(&0) {
                return c.inv().map(|i| Sparse::term(0, i));
            }
        }
        None
    }
    fn format(&self, a: &Hurwitz<K>) -> String {
        let terms = a
            .0
            .iter()
            .map(|(&i, c)| {
                if i == 0 {
                    coeff_prefix(c, true)
                } else {
                    let (neg, pre) = coeff_prefix(c, false);
                    (neg, format!("{pre}h({i})"))
                }
            })
            .collect();
        join_terms(terms)
    }
    fn atom(&self, name: &str, args: &[Expr]) -> Result<Hurwitz<K>> {
        match (name, args) {
            ("x", []) => Ok(self.h(1)),
            ("h", [Expr::Int(n)]) => {
                let i = n.to_usize().ok_or_else(|| Error::Elaborate(format!("index {n} out of range")))?;
                Ok(self.h(i))
            }
            _ => Err(Error::Elaborate(format!("unknown atom '{name}' in Hurwitz series (use x or h(n))"))),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore, size: usize) -> Hurwitz<K> {
        let mut f = Sparse::zero();
        let bound = self.len.min(size.max(1) + 2);
        for i in 0..bound {
            if rng.gen_bool(0.6) {
                f.add_term(i, super::small_scalar::<K>(rng));
            }
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Zp, Q};
    use crate::syntax::parse_elem;

    #[test]
    fn hurwitz_product_is_binomial() {
        let r = HurwitzRing::<Q>::new(8);
        assert_eq!(r.mul(&r.h(2), &r.h(3)), r.scale(&crate::scalar::qi(10), &r.h(5)));
    }

    #[test]
    fn characteristic_five_has_zero_divisors() {
        let r = HurwitzRing::<Zp<5>>::new(8);
        let x = r.h(1);
        assert!(r.is_zero(&r.pow(&x, 5)));
        assert!(!r.is_domain());
        assert_eq!(r.integrate(&r.derive(&r.h(3))), r.h(3));
    }

    #[test]
    fn print_parse_round_trip() {
        let r = HurwitzRing::<Zp<5>>::new(8);
        let f = parse_elem(&r, "3 + 2*h(1) + 4*h(6)").unwrap();
        assert_eq!(r.format(&f), "3 + 2*h(1) + 4*h(6)");
        assert_eq!(parse_elem(&r, &r.format(&f)).unwrap(), f);
    }
}
