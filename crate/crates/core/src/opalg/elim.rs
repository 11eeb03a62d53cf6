//! Constructive elimination of integrals from operators.
//!
//! Over a commutative integral domain whose constants are the base field:
//!
//! - any operator `L` that is not initial can be multiplied from the left by
//!   first-order factors `(h·∂ − ∂h)` until it becomes a nonzero differential
//!   operator;
//! - any monic initial operator `L = E·L₀ + Σ E·fᵢ·∫·gᵢ` can be multiplied
//!   from the right by factors `(h·∂ + 2∂h)` until it has the form `E·L̃`
//!   with `L̃` differential;
//! - a nonzero differential operator `L = Σ fⱼ∂ʲ` with lowest nonzero
//!   coefficient `f_k` satisfies `L·∫ᵏ·E = f_k·E`.
//!
//! Each step removes one term of a representation `Σ fᵢ ⊗ Tᵢ` with linearly
//! independent `fᵢ` and `Tᵢ`, found by an exact rank factorization of the
//! coordinate matrix.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{rank_factorization, Row};
use crate::ring::IdRing;

use super::normal::{NormalForm, OpAlg, Shape};
use super::rewrite::Item;
use super::Nf;

/// Result of the left elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftElimination<E, N> {
    /// `h₁, …, h_n` such that `(h₁∂ − ∂h₁)⋯(h_n∂ − ∂h_n)·L` is differential.
    pub factors: Vec<E>,
    /// The resulting nonzero differential operator.
    pub result: N,
}

/// Result of the right elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightElimination<E, N> {
    /// `h_n, …, h₁` in the order of multiplication: the product is
    /// `L·(h_n∂ + 2∂h_n)⋯(h₁∂ + 2∂h₁)`.
    pub factors: Vec<E>,
    /// The product, of the form `E·L̃`.
    pub result: N,
    /// The differential operator `L̃`.
    pub differential: N,
}

impl<R: IdRing> OpAlg<R> {
    fn require_domain(&self) -> Result<()> {
        if !self.ring.is_commutative() || !self.ring.is_domain() || !self.ring.constants_are_scalars() {
            return Err(Error::DomainRequired);
        }
        Ok(())
    }

    /// The element `Σ_k a_k b_k` from basis coefficients.
    fn combine(&self, coeffs: impl Iterator<Item = (R::Key, R::Scalar)>) -> R::Elem {
        coeffs.fold(self.ring.zero(), |acc, (k, c)| self.ring.add(&acc, &self.ring.scale(&c, &self.ring.basis_elem(&k))))
    }

    /// Multiplies `L` from the left by factors `h·∂ − ∂h` until no integral
    /// or initial terms remain.
    pub fn eliminate_integrals_left(&self, l: &Nf<R>) -> Result<LeftElimination<R::Elem, Nf<R>>> {
        self.require_domain()?;
        if l.differential_part().is_zero() && l.integral_part().is_zero() {
            return Err(Error::IsInitialOperator);
        }
        let mut cur = l.clone();
        let mut factors = Vec::new();
        let mut prev_rank = usize::MAX;
        loop {
            let mut rows: BTreeMap<R::Key, Row<(Shape, Vec<R::Key>), R::Scalar>> = BTreeMap::new();
            for ((shape, keys), c) in cur.terms() {
                if !shape.is_differential() {
                    rows.entry(keys[0].clone()).or_default().insert((*shape, keys[1..].to_vec()), c.clone());
                }
            }
            if rows.is_empty() {
                break;
            }
            let rf = rank_factorization(&rows);
            let r = rf.rank();
            if r >= prev_rank {
                return Err(Error::HypothesisViolated("left factors did not become fewer; linear independence could not be certified".into()));
            }
            prev_rank = r;
            let h = self.combine(rf.coeffs.iter().map(|(k, a)| (k.clone(), a[r - 1].clone())));
            let factor = self.word(&[Item::C(h.clone()), Item::D]).sub(&self.coeff(&self.ring.derive(&h)));
            cur = self.mul(&factor, &cur);
            factors.insert(0, h);
        }
        if cur.is_zero() {
            return Err(Error::HypothesisViolated("elimination produced the zero operator".into()));
        }
        Ok(LeftElimination { factors, result: cur })
    }

    /// Multiplies a monic initial operator `E·L₀ + Σ E·fᵢ·∫·gᵢ` from the
    /// right by factors `h·∂ + 2∂h` until it has the form `E·L̃`.
    pub fn eliminate_integrals_right(&self, l: &Nf<R>) -> Result<RightElimination<R::Elem, Nf<R>>> {
        self.require_domain()?;
        if l.is_zero() {
            return Err(Error::ZeroOperator);
        }
        let one = self.ring.coords(&self.ring.one());
        let one_key = match one.as_slice() {
            [(k, c)] if c.is_one() => k.clone(),
            _ => return Err(Error::DomainRequired),
        };
        let monic = l.terms().keys().all(|(shape, keys)| matches!(shape, Shape::Init(0, _) | Shape::InitInt(0)) && keys[0] == one_key);
        if !monic {
            return Err(Error::WrongShape("expected a monic initial operator E·L₀ + Σ E·f·∫·g".into()));
        }
        let mut cur = l.clone();
        let mut factors = Vec::new();
        let mut prev_rank = usize::MAX;
        loop {
            let mut rows: BTreeMap<R::Key, Row<R::Key, R::Scalar>> = BTreeMap::new();
            for ((shape, keys), c) in cur.terms() {
                if let Shape::InitInt(_) = shape {
                    rows.entry(keys[2].clone()).or_default().insert(keys[1].clone(), c.clone());
                }
            }
            if rows.is_empty() {
                break;
            }
            let rf = rank_factorization(&rows);
            let r = rf.rank();
            if r >= prev_rank {
                return Err(Error::HypothesisViolated("right factors did not become fewer; linear independence could not be certified".into()));
            }
            prev_rank = r;
            let g = self.combine(rf.coeffs.iter().map(|(k, a)| (k.clone(), a[r - 1].clone())));
            let two = R::Scalar::one() + R::Scalar::one();
            let dg2 = self.ring.scale(&two, &self.ring.derive(&g));
            let factor = self.word(&[Item::C(g.clone()), Item::D]).add(&self.coeff(&dg2));
            cur = self.mul(&cur, &factor);
            factors.push(g);
        }
        let mut differential = NormalForm::zero();
        for ((shape, keys), c) in cur.terms() {
            match shape {
                Shape::Init(0, j) if keys[0] == one_key => differential.add_term((Shape::Diff(*j), vec![keys[1].clone()]), c.clone()),
                _ => return Err(Error::HypothesisViolated("right elimination left a term outside E·L̃".into())),
            }
        }
        if differential.is_zero() {
            return Err(Error::HypothesisViolated("elimination produced the zero operator".into()));
        }
        Ok(RightElimination { factors, result: cur, differential })
    }

    /// For a nonzero differential `L = Σ fⱼ∂ʲ`, returns the least `k` with
    /// `f_k ≠ 0` and `f_k`; verifies `L·∫ᵏ·E = f_k·E`.
    pub fn extract_fe(&self, l: &Nf<R>) -> Result<(u32, R::Elem)> {
        if l.is_zero() {
            return Err(Error::ZeroOperator);
        }
        if !l.is_differential() {
            return Err(Error::WrongShape("expected a differential operator".into()));
        }
        let k = l.terms().keys().filter_map(|(s, _)| if let Shape::Diff(j) = s { Some(*j) } else { None }).min().expect("nonzero");
        let fk = self.combine(l.terms().iter().filter(|((s, _), _)| *s == Shape::Diff(k)).map(|((_, keys), c)| (keys[0].clone(), c.clone())));
        let lhs = self.product(&[l.clone(), self.pow(&self.i(), k), self.e()]);
        let rhs = self.mul(&self.coeff(&fk), &self.e());
        if lhs != rhs {
            return Err(Error::HypothesisViolated("L·∫ᵏ·E differs from f_k·E".into()));
        }
        Ok((k, fk))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{LaurentLogRing, PolyRing};

    #[test]
    fn left_elimination_of_laurent_example() {
        let alg = OpAlg::new(LaurentLogRing);
        let l = alg.nf("x*i*x^-1 + d").unwrap();
        let out = alg.eliminate_integrals_left(&l).unwrap();
        assert_eq!(out.factors, vec![alg.ring.x()]);
        assert_eq!(out.result, alg.nf("x*d^2 - d + x").unwrap());
    }

    #[test]
    fn right_elimination_of_laurent_example() {
        let alg = OpAlg::new(LaurentLogRing);
        let l = alg.nf("e*x*i*x^-1").unwrap();
        let out = alg.eliminate_integrals_right(&l).unwrap();
        assert_eq!(out.factors, vec![alg.ring.x_pow(-1)]);
        assert!(out.result.is_initial());
        assert_eq!(alg.mul(&alg.e(), &out.differential), out.result);
    }

    #[test]
    fn extract_lowest_coefficient() {
        let alg = OpAlg::new(PolyRing);
        let (k, f) = alg.extract_fe(&alg.nf("x*d + x^2").unwrap()).unwrap();
        assert_eq!(k, 0);
        assert_eq!(f, alg.ring.monomial(2, crate::scalar::qi(1)));
        let (k, _) = alg.extract_fe(&alg.nf("d^2").unwrap()).unwrap();
        assert_eq!(k, 2);
    }
}
