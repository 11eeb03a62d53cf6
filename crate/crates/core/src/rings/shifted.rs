//! Polynomials with a shifted integration.

use rand::RngCore;

use super::poly::{format_poly, poly_atom, poly_derive, poly_invert, poly_mul, poly_sample, Poly};
use crate::error::Result;
use crate::ring::{IdRing, Sparse};
use crate::scalar::{q, qi, Q};
use crate::syntax::Expr;

/// `Q[x]` with the integration `∫xⁿ = xⁿ⁺¹/(n+1) + c`.
///
/// It is the integration induced by the evaluation `E f = f(0) − c·f′(1)`,
/// which is not multiplicative for `c ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedPolyRing {
    /// The shift `c`.
    pub shift: Q,
}

impl ShiftedPolyRing {
    /// Creates the ring with shift `c`.
    pub fn new(shift: Q) -> Self {
        ShiftedPolyRing { shift }
    }

    /// The variable `x`.
    pub fn x(&self) -> Poly {
        Sparse::term(1, qi(1))
    }

    /// A fixed corpus for multiplicativity checks.
    pub fn corpus(&self) -> Vec<Poly> {
        vec![self.one(), self.x(), Sparse::term(2, qi(1)), self.integrate(&self.one())]
    }
}

impl IdRing for ShiftedPolyRing {
    type Scalar = Q;
    type Elem = Poly;
    type Key = u32;

    fn name(&self) -> String {
        format!("Q[x] with integration shifted by {}", self.shift)
    }
    fn zero(&self) -> Poly {
        Sparse::zero()
    }
    fn one(&self) -> Poly {
        Sparse::term(0, qi(1))
    }
    fn constant(&self, c: &Q) -> Poly {
        Sparse::term(0, c.clone())
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.plus(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.negated()
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        poly_mul(a, b)
    }
    fn scale(&self, c: &Q, a: &Poly) -> Poly {
        a.scaled(c)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.0.is_empty()
    }
    fn derive(&self, a: &Poly) -> Poly {
        poly_derive(a)
    }
    fn integrate(&self, a: &Poly) -> Poly {
        a.map_linear(|&n| {
            let mut t = Sparse::term(n + 1, q(1, n as i64 + 1));
            t.add_term(0, self.shift.clone());
            t
        })
    }
    fn evaluate(&self, a: &Poly) -> Poly {
        // f(0) − c·f′(1)
        let f0 = a.coeff(&0);
        let df1 = poly_derive(a).0.values().fold(qi(0), |acc, c| acc + c.clone());
        Sparse::term(0, f0 - self.shift.clone() * df1)
    }
    fn coords(&self, a: &Poly) -> Vec<(u32, Q)> {
        a.coords()
    }
    fn basis_elem(&self, k: &u32) -> Poly {
        Sparse::term(*k, qi(1))
    }
    fn invert(&self, a: &Poly) -> Option<Poly> {
        poly_invert(a)
    }
    fn format(&self, a: &Poly) -> String {
        format_poly(a)
    }
    fn atom(&self, name: &str, args: &[Expr]) -> Result<Poly> {
        poly_atom(name, args)
    }
    fn sample(&self, rng: &mut dyn RngCore, size: usize) -> Poly {
        poly_sample(rng, size)
    }
}
