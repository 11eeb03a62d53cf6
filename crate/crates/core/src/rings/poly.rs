//! Univariate polynomials over the rationals.

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::ring::{IdRing, Sparse};
use crate::scalar::{qi, Scalar, Q};
use crate::syntax::{coeff_prefix, expect_no_args, join_terms, Expr};

/// Element of `Q[x]`: exponent → coefficient.
pub type Poly = Sparse<u32, Q>;

/// The ring `Q[x]` with `∂ = d/dx`, `∫xⁿ = xⁿ⁺¹/(n+1)`, and `E` the constant
/// coefficient (evaluation at zero).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyRing;

impl PolyRing {
    /// The monomial `c·xⁿ`.
    pub fn monomial(&self, n: u32, c: Q) -> Poly {
        Sparse::term(n, c)
    }

    /// The variable `x`.
    pub fn x(&self) -> Poly {
        self.monomial(1, qi(1))
    }

    /// Value at a rational point.
    pub fn eval_at(&self, f: &Poly, t: &Q) -> Q {
        f.0.iter().fold(Q::from_i64(0), |acc, (n, c)| acc + c.clone() * pow_q(t, *n))
    }

    /// A fixed corpus of elements used for multiplicativity checks.
    pub fn corpus(&self) -> Vec<Poly> {
        vec![self.one(), self.x(), self.monomial(2, qi(1)), self.add(&self.x(), &self.one()), self.monomial(3, qi(-2))]
    }
}

pub(crate) fn pow_q(t: &Q, n: u32) -> Q {
    (0..n).fold(Q::from_i64(1), |acc, _| acc * t.clone())
}

pub(crate) fn format_poly(f: &Poly) -> String {
    let terms = f
        .0
        .iter()
        .map(|(n, c)| {
            let mono = match n {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{n}"),
            };
            let (neg, pre) = coeff_prefix(c, *n == 0);
            (neg, format!("{pre}{mono}"))
        })
        .collect();
    join_terms(terms)
}

pub(crate) fn poly_derive(f: &Poly) -> Poly {
    f.map_linear(|&n| if n == 0 { Sparse::zero() } else { Sparse::term(n - 1, qi(n as i64)) })
}

pub(crate) fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    a.bilinear(b, |&i, &j| Sparse::term(i + j, qi(1)))
}

pub(crate) fn poly_atom(name: &str, args: &[Expr]) -> Result<Poly> {
    match name {
        "x" => {
            expect_no_args(name, args)?;
            Ok(Sparse::term(1, qi(1)))
        }
        _ => Err(Error::Elaborate(format!("unknown atom '{name}' in Q[x]"))),
    }
}

pub(crate) fn poly_sample(rng: &mut dyn RngCore, size: usize) -> Poly {
    let mut f = Sparse::zero();
    let deg = rng.gen_range(0..=size.max(1));
    for n in 0..=deg {
        if rng.gen_bool(0.7) {
            f.add_term(n as u32, super::small_rational(rng));
        }
    }
    f
}

pub(crate) fn poly_invert(f: &Poly) -> Option<Poly> {
    if f.0.len() == 1 {
        if let Some(c) = f.0.get(&0) {
            return c.inv().map(|i| Sparse::term(0, i));
        }
    }
    None
}

impl IdRing for PolyRing {
    type Scalar = Q;
    type Elem = Poly;
    type Key = u32;

    fn name(&self) -> String {
        "Q[x]".into()
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
        a.map_linear(|&n| Sparse::term(n + 1, Q::new(1.into(), (n as i64 + 1).into())))
    }
    fn evaluate(&self, a: &Poly) -> Poly {
        Sparse::term(0, a.coeff(&0))
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
