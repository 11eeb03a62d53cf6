//! Exponential polynomials `Σ c·xᵏ e^{qx}` with rational frequencies.

use num_traits::{One, Zero};
use rand::{seq::SliceRandom, Rng, RngCore};

use crate::error::{Error, Result};
use crate::ring::{IdRing, Sparse};
use crate::scalar::{q, qi, Scalar, Q};
use crate::syntax::{coeff_prefix, expect_no_args, fmt_rational_factor, join_terms, linear_in_x, Expr};

/// Element: `(q, k)` ↦ coefficient of `xᵏ e^{qx}`.
pub type ExpPoly = Sparse<(Q, u32), Q>;

/// Which integration the ring carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpMode {
    /// `∫xᵏe^{qx}` by the integration-by-parts recursion without constants of
    /// integration; the induced evaluation returns the coefficient of `x⁰e^{0x}`
    /// and is not multiplicative (`E e^{qx} = 0` for `q ≠ 0`).
    Recursive,
    /// The integration induced by evaluation at zero, `∫_e = ∫ − e∫`; the
    /// evaluation is multiplicative.
    EvalAtZero,
}

/// The ring `Q[x, e^{Qx}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPolyRing {
    /// Integration mode.
    pub mode: ExpMode,
}

impl ExpPolyRing {
    /// Ring with the recursive integration.
    pub fn recursive() -> Self {
        ExpPolyRing { mode: ExpMode::Recursive }
    }

    /// Ring with the integration induced by evaluation at zero.
    pub fn eval_at_zero() -> Self {
        ExpPolyRing { mode: ExpMode::EvalAtZero }
    }

    /// The monomial `c·xᵏe^{qx}`.
    pub fn monomial(&self, freq: Q, k: u32, c: Q) -> ExpPoly {
        Sparse::term((freq, k), c)
    }

    /// `e^{qx}`.
    pub fn exp(&self, freq: Q) -> ExpPoly {
        self.monomial(freq, 0, qi(1))
    }

    /// Value at zero.
    pub fn eval_at_zero_value(&self, f: &ExpPoly) -> Q {
        f.0.iter().filter(|((_, k), _)| *k == 0).fold(Q::zero(), |acc, (_, c)| acc + c.clone())
    }

    /// A fixed corpus for multiplicativity checks.
    pub fn corpus(&self) -> Vec<ExpPoly> {
        vec![
            self.one(),
            self.exp(qi(1)),
            self.exp(qi(-1)),
            self.monomial(qi(0), 1, qi(1)),
            self.monomial(q(1, 2), 1, qi(1)),
        ]
    }

    fn recursive_integral(freq: &Q, k: u32) -> ExpPoly {
        if freq.is_zero() {
            return Sparse::term((Q::zero(), k + 1), q(1, k as i64 + 1));
        }
        let inv = freq.recip();
        let mut out = Sparse::term((freq.clone(), k), inv.clone());
        if k > 0 {
            let rest = Self::recursive_integral(freq, k - 1).scaled(&(-(inv * qi(k as i64))));
            out = out.plus(&rest);
        }
        out
    }
}

impl IdRing for ExpPolyRing {
    type Scalar = Q;
    type Elem = ExpPoly;
    type Key = (Q, u32);

    fn name(&self) -> String {
        match self.mode {
            ExpMode::Recursive => "Q[x, exp(Qx)] (recursive integration)".into(),
            ExpMode::EvalAtZero => "Q[x, exp(Qx)] (integration from 0)".into(),
        }
    }
    fn zero(&self) -> ExpPoly {
        Sparse::zero()
    }
    fn one(&self) -> ExpPoly {
        Sparse::term((Q::zero(), 0), qi(1))
    }
    fn constant(&self, c: &Q) -> ExpPoly {
        Sparse::term((Q::zero(), 0), c.clone())
    }
    fn add(&self, a: &ExpPoly, b: &ExpPoly) -> ExpPoly {
        a.plus(b)
    }
    fn neg(&self, a: &ExpPoly) -> ExpPoly {
        a.negated()
    }
    fn mul(&self, a: &ExpPoly, b: &ExpPoly) -> ExpPoly {
        a.bilinear(b, |(q1, k1), (q2, k2)| Sparse::term((q1.clone() + q2.clone(), k1 + k2), qi(1)))
    }
    fn scale(&self, c: &Q, a: &ExpPoly) -> ExpPoly {
        a.scaled(c)
    }
    fn is_zero(&self, a: &ExpPoly) -> bool {
        a.0.is_empty()
    }
    fn derive(&self, a: &ExpPoly) -> ExpPoly {
        a.map_linear(|(freq, k)| {
            let mut out = Sparse::term((freq.clone(), *k), freq.clone());
            if *k > 0 {
                out.add_term((freq.clone(), k - 1), qi(*k as i64));
            }
            out
        })
    }
    fn integrate(&self, a: &ExpPoly) -> ExpPoly {
        let rec = a.map_linear(|(freq, k)| Self::recursive_integral(freq, *k));
        match self.mode {
            ExpMode::Recursive => rec,
            ExpMode::EvalAtZero => {
                let c = self.eval_at_zero_value(&rec);
                rec.plus(&self.constant(&-c))
            }
        }
    }
    fn evaluate(&self, a: &ExpPoly) -> ExpPoly {
        match self.mode {
            ExpMode::Recursive => Sparse::term((Q::zero(), 0), a.coeff(&(Q::zero(), 0))),
            ExpMode::EvalAtZero => self.constant(&self.eval_at_zero_value(a)),
        }
    }
    fn coords(&self, a: &ExpPoly) -> Vec<((Q, u32), Q)> {
        a.coords()
    }
    fn basis_elem(&self, k: &(Q, u32)) -> ExpPoly {
        Sparse::term(k.clone(), qi(1))
    }
    fn invert(&self, a: &ExpPoly) -> Option<ExpPoly> {
        if a.0.len() != 1 {
            return None;
        }
        let ((freq, k), c) = a.0.iter().next()?;
        if *k != 0 {
            return None;
        }
        Some(Sparse::term((-freq.clone(), 0), c.inv()?))
    }
    fn format(&self, a: &ExpPoly) -> String {
        let terms = a
            .0
            .iter()
            .map(|((freq, k), c)| {
                let mut parts = Vec::new();
                match k {
                    0 => {}
                    1 => parts.push("x".to_string()),
                    _ => parts.push(format!("x^{k}")),
                }
                if !freq.is_zero() {
                    let arg = if freq.is_one() {
                        "x".to_string()
                    } else if *freq == -Q::one() {
                        "-x".to_string()
                    } else {
                        format!("{} x", fmt_rational_factor(freq.numer(), freq.denom()))
                    };
                    parts.push(format!("exp({arg})"));
                }
                let (neg, pre) = coeff_prefix(c, parts.is_empty());
                (neg, format!("{pre}{}", parts.join("*")))
            })
            .collect();
        join_terms(terms)
    }
    fn atom(&self, name: &str, args: &[Expr]) -> Result<ExpPoly> {
        match name {
            "x" => {
                expect_no_args(name, args)?;
                Ok(self.monomial(Q::zero(), 1, qi(1)))
            }
            "exp" if args.len() == 1 => {
                let (n, d) = linear_in_x(&args[0]).ok_or_else(|| Error::Elaborate("exp expects an argument q*x with rational q".into()))?;
                let freq = Q::from_ratio(&n, &d).ok_or_else(|| Error::Elaborate("zero denominator in exp argument".into()))?;
                Ok(self.exp(freq))
            }
            _ => Err(Error::Elaborate(format!("unknown atom '{name}' in exponential polynomials"))),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore, size: usize) -> ExpPoly {
        let freqs = [qi(0), qi(1), qi(-1), q(1, 2), qi(2)];
        let mut f = Sparse::zero();
        let terms = rng.gen_range(1..=size.clamp(1, 4));
        for _ in 0..terms {
            let freq = freqs.choose(rng).cloned().unwrap_or_else(Q::zero);
            let k = rng.gen_range(0..=2);
            f.add_term((freq, k), super::small_rational(rng));
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_elem;

    #[test]
    fn pochhammer_integration() {
        let r = ExpPolyRing::recursive();
        let p = |s: &str| parse_elem(&r, s).unwrap();
        // ∫x²e^{2x} = (1/2)x²e^{2x} − (1/2)x e^{2x} + (1/4)e^{2x}
        assert_eq!(r.integrate(&p("x^2*exp(2 x)")), p("1/2*x^2*exp(2 x) - 1/2*x*exp(2 x) + 1/4*exp(2 x)"));
        assert!(r.is_zero(&r.evaluate(&p("exp(3 x)"))));
    }

    #[test]
    fn integration_from_zero() {
        let r = ExpPolyRing::eval_at_zero();
        let p = |s: &str| parse_elem(&r, s).unwrap();
        assert_eq!(r.integrate(&p("exp(3 x)")), p("1/3*exp(3 x) - 1/3"));
        assert_eq!(r.evaluate(&p("5*exp(3 x) + x")), r.constant(&qi(5)));
    }

    #[test]
    fn print_parse_round_trip() {
        let r = ExpPolyRing::recursive();
        let f = parse_elem(&r, "x^2*exp(3/2 x) - exp(-x) + 2*exp(x) - 7 + x*exp(-1/3 x)").unwrap();
        assert_eq!(parse_elem(&r, &r.format(&f)).unwrap(), f);
    }
}
