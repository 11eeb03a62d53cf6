//! Finite Laurent-logarithmic sums `Σ c·xᵏ lnⁿx`.

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::ring::{IdRing, Sparse};
use crate::scalar::{q, qi, Scalar, Q};
use crate::syntax::{coeff_prefix, expect_no_args, is_x_arg, join_terms, Expr};

/// Element of the Laurent-log ring: `(k, n)` ↦ coefficient of `xᵏ lnⁿx`.
pub type LaurentLog = Sparse<(i64, u32), Q>;

/// Finitely supported elements of `Q((x))[ln x]` with `∂ = d/dx`.
///
/// Integration is defined recursively on monomials:
/// - `k = −1`: `∫x⁻¹lnⁿx = lnⁿ⁺¹x/(n+1)`;
/// - `k ≠ −1, n = 0`: `∫xᵏ = xᵏ⁺¹/(k+1)`;
/// - `k ≠ −1, n > 0`: `∫xᵏlnⁿx = xᵏ⁺¹lnⁿx/(k+1) − n/(k+1)·∫xᵏlnⁿ⁻¹x`.
///
/// The induced evaluation returns the coefficient of `x⁰ln⁰x`; it is not
/// multiplicative (`E(x·x⁻¹) = 1` while `E x = E x⁻¹ = 0`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentLogRing;

impl LaurentLogRing {
    /// The monomial `c·xᵏlnⁿx`.
    pub fn monomial(&self, k: i64, n: u32, c: Q) -> LaurentLog {
        Sparse::term((k, n), c)
    }

    /// The variable `x`.
    pub fn x(&self) -> LaurentLog {
        self.monomial(1, 0, qi(1))
    }

    /// `xᵏ` for any integer `k`.
    pub fn x_pow(&self, k: i64) -> LaurentLog {
        self.monomial(k, 0, qi(1))
    }

    /// `ln x`.
    pub fn ln(&self) -> LaurentLog {
        self.monomial(0, 1, qi(1))
    }

    /// A fixed corpus of elements used for witnesses and exhaustive checks.
    pub fn corpus(&self) -> Vec<LaurentLog> {
        vec![
            self.one(),
            self.x(),
            self.x_pow(-1),
            self.x_pow(-2),
            self.ln(),
            self.add(&self.monomial(1, 1, qi(1)), &self.monomial(0, 0, qi(2))),
        ]
    }

    fn integrate_monomial(k: i64, n: u32) -> LaurentLog {
        if k == -1 {
            return Sparse::term((0, n + 1), q(1, n as i64 + 1));
        }
        let k1 = k + 1;
        let mut out = Sparse::term((k1, n), q(1, k1));
        if n > 0 {
            let rest = Self::integrate_monomial(k, n - 1).scaled(&q(-(n as i64), k1));
            out = out.plus(&rest);
        }
        out
    }
}

impl IdRing for LaurentLogRing {
    type Scalar = Q;
    type Elem = LaurentLog;
    type Key = (i64, u32);

    fn name(&self) -> String {
        "Q[x, x^-1, ln x]".into()
    }
    fn zero(&self) -> LaurentLog {
        Sparse::zero()
    }
    fn one(&self) -> LaurentLog {
        Sparse::term((0, 0), qi(1))
    }
    fn constant(&self, c: &Q) -> LaurentLog {
        Sparse::term((0, 0), c.clone())
    }
    fn add(&self, a: &LaurentLog, b: &LaurentLog) -> LaurentLog {
        a.plus(b)
    }
    fn neg(&self, a: &LaurentLog) -> LaurentLog {
        a.negated()
    }
    fn mul(&self, a: &LaurentLog, b: &LaurentLog) -> LaurentLog {
        a.bilinear(b, |&(k1, n1), &(k2, n2)| Sparse::term((k1 + k2, n1 + n2), qi(1)))
    }
    fn scale(&self, c: &Q, a: &LaurentLog) -> LaurentLog {
        a.scaled(c)
    }
    fn is_zero(&self, a: &LaurentLog) -> bool {
        a.0.is_empty()
    }
    fn derive(&self, a: &LaurentLog) -> LaurentLog {
        a.map_linear(|&(k, n)| {
            let mut out = Sparse::term((k - 1, n), qi(k));
            if n > 0 {
                out.add_term((k - 1, n - 1), qi(n as i64));
            }
            out
        })
    }
    fn integrate(&self, a: &LaurentLog) -> LaurentLog {
        a.map_linear(|&(k, n)| Self::integrate_monomial(k, n))
    }
    fn evaluate(&self, a: &LaurentLog) -> LaurentLog {
        Sparse::term((0, 0), a.coeff(&(0, 0)))
    }
    fn coords(&self, a: &LaurentLog) -> Vec<((i64, u32), Q)> {
        a.coords()
    }
    fn basis_elem(&self, k: &(i64, u32)) -> LaurentLog {
        Sparse::term(*k, qi(1))
    }
    fn invert(&self, a: &LaurentLog) -> Option<LaurentLog> {
        if a.0.len() != 1 {
            return None;
        }
        let (&(k, n), c) = a.0.iter().next()?;
        if n != 0 {
            return None;
        }
        Some(Sparse::term((-k, 0), c.inv()?))
    }
    fn format(&self, a: &LaurentLog) -> String {
        let terms = a
            .0
            .iter()
            .map(|(&(k, n), c)| {
                let mut parts = Vec::new();
                match k {
                    0 => {}
                    1 => parts.push("x".to_string()),
                    _ => parts.push(format!("x^{k}")),
                }
                match n {
                    0 => {}
                    1 => parts.push("ln(x)".to_string()),
                    _ => parts.push(format!("ln(x)^{n}")),
                }
                let (neg, pre) = coeff_prefix(c, parts.is_empty());
                (neg, format!("{pre}{}", parts.join("*")))
            })
            .collect();
        join_terms(terms)
    }
    fn atom(&self, name: &str, args: &[Expr]) -> Result<LaurentLog> {
        match name {
            "x" => {
                expect_no_args(name, args)?;
                Ok(self.x())
            }
            "ln" | "log" if is_x_arg(args) => Ok(self.ln()),
            _ => Err(Error::Elaborate(format!("unknown atom '{name}' in the Laurent-log ring"))),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore, size: usize) -> LaurentLog {
        let mut f = Sparse::zero();
        let terms = rng.gen_range(1..=size.clamp(1, 4));
        for _ in 0..terms {
            let k = rng.gen_range(-2..=2);
            let n = rng.gen_range(0..=2);
            f.add_term((k, n), super::small_rational(rng));
        }
        f
    }
}
