//! The generalized Taylor formula.

use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::opalg::{Nf, OpAlg};
use crate::ring::IdRing;

use super::repeated::{c_mn, x_n};

/// The three parts of `f` in the Taylor formula of order `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorParts<E> {
    /// `Σ_{k=0}^n x_k·E∂ᵏf`.
    pub poly: E,
    /// `Σ_{k=0}^n (−1)^{n−k} x_k·∫(x_{n−k}·∂ⁿ⁺¹f)`.
    pub remainder: E,
    /// `−Σ_{k=0}^{n−1} Σ_{j=1}^{n−k} (−1)^{n−k−j} x_k·E(x_j·∫(x_{n−k−j}·∂ⁿ⁺¹f))`.
    pub correction: E,
}

impl<E> TaylorParts<E> {
    /// JSON form, with elements formatted by `fmt`.
    pub fn to_json(&self, fmt: impl Fn(&E) -> String) -> Value {
        json!({"poly": fmt(&self.poly), "remainder": fmt(&self.remainder), "correction": fmt(&self.correction)})
    }
}

fn sign<R: IdRing>(ring: &R, e: usize, x: &R::Elem) -> R::Elem {
    if e % 2 == 0 {
        x.clone()
    } else {
        ring.neg(x)
    }
}

/// Checks `E(x_m·x_k) = 0` for `1 ≤ m, k ≤ bound`.
pub fn check_polynomial_evaluation<R: IdRing>(ring: &R, bound: usize) -> Result<()> {
    for m in 1..=bound {
        for k in 1..=bound {
            let c = c_mn(ring, m, k);
            if !ring.is_zero(&c) {
                return Err(Error::HypothesisViolated(format!("E(x_{m}·x_{k}) = {} ≠ 0", ring.format(&c))));
            }
        }
    }
    Ok(())
}

/// Splits `f` into Taylor polynomial, integral remainder and the correction
/// caused by a non-multiplicative evaluation; the three parts sum to `f`.
/// Requires `E(x_m·x_k) = 0` for `1 ≤ m, k ≤ n+1`.
pub fn taylor_parts<R: IdRing>(ring: &R, f: &R::Elem, n: usize) -> Result<TaylorParts<R::Elem>> {
    check_polynomial_evaluation(ring, n + 1)?;
    let r = ring;
    let xs: Vec<R::Elem> = (0..=n).map(|k| x_n(r, k)).collect();
    let top = r.derive_n(f, n + 1);
    let mut poly = r.zero();
    let mut remainder = r.zero();
    let mut correction = r.zero();
    for k in 0..=n {
        poly = r.add(&poly, &r.mul(&xs[k], &r.evaluate(&r.derive_n(f, k))));
        let t = r.mul(&xs[k], &r.integrate(&r.mul(&xs[n - k], &top)));
        remainder = r.add(&remainder, &sign(r, n - k, &t));
        for j in 1..=n.saturating_sub(k) {
            if k >= n {
                break;
            }
            let inner = r.mul(&xs[j], &r.integrate(&r.mul(&xs[n - k - j], &top)));
            let t = r.mul(&xs[k], &r.evaluate(&inner));
            correction = r.sub(&correction, &sign(r, n - k - j, &t));
        }
    }
    Ok(TaylorParts { poly, remainder, correction })
}

/// `Σ_{i=0}^n ∫ⁱ·E·∂ⁱ + ∫ⁿ⁺¹·∂ⁿ⁺¹`, which equals `1`.
pub fn taylor_first<R: IdRing>(alg: &OpAlg<R>, n: usize) -> Nf<R> {
    let (i, d, e) = (alg.i(), alg.d(), alg.e());
    let mut acc = alg.product(&[alg.pow(&i, n as u32 + 1), alg.pow(&d, n as u32 + 1)]);
    for k in 0..=n {
        acc = acc.add(&alg.product(&[alg.pow(&i, k as u32), e.clone(), alg.pow(&d, k as u32)]));
    }
    acc
}

fn signed<R: IdRing>(a: &Nf<R>, e: usize) -> Nf<R> {
    if e % 2 == 0 {
        a.clone()
    } else {
        a.neg()
    }
}

/// The expansion of `∫ⁿ⁺¹` without higher powers of `∫`:
/// `Σ_{k=0}^n (−1)^{n−k} x_k·∫·x_{n−k} − Σ_{k=0}^{n−1} Σ_{j=1}^{n−k}
/// (−1)^{n−k−j} x_k·E·x_j·∫·x_{n−k−j}`.
/// Requires `E(x_m·x_k) = 0` for `1 ≤ m, k ≤ n`.
pub fn repeated_integral_operator<R: IdRing>(alg: &OpAlg<R>, n: usize) -> Result<Nf<R>> {
    check_polynomial_evaluation(&alg.ring, n.max(1))?;
    let x = |k: usize| alg.coeff(&x_n(&alg.ring, k));
    let (i, e) = (alg.i(), alg.e());
    let mut acc = Nf::<R>::zero();
    for k in 0..=n {
        acc = acc.add(&signed::<R>(&alg.product(&[x(k), i.clone(), x(n - k)]), n - k));
        if k < n {
            for j in 1..=n - k {
                acc = acc.sub(&signed::<R>(&alg.product(&[x(k), e.clone(), x(j), i.clone(), x(n - k - j)]), n - k - j));
            }
        }
    }
    Ok(acc)
}

/// The operator Taylor formula of order `n` as the pair `(1, right side)`:
/// `Σ_{k=0}^n x_k·E·∂ᵏ + (∫ⁿ⁺¹ expanded)·∂ⁿ⁺¹`. Requires `E(x_m·x_k) = 0`
/// for `1 ≤ m, k ≤ n`.
pub fn taylor_operator_identity<R: IdRing>(alg: &OpAlg<R>, n: usize) -> Result<(Nf<R>, Nf<R>)> {
    let mut rhs = alg.product(&[repeated_integral_operator(alg, n)?, alg.pow(&alg.d(), n as u32 + 1)]);
    for k in 0..=n {
        rhs = rhs.add(&alg.product(&[alg.coeff(&x_n(&alg.ring, k)), alg.e(), alg.pow(&alg.d(), k as u32)]));
    }
    let one = alg.scalar(&R::Scalar::one());
    Ok((one, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{LaurentLogRing, PolyRing, ShiftedPolyRing};
    use crate::scalar::qi;

    #[test]
    fn logarithm_needs_correction() {
        let l = LaurentLogRing;
        let p = taylor_parts(&l, &l.ln(), 1).unwrap();
        assert!(l.is_zero(&p.poly));
        assert_eq!(p.remainder, l.add(&l.ln(), &l.one()));
        assert_eq!(p.correction, l.constant(&qi(-1)));
        let p = taylor_parts(&l, &l.x_pow(-1), 1).unwrap();
        assert_eq!((p.poly.clone(), p.remainder.clone()), (l.zero(), l.x_pow(-1)));
        assert!(l.is_zero(&p.correction));
    }

    #[test]
    fn shifted_integration_is_rejected() {
        let r = ShiftedPolyRing::new(qi(1));
        assert!(matches!(taylor_parts(&r, &r.x(), 1), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn operator_identities() {
        let alg = OpAlg::new(PolyRing);
        for n in 0..4 {
            assert_eq!(taylor_first(&alg, n), alg.one());
            let (one, rhs) = taylor_operator_identity(&alg, n).unwrap();
            assert_eq!(one, rhs);
            assert_eq!(repeated_integral_operator(&alg, n).unwrap(), alg.pow(&alg.i(), n as u32 + 1));
        }
    }
}
