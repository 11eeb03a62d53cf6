//! Concrete integro-differential rings.
//!
//! - [`PolyRing`]: `Q[x]` with `∫xⁿ = xⁿ⁺¹/(n+1)`; multiplicative evaluation.
//! - [`LaurentLogRing`]: finite sums `Σ c·xᵏ lnⁿx`; evaluation picks the
//!   coefficient of `x⁰ln⁰x` and is not multiplicative.
//! - [`ExpPolyRing`]: exponential polynomials `Σ c·xᵏ e^{qx}` with either the
//!   recursive integration (non-multiplicative evaluation) or the one induced
//!   by evaluation at zero.
//! - [`HurwitzRing`]: finitely supported Hurwitz series over any exact
//!   coefficient field, including prime fields.
//! - [`MatrixRing`]: `n×n` matrices over another ring with entrywise
//!   operations; noncommutative.
//! - [`ShiftedPolyRing`]: `Q[x]` with `∫xⁿ = xⁿ⁺¹/(n+1) + c`, whose evaluation
//!   `f ↦ f(0) − c·f′(1)` is not multiplicative for `c ≠ 0`.

mod exppoly;
mod hurwitz;
mod laurent;
mod matrix;
mod poly;
mod shifted;

pub use exppoly::{ExpMode, ExpPolyRing};
pub use hurwitz::HurwitzRing;
pub use laurent::LaurentLogRing;
pub use matrix::{Mat, MatrixRing};
pub use poly::PolyRing;
pub use shifted::ShiftedPolyRing;
pub(crate) use matrix::{laplace_det, minor_of};

use rand::{Rng, RngCore};

use crate::ring::IdRing;
use crate::scalar::{Q, Scalar};

/// Small random rational with numerator in `-5..=5` and denominator in `1..=3`.
pub(crate) fn small_rational(rng: &mut dyn RngCore) -> Q {
    let n: i64 = rng.gen_range(-5..=5);
    let d: i64 = rng.gen_range(1..=3);
    crate::scalar::q(n, d)
}

/// Small random scalar of any exact type.
pub(crate) fn small_scalar<S: Scalar>(rng: &mut dyn RngCore) -> S {
    let n: i64 = rng.gen_range(-5..=5);
    S::from_i64(n)
}

/// Searches `corpus` for a pair with `E(fg) ≠ E(f)E(g)`.
///
/// Returns `None` when the evaluation is multiplicative on every pair of the
/// corpus.
pub fn multiplicativity_witness<R: IdRing>(ring: &R, corpus: &[R::Elem]) -> Option<(R::Elem, R::Elem)> {
    for f in corpus {
        for g in corpus {
            if !crate::ring::evaluation_multiplicative_on(ring, f, g) {
                return Some((f.clone(), g.clone()));
            }
        }
    }
    None
}
