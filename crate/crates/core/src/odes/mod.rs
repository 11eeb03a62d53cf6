//! Linear ordinary differential equations in the operator ring.
//!
//! - [`wronskian`]: `W(f₁,…,fₙ) = det(∂^{i−1}f_j)`;
//! - [`right_inverse_first_order`], [`green_first_order`]: for
//!   `L = ∂ + a` with a homogeneous solution `z`, the right inverse
//!   `H = z·∫·z⁻¹` and the Green's operator
//!   `G = (1 − z(Ez)⁻¹·E)·z·∫·z⁻¹` with `E·G = 0`; `a` and `z` may be
//!   matrices;
//! - [`variation_of_constants`], [`green_scalar`]: the same for monic
//!   scalar operators of order `n` with a fundamental system, using
//!   Wronskians;
//! - [`companion_matrix`], [`companion_right_inverse`]: the first-order
//!   system of a scalar operator and the scalar right inverse read off from
//!   the upper right entry of its matrix solution;
//! - [`matrix_to_scalar`], [`scalar_to_matrix`]: the isomorphism between
//!   operators with matrix coefficients and matrices of operators.

mod companion;
mod first_order;
mod higher;
mod iso;
mod wronskian;

pub use companion::{companion_matrix, companion_right_inverse, fundamental_matrix, CompanionRoute};
pub use first_order::{first_order_operator, green_first_order, right_inverse_first_order, FirstOrderProblem};
pub use higher::{green_scalar, initial_matrix, scalar_operator, variation_of_constants, ScalarProblem};
pub use iso::{matrix_to_scalar, scalar_to_matrix};
pub use wronskian::{pairwise_wronskians, wronskian};

use crate::opalg::{Nf, OpAlg};
use crate::ring::IdRing;

/// `true` if `L·H = 1`.
pub fn is_right_inverse<R: IdRing>(alg: &OpAlg<R>, l: &Nf<R>, h: &Nf<R>) -> bool {
    alg.mul(l, h) == alg.one()
}

/// For `i = 0,…,n−1`, whether `E·∂ⁱ·G = 0`.
pub fn initial_conditions<R: IdRing>(alg: &OpAlg<R>, g: &Nf<R>, n: usize) -> Vec<bool> {
    (0..n).map(|i| alg.product(&[alg.e(), alg.pow(&alg.d(), i as u32), g.clone()]).is_zero()).collect()
}

fn signed<R: IdRing>(a: Nf<R>, odd: bool) -> Nf<R> {
    if odd {
        a.neg()
    } else {
        a
    }
}
