//! Shuffle products, nested integrals, repeated integrals and the
//! generalized Taylor formula.
//!
//! - [`shuffle`] and [`ShuffleTensor`]: words `a₁⊗…⊗aₙ` standing for nested
//!   integrals `∫a₁∫a₂…∫aₙ`, with the shuffle product;
//! - [`generalized_shuffle_expand`]: the product of two nested integrals as
//!   their shuffle plus evaluation terms of lower depth, which vanish when
//!   the evaluation is multiplicative;
//! - [`x_n`], [`c_mn`]: repeated integrals `x_n = ∫ⁿ1` and the constants
//!   `c_{m,n} = E(x_m x_n)`, with the recursions expressing `c_{m,n}` by the
//!   `c_{1,k}` and `x_n` by powers of `x₁`;
//! - [`rota_baxter_check`]: the Rota-Baxter identity with evaluation and its
//!   hybrid form;
//! - [`taylor_parts`] and [`taylor_operator_identity`]: the Taylor formula
//!   with integral remainder and the additional polynomial caused by a
//!   non-multiplicative evaluation.

mod repeated;
mod shuffle;
mod taylor;

pub use repeated::{c_mn, c_mn_by_recursion, rota_baxter_check, x_n, x_n_by_powers, RotaBaxterReport};
pub use shuffle::{generalized_shuffle_expand, nested_integral, shuffle, EvalTerm, GeneralizedShuffle, ShuffleTensor};
pub use taylor::{check_polynomial_evaluation, repeated_integral_operator, taylor_first, taylor_operator_identity, taylor_parts, TaylorParts};
