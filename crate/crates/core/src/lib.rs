//! Generalized integro-differential rings and operators with exact
//! arithmetic.
//!
//! The crate is organized in layers:
//!
//! - [`ring`]: the [`IdRing`] contract (derivation `∂`, integration `∫`,
//!   evaluation `E = id − ∫∂`), induced integrations and axiom checks;
//! - [`rings`]: concrete instances (polynomials, Laurent-log sums,
//!   exponential polynomials, Hurwitz series, matrices, shifted polynomials);
//! - [`opalg`]: the operator ring `R⟨∂,∫,E⟩` with functionals, rewriting to
//!   unique normal forms, equational proving and integral elimination;
//! - [`tenred`]: tensor reduction systems over words with specialization,
//!   ambiguity enumeration and confluence checking;
//! - [`calculus`]: shuffle products, nested integrals, repeated integrals and
//!   the generalized Taylor formula;
//! - [`odes`]: Wronskians, variation of constants, Green's operators,
//!   companion matrices and the matrix/scalar operator isomorphism.
//!
//! All arithmetic is exact; the scalar layer is generic over [`Scalar`].

pub mod calculus;
pub mod error;
mod linalg;
pub mod odes;
pub mod opalg;
pub mod ring;
pub mod rings;
pub mod scalar;
pub mod syntax;
pub mod tenred;

pub use error::{Error, Result};
pub use ring::{check_axioms, induced_integration, IdRing, Induced};
pub use scalar::{Scalar, Zp, Q};

/// The prime field `Z/5Z`.
pub type F5 = Zp<5>;
/// Hurwitz series over the rationals.
pub type HurwitzQ = rings::HurwitzRing<Q>;
/// Hurwitz series over `Z/5Z`.
pub type HurwitzF5 = rings::HurwitzRing<F5>;
