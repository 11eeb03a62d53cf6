//! The operator ring `R⟨∂,∫,Φ⟩` of integro-differential operators.
//!
//! Operators are generated by the coefficients `f ∈ R` (acting by
//! multiplication), the derivation `∂`, the integration `∫`, the evaluation
//! `E` and optional further functionals `φ: R → C`. Every operator has a
//! unique normal form: a sum of terms
//!
//! - `f·∂ʲ` (differential part),
//! - `f·∫·g` (integral part),
//! - `f·φ·h·∂ʲ` and `f·φ·h·∫·g` (initial part), where `h` lies in `∫R`
//!   whenever `φ = E`,
//!
//! with missing factors read as `1`. Normal forms are computed by the
//! rewrite rules
//!
//! | left side | right side |
//! |---|---|
//! | `∂·f` | `f·∂ + ∂f` |
//! | `∂·φ` | `0` |
//! | `∂·∫` | `1` |
//! | `φ·f·ψ` | `(φf)·ψ` |
//! | `φ·ψ` | `(φ1)·ψ` |
//! | `E·∫` | `0` |
//! | `∫·f·∂` | `f − E·f − ∫·∂f` |
//! | `∫·f·φ` | `∫f·φ` |
//! | `∫·f·∫` | `∫f·∫ − ∫·∫f − E·∫f·∫` |
//! | `∫·∂` | `1 − E` |
//! | `∫·φ` | `∫1·φ` |
//! | `∫·∫` | `∫1·∫ − ∫·∫1 − E·∫1·∫` |
//!
//! together with merging of adjacent coefficients, absorbing constant
//! coefficients into scalars, `E·h·∫ = E·(h − Eh)·∫`, and, for functionals
//! flagged multiplicative, `φ·f = (φf)·φ`.
//!
//! Equality of normal forms is decided by expanding the coefficient slots of
//! each term in the tensor basis of the ring over its constants.

mod elim;
mod expr;
mod functional;
mod normal;
mod rewrite;

pub use elim::{LeftElimination, RightElimination};
pub use expr::{Env, Gen, OpExpr};
pub use functional::{Functional, FunctionalTable};
pub use normal::{NormalForm, OpAlg, Proof, Shape};
pub use rewrite::{Item, Rule, Strategy, TraceStep};

/// The normal form type of operators over the ring `R`.
pub type Nf<R> = NormalForm<<R as crate::ring::IdRing>::Key, <R as crate::ring::IdRing>::Scalar>;
