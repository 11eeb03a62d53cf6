//! Tensor reduction systems with specialization and confluence checking.
//!
//! Operators are encoded as tensors over words in the alphabet
//! `X = {K, R̃, D, I, E, Φ̃}` (plus `Φ̃ₘ` for multiplicative functionals): a
//! letter names a summand of the bimodule `M = K ⊕ R̃ ⊕ K∂ ⊕ K∫ ⊕ KE ⊕ Φ̃`,
//! where `R = K ⊕ R̃` with `R̃ = ∫R`. Rule patterns are words over the larger
//! alphabet `Z = X ∪ {R, Φ, Φₘ}`, whose extra letters specialize:
//! `S(R) = {K, R̃}`, `S(Φ) = {E, Φ̃, Φ̃ₘ}`, `S(Φₘ) = {Φ̃ₘ}` or `{E, Φ̃ₘ}`.
//!
//! A reduction rule replaces a pure tensor whose word specializes its pattern
//! by the image of a multilinear map acting on the slot payloads. Every
//! shipped rule strictly decreases the order "number of `I` letters, then
//! length, then lexicographic with `D > I > Φ̃ > E > R̃ > K`"; the engine
//! asserts this on every step.
//!
//! Ambiguities (overlaps and inclusions of patterns, unified through common
//! specializations) are enumerated symbolically on `Z`-words. Their
//! S-polynomials are checked by instantiating the slots with concrete ring
//! elements and functionals from a corpus of rings, reducing both sides, and
//! comparing the results by exact coordinates.

mod ambiguity;
mod engine;
mod irreducible;
mod letter;
mod system;

pub use ambiguity::{
    check_confluence, check_defining_rules, default_instances, enumerate_ambiguities, Ambiguity, AmbiguityKind, AmbiguityResult,
    ConfluenceReport, DefiningReport, Instance, Instantiation, Outcome,
};
pub use engine::{Engine, Slot, SlotKey, Tensor};
pub use irreducible::{irreducible_words, matches_irreducible_shape, IrreducibleReport};
pub use letter::{order_key, Letter, Word};
pub use system::{ReductionSystem, Rule, RuleKind, SystemName};
