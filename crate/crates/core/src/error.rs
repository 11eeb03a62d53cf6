//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by ring constructions, parsing, and the operator algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text could not be parsed; `pos` is a byte offset into the input.
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A parsed term could not be interpreted in the selected ring.
    #[error("cannot interpret in this ring: {0}")]
    Elaborate(String),

    /// The element has no inverse representable in this ring.
    #[error("not invertible in this representation: {0}")]
    NotInvertible(String),

    /// A functional proposed as evaluation does not map 1 to 1.
    #[error("not an evaluation: e(1) = {0}, expected 1")]
    NotAnEvaluation(String),

    /// The operation needs a commutative coefficient ring.
    #[error("commutative ring required")]
    CommutativeRequired,

    /// The operation needs a coefficient ring without zero divisors.
    #[error("integral domain required")]
    DomainRequired,

    /// Integral elimination is impossible for initial operators.
    #[error("operator is an initial operator")]
    IsInitialOperator,

    /// The operator must be nonzero.
    #[error("zero operator")]
    ZeroOperator,

    /// The operator does not have the shape an algorithm requires.
    #[error("operator has the wrong shape: {0}")]
    WrongShape(String),

    /// A hypothesis of a formula fails in the selected ring.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    /// The evaluation of the homogeneous solution has no inverse.
    #[error("evaluation of the solution is not invertible")]
    EzNotInvertible,

    /// The Wronskian of the fundamental system has no inverse.
    #[error("wronskian is not invertible")]
    WronskianNotInvertible,

    /// The matrix of initial values of the fundamental system is singular.
    #[error("initial value matrix is singular")]
    InitialMatrixInvalid,

    /// A supplied problem does not satisfy its defining identities.
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    /// Matrix dimensions do not agree.
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    /// A functional name is not registered.
    #[error("unknown functional: {0}")]
    UnknownFunctional(String),

    /// An iteration exceeded its safety bound.
    #[error("iteration limit exceeded: {0}")]
    IterationLimit(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
