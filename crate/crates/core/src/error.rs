//! Error type shared by every numerical layer of the crate.

use thiserror::Error;

/// Errors raised by scalar q-functions, series evaluators and the
/// representation-theoretic layers built on top of them.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum QError {
    /// A factor `1 - q^{2(alpha+k)}` vanished inside a product that sits in a
    /// denominator, or a terminating series divided by a vanishing Pochhammer.
    #[error("pole: {0}")]
    Pole(String),

    /// A factor vanished inside a product that is only defined up to a branch
    /// choice, so the square-root regularisation is ambiguous at this point.
    #[error("zero factor inside square-root product: {0}")]
    ZeroFactor(String),

    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A non-terminating basic hypergeometric series with |argument| >= 1.
    #[error("divergent series: {0}")]
    Divergent(String),

    /// Two complex spins were required to differ by a half-integer but do not.
    #[error("difference is not a half-integer: {0}")]
    NotHalfInteger(String),

    /// A principal weight hit one of the degeneracies excluded by the
    /// intertwiner construction (rho = 0 or a vanishing signed rho sum).
    #[error("degenerate principal weight: {0}")]
    Degenerate(String),

    /// A series converges too slowly (or not at all) at the requested point.
    #[error("slow convergence: {0}")]
    SlowConvergence(String),
}

pub type QResult<T> = Result<T, QError>;
