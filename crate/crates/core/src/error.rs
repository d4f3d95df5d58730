use thiserror::Error;

use crate::report::ValidationReport;

/// Errors raised by constructors and operations.
///
/// Axiom failures found by validators are normally returned as a
/// [`ValidationReport`]; they only surface here when a constructor refuses
/// to build a value whose invariants do not hold.
#[derive(Debug, Error)]
pub enum Error {
    /// Input that cannot even be interpreted: ragged tables, unknown
    /// element names, duplicate products, words of the wrong length.
    #[error("malformed input: {0}")]
    Structural(String),

    /// A size or length bound was exceeded.
    #[error("resource guard: {0}")]
    ResourceGuard(String),

    /// A constructor found its invariants violated.
    #[error("axiom violation: {}", .0.summary())]
    Axiom(Box<ValidationReport>),

    /// Stored data contradicts itself, e.g. an incoherent simplex.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// A check was called on an input outside its precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
