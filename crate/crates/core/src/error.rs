//! Error type shared across the engine.
//!
//! Math-level diagnostics (zero divisors, search caps, failed verification)
//! are kept separate from input-level problems (parse errors, bad arity) so
//! the CLI can map them to distinct exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands belong to different polynomial rings.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// Vector length disagrees with the ambient rank k.
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    /// Expression could not be parsed; positions are 1-based.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// Division by zero in a coefficient field.
    #[error("division by zero")]
    DivisionByZero,

    /// Inversion hit a zero divisor in a residue ring.  This is the symptom
    /// of a quotient taken by an ideal that is not prime: the offending
    /// candidate should be split further or replaced by user-supplied primes.
    #[error("zero divisor in residue ring: {0}; the candidate ideal is reducible — supply its prime components")]
    ZeroDivisor(String),

    /// An operation that requires a proper ideal received the unit ideal.
    #[error("expected a proper ideal")]
    UnitIdeal,

    /// An iterative search exceeded its configured bound.
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),

    /// A user-supplied prime failed verification against the module.
    #[error("candidate prime not associated: {0}")]
    NotAssociated(String),

    /// Malformed problem input (schema, unknown names, bad options).
    #[error("invalid input: {0}")]
    Input(String),

    /// A request outside the engine's supported fragment.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for diagnostics produced by the mathematics itself, as opposed
    /// to malformed input.  The CLI exits 1 for these and 2 for input errors.
    pub fn is_math(&self) -> bool {
        !matches!(
            self,
            Error::Parse { .. } | Error::Input(_) | Error::ArityMismatch(_) | Error::RingMismatch(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
