//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by set-family operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SetFamError {
    /// A ground-set size outside the supported range was requested.
    #[error("ground set size {n} out of range ({reason})")]
    GroundSize { n: u64, reason: &'static str },

    /// An element outside `1..=n` was used with ground set `[n]`.
    #[error("element {element} out of range for ground set [{n}]")]
    ElementOutOfRange { element: u64, n: u8 },

    /// Two masks over different ground sets were combined.
    #[error("ground set mismatch: [{left}] vs [{right}]")]
    GroundMismatch { left: u8, right: u8 },

    /// An operation required materialising all `2^n` subsets with `n` too
    /// large to do so.
    #[error("operation requires materialising 2^{n} subsets; supported only for n <= {max}")]
    TooLargeToMaterialise { n: u8, max: u8 },

    /// A parameter was invalid for the requested operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Text that should encode a family or set could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A transform's precondition failed; the message carries a witness.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A search exceeded its node budget before completing.
    #[error("node budget of {budget} exhausted after {expanded} nodes")]
    BudgetExhausted { budget: u64, expanded: u64 },
}

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, SetFamError>;
