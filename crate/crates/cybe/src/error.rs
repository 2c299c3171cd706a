//! Crate-wide error type.
//!
//! Two failure families matter to callers: malformed input (bad files, bad
//! indices, shape mismatches) and mathematical refusals (a precondition of a
//! construction does not hold for these exact values). The CLI maps the
//! former to exit code 2 and the latter to exit code 1.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Input(String),

    /// Incompatible dimensions between otherwise well-formed objects.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A bilinear form required to be nondegenerate is singular.
    #[error("bilinear form is degenerate")]
    DegenerateForm,

    /// A mathematical precondition fails for these exact values.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A construction was refused because a required check failed; the
    /// message carries the first witness.
    #[error("construction refused: {0}")]
    Refused(String),

    /// The pole part of a spectral-parameter expression does not cancel,
    /// so the requested expansion is not polynomial.
    #[error("pole does not cancel: coefficient tensor is not invariant on {0}")]
    PoleDoesNotCancel(String),

    /// Candidate enumeration would exceed the configured budget.
    #[error("search budget exceeded: {candidates} candidates over the limit of {budget}")]
    SearchBudget { candidates: u128, budget: u128 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that mean "your input files are malformed" rather
    /// than "the mathematics rejected this input".
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Input(_) | Error::Dimension(_) | Error::Io(_) | Error::Json(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
