use thiserror::Error;

/// Errors produced by the library.
///
/// Input validation failures (`InvalidInput`, `DimensionMismatch`,
/// `DimensionTooLarge`, `NonHermitian`, `OutOfLinearRegime`) are
/// distinguished from `Numeric`, which signals that a computation produced
/// an inconsistent value from inputs that passed validation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operator is not Hermitian (max elementwise deviation {max_dev:.3e})")]
    NonHermitian { max_dev: f64 },

    #[error("Hilbert-space dimension overflow: 2J = {two_j} exceeds cap {cap}")]
    DimensionTooLarge { two_j: u32, cap: u32 },

    #[error("outside the linear Faraday regime: |omega|/gamma = {ratio:.3} > 0.3")]
    OutOfLinearRegime { ratio: f64 },

    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    /// True for errors raised by input validation rather than by a
    /// failed computation.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Numeric(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
