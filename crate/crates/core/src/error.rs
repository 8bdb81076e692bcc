//! Error types shared across the crate.

use crate::poly::Poly;

/// A polynomial that does not split into linear factors over Q(i).
///
/// This is a value, not a fault: it records exactly which factor would need
/// eigenvalues outside Q(i), so callers can report the offending input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitFailure {
    /// The non-split factor, monic.
    pub factor: Poly,
    /// Where the failure surfaced (e.g. which basis element's ad matrix).
    pub context: String,
}

impl SplitFailure {
    pub fn new(factor: Poly) -> Self {
        SplitFailure {
            factor,
            context: String::new(),
        }
    }

    pub fn with_context(mut self, context: impl Into<String>) -> Self {
        self.context = context.into();
        self
    }
}

impl std::fmt::Display for SplitFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.context.is_empty() {
            write!(f, "polynomial does not split over Q(i): {}", self.factor)
        } else {
            write!(
                f,
                "polynomial does not split over Q(i) ({}): {}",
                self.context, self.factor
            )
        }
    }
}

impl std::error::Error for SplitFailure {}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Split(#[from] SplitFailure),
    #[error("not a Lie subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("subalgebra is not nilpotent")]
    NotNilpotent,
    #[error("not a Cartan subalgebra: {0}")]
    NotCartan(String),
    #[error(
        "Cartan search failed after {attempts} attempts; best candidate has \
         dimension {best_dim} with basis {best_candidate}"
    )]
    CartanSearchFailed {
        attempts: usize,
        best_dim: usize,
        best_candidate: String,
    },
    #[error("group element rejected: {0}")]
    Rejected(String),
    #[error("element does not normalize the subalgebra")]
    NotInNormalizer,
    #[error("internal consistency violation: {0}")]
    Inconsistency(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
