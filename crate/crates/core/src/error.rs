use core::fmt;

/// Errors surfaced by the numeric kernels and model constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A Hermitian factorization failed even after the jitter retry.
    NotPositiveDefinite,
    /// Matrix operands have incompatible shapes.
    DimensionMismatch,
    /// A channel matrix does not match the declared antenna counts.
    ShapeError,
    /// A gain, capacity or count that must be nonnegative is not.
    NegativeParameter,
    /// A seed spec is internally inconsistent.
    InvalidSpec,
    /// A constraint set has no finite bound in any bounding direction.
    Unbounded,
    /// An SNR sweep is too short or a term evaluation failed inside it.
    IllConditionedSweep,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPositiveDefinite => write!(f, "matrix is not positive definite"),
            Error::DimensionMismatch => write!(f, "matrix dimensions are incompatible"),
            Error::ShapeError => write!(f, "channel matrix shape does not match antenna counts"),
            Error::NegativeParameter => write!(f, "parameter must be nonnegative"),
            Error::InvalidSpec => write!(f, "seed spec is invalid"),
            Error::Unbounded => write!(f, "constraint set does not bound the region"),
            Error::IllConditionedSweep => write!(f, "SNR sweep is ill-conditioned"),
        }
    }
}
