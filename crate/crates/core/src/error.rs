use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library. `code()` gives the stable
/// machine-readable identifier the CLI prints on standard error.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("moments must be finite, got ({0}, {1}, {2})")]
    NonFinite(f64, f64, f64),
    #[error("moments must be strictly positive, got ({0}, {1}, {2})")]
    NonPositive(f64, f64, f64),
    #[error("moments ({0}, {1}, {2}) are not separated by the relative degeneracy threshold")]
    Degenerate(f64, f64, f64),
    #[error("moments ({0}, {1}, {2}) are not in increasing order")]
    Disordered(f64, f64, f64),
    #[error("the real inertia map is only defined for x >= 0, got {0}")]
    NegativeParameter(f64),
    #[error("parameter must be finite, got {0}")]
    NonFiniteParameter(f64),
    #[error("image ({0}, {1}, {2}) violates the ordering 0 < l1 < l2 < l3")]
    OrderViolation(f64, f64, f64),
    #[error("middle component {0} is too close to zero: det = AC(1 + x/B) has a pole")]
    PoleAtZeroB(f64),
    #[error("scale factor must be non-zero")]
    ZeroScale,
    #[error("real scale factor must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("semigroup shift must be real and non-negative")]
    NegativeShift,
    #[error("element is not in the real semigroup (needs real scale > 0, real shift >= 0)")]
    NotInSemigroup,
    #[error("a shift b > 0 has no inverse in the semigroup")]
    NoInverseInSemigroup,
    #[error("axis has squared norm {0}, expected 1")]
    NonUnitAxis(f64),
    #[error("axis rule produced ({0}, {1}, {2}), outside the ordered positive moments")]
    IntermediateDegenerate(f64, f64, f64),
    #[error("tolerance `{0}` must be strictly positive")]
    InvalidTolerance(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonFinite(..) => "NON_FINITE",
            Error::NonPositive(..) => "NON_POSITIVE",
            Error::Degenerate(..) => "DEGENERATE",
            Error::Disordered(..) => "DISORDERED",
            Error::NegativeParameter(_) => "NEGATIVE_PARAMETER",
            Error::NonFiniteParameter(_) => "NON_FINITE_PARAMETER",
            Error::OrderViolation(..) => "ORDER_VIOLATION",
            Error::PoleAtZeroB(_) => "POLE_AT_ZERO_B",
            Error::ZeroScale => "ZERO_SCALE",
            Error::NonPositiveScale(_) => "NON_POSITIVE_SCALE",
            Error::NegativeShift => "NEGATIVE_SHIFT",
            Error::NotInSemigroup => "NOT_IN_SEMIGROUP",
            Error::NoInverseInSemigroup => "NO_INVERSE_IN_SEMIGROUP",
            Error::NonUnitAxis(_) => "NON_UNIT_AXIS",
            Error::IntermediateDegenerate(..) => "INTERMEDIATE_DEGENERATE",
            Error::InvalidTolerance(_) => "INVALID_TOLERANCE",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
            Error::Io(_) => "IO_ERROR",
        }
    }
}
