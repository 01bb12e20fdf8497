use thiserror::Error;

/// Errors surfaced by evaluation routines. Domain violations are reported
/// eagerly; no routine silently returns garbage near a pole.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("gamma pole: {0} is a non-positive integer")]
    PoleAtNonPositiveInteger(String),
    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(String),
    #[error("zeta pole at s = 1")]
    PoleAtOne,
    #[error("pole at s = 0 or s = 1 (s = {0})")]
    PoleAtZeroOrOne(String),
    #[error("operation requires a quadratic field, not Q")]
    FieldIsRationals,
    #[error("operation requires an imaginary quadratic field (got {0})")]
    NotImaginaryQuadratic(String),
    #[error("series abscissa violated: need Re(s) > {need}, got {got}")]
    AbscissaViolation { need: f64, got: String },
    #[error("residues of the two terms fail to cancel at s = 1/2: {0}")]
    CancellationAtHalf(String),
    #[error("imaginary part on the critical line exceeds tolerance: {0}")]
    RealnessViolated(String),
    #[error("contour boundary still passes too close to a zero after {0} nudges")]
    BoundaryTooCloseToZero(u32),
    #[error("field {0} not supported by this operation")]
    UnsupportedField(String),
    #[error("degenerate cusp: alpha = beta = 0")]
    DegenerateCusp,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
