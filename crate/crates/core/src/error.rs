use thiserror::Error;

/// Which marginal locus an input sits on when a classification is refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locus {
    /// Zero is an eigenvalue.
    Determinant,
    /// A conjugate pair sits on the imaginary axis.
    Resultant,
}

impl std::fmt::Display for Locus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Locus::Determinant => write!(f, "Z"),
            Locus::Resultant => write!(f, "R"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,

    #[error("degree {degree} is too small (need at least {min})")]
    DegreeTooSmall { degree: usize, min: usize },

    #[error("degenerate remainder sequence (degrees {degrees:?})")]
    DegenerateSequence { degrees: Vec<usize> },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("marginal input: on locus {0}")]
    Marginal(Locus),

    #[error("polynomial has a root on the imaginary axis")]
    ImaginaryAxisRoot,

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("quadrature did not converge (last estimate {estimate:e})")]
    QuadratureFailed { estimate: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("unbound parameter `{0}`")]
    Unbound(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("exponent must be an integer")]
    NonIntegerExponent,

    #[error("invalid sweep specification: {0}")]
    InvalidSweep(String),

    #[error("identity check failed: {0}")]
    IdentityFailed(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
