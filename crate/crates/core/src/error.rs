use thiserror::Error;

/// Errors raised by builders, solvers and identity evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular (pivot {pivot:e} below threshold {threshold:e})")]
    SingularMatrix { pivot: f64, threshold: f64 },

    #[error("matrix is not Hermitian (asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("bandwidth m = {m} is outside the admissible range {min}..={max} for n = {n}")]
    BadBandwidth { m: usize, n: usize, min: usize, max: usize },

    #[error("boundary corrections overlap: 2m-1 = {} exceeds n = {n}", 2 * m - 1)]
    OverlapError { m: usize, n: usize },

    #[error("{what} = {got} is too small (minimum {min})")]
    TooSmall { what: &'static str, got: usize, min: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("pencil is singular: the B symbol vanishes at mode {mode}")]
    SingularPencil { mode: usize },

    #[error("quadratic for mode {mode} degenerates to a constant")]
    DegenerateQuadratic { mode: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("B is singular")]
    SingularB,

    #[error("general (non Hermitian-definite) path supports n <= {max}, got {n}")]
    TooLargeForGeneralPath { n: usize, max: usize },

    #[error("vector is zero")]
    ZeroVector,

    #[error("scaling constants must be nonzero")]
    ZeroScale,

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("denominator factor {value:e} vanishes")]
    SingularDenominator { value: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
