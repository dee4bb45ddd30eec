use thiserror::Error;

/// Library-wide error type.
///
/// Mathematical precondition failures (`NonHomogeneous`, `NonMinimal`,
/// `NotZeroDimensional`, ...) are kept distinct from `Inconsistency`,
/// which signals that an internal certificate failed and therefore
/// indicates a bug rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("variable index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("generator {0} is the zero polynomial")]
    ZeroGenerator(usize),

    #[error("ideal is not homogeneous: {0}")]
    NonHomogeneous(String),

    #[error("not zero-dimensional at the origin (no full graded piece up to degree {bound})")]
    NotZeroDimensional { bound: u32 },

    #[error("generators are not a minimal generating set: {0}")]
    NonMinimal(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("polynomial lies outside the computed submodule span: {0}")]
    OutOfSpan(String),

    #[error("inconsistent recovery samples: {0}")]
    InconsistentSamples(String),

    #[error("degenerate linear system in parameter recovery")]
    DegenerateRecovery,

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit status used by the command-line front end: 2 for parse
    /// errors, 3 for mathematical precondition failures, 4 for internal
    /// inconsistency certificates.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Inconsistency(_) => 4,
            _ => 3,
        }
    }
}
