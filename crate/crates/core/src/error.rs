//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the library.
///
/// Each variant maps onto one of the CLI exit classes through
/// [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown curve `{0}` (expected one of I1, I2, I3, II, III, IV)")]
    UnknownCurve(String),
    #[error("multidegree has {got} entries but curve {curve} has {expected} components")]
    DimensionMismatch {
        curve: String,
        expected: usize,
        got: usize,
    },
    #[error("rank must be a positive integer")]
    InvalidRank,
    #[error("rank {rank} and degree {degree} are not coprime (gcd = {gcd})")]
    NotCoprime { rank: u32, degree: i64, gcd: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("transition {edge} is not applicable at state {state}: {reason}")]
    TransitionNotApplicable {
        edge: String,
        state: String,
        reason: String,
    },
    #[error("minimal block ({i},{j}) has rank {rank}, expected {expected}: the matrix is not a brick")]
    NotABrick {
        i: u8,
        j: u8,
        rank: usize,
        expected: usize,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotCoprime { .. } => 2,
            Error::UnknownCurve(_)
            | Error::DimensionMismatch { .. }
            | Error::InvalidRank
            | Error::InvalidParameter(_)
            | Error::ShapeMismatch(_)
            | Error::Unsupported(_) => 3,
            Error::TransitionNotApplicable { .. } | Error::NotABrick { .. } | Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
