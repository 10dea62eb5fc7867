//! Error type shared across the crate.

use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Construction input was not self-adjoint.
    NotHermitian { max_deviation: f64 },
    /// Operands live in different dimensions.
    DimMismatch { left: usize, right: usize },
    /// An operation received an empty input that must be nonempty.
    EmptyInput(&'static str),
    /// A direction vector was (numerically) zero.
    ZeroDirection,
    /// The eigensolver did not reach its residual target.
    EigenNonConvergence { off_diagonal: f64 },
    /// Compression onto a rank-zero projection.
    EmptyCompression,
    /// The system or body is degenerate for the requested operation.
    Degenerate(&'static str),
    /// No fixture is registered under the requested name.
    UnknownFixture,
    /// A scalar argument fell outside its admissible range.
    OutOfRange(&'static str),
    /// Lattice meet closure failed to reach a fixpoint within the
    /// dimension bound; indicates a tolerance fault.
    MeetClosureDiverged,
    /// corner_kind was called on a system without a corner.
    CornerNotFound,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotHermitian { max_deviation } => {
                write!(f, "matrix is not hermitian (max deviation {max_deviation:e})")
            }
            Error::DimMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::EmptyInput(what) => write!(f, "empty input: {what}"),
            Error::ZeroDirection => write!(f, "direction vector is zero"),
            Error::EigenNonConvergence { off_diagonal } => {
                write!(f, "eigensolver did not converge (off-diagonal {off_diagonal:e})")
            }
            Error::EmptyCompression => write!(f, "compression onto a rank-zero projection"),
            Error::Degenerate(what) => write!(f, "degenerate input: {what}"),
            Error::UnknownFixture => write!(f, "unknown fixture name"),
            Error::OutOfRange(what) => write!(f, "argument out of range: {what}"),
            Error::MeetClosureDiverged => {
                write!(f, "lattice meet closure did not reach a fixpoint")
            }
            Error::CornerNotFound => write!(f, "system has no corner"),
        }
    }
}

impl core::error::Error for Error {}
