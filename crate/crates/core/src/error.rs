use thiserror::Error;

use crate::lattice::{LatticeTag, LatticeVector};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("expected a vector of the {expected} lattice, found one of the {found} lattice")]
    TagMismatch {
        expected: LatticeTag,
        found: LatticeTag,
    },

    #[error("the zero vector has no primitive vector")]
    ZeroVector,

    #[error("generators span a cone containing the line through {0}")]
    NotStronglyConvex(LatticeVector),

    #[error("{0} is not a root of the cone")]
    NotARoot(LatticeVector),

    #[error("exponent {0} lies outside the dual cone")]
    OutsideDualCone(LatticeVector),

    #[error("polynomials live over different cones")]
    ConeMismatch,

    #[error("invalid surface parameters (d, e) = ({d}, {e}): {reason}")]
    InvalidSurface {
        d: String,
        e: String,
        reason: &'static str,
    },

    #[error("fingerprint is not the kernel-order grid of any X_(d,e): {0}")]
    InconsistentFingerprint(String),

    #[error("roots do not determine a hyperplane for {root}: {reason}")]
    FailedSpan { root: LatticeVector, reason: String },

    #[error("verification failed: {0}")]
    VerifyMismatch(String),

    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    /// Machine-readable error class used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::FailedSpan { .. } => "FAILED_SPAN",
            Error::VerifyMismatch(_) => "VERIFY_MISMATCH",
            _ => "BAD_INPUT",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
