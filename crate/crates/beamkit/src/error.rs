//! Crate-wide error type.
//!
//! Every fallible operation in the library returns [`Error`]. The variants
//! are coarse on purpose: callers mostly care about three things — was the
//! input malformed (dimensions, parameter ranges, config contents), did a
//! numerical routine fail (no convergence, loss of positive definiteness),
//! or did an I/O operation fail. The CLI maps these onto its exit codes via
//! [`Error::exit_code`].

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Operands have incompatible shapes for the requested operation.
    #[error("{op}: dimension mismatch: {details}")]
    Dimension { op: &'static str, details: String },

    /// A scalar or structural parameter is outside its valid range
    /// (angles, powers, ranks, sample counts, ...).
    #[error("{op}: invalid parameter: {details}")]
    InvalidParameter { op: &'static str, details: String },

    /// A requested rank exceeds the numerical rank of the matrix at hand.
    #[error("{op}: requested rank {requested} exceeds numerical rank {numerical_rank}")]
    RankExceeded {
        op: &'static str,
        requested: usize,
        numerical_rank: usize,
    },

    /// An iterative routine ran out of its iteration budget.
    #[error("{op}: no convergence after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence {
        op: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// A matrix expected to be Hermitian positive definite was not.
    #[error("{op}: matrix is not positive definite: {details}")]
    NotPositiveDefinite { op: &'static str, details: String },

    /// A configuration file failed validation. `path` is the JSON field path
    /// of the offending entry, e.g. `scenario.interferers[1].doa_deg`.
    #[error("config: {path}: {details}")]
    Config { path: String, details: String },

    /// File system or serialization trouble. Stored as a message so the
    /// error type stays `Clone + PartialEq`.
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn dimension(op: &'static str, details: impl Into<String>) -> Self {
        Error::Dimension {
            op,
            details: details.into(),
        }
    }

    pub(crate) fn invalid(op: &'static str, details: impl Into<String>) -> Self {
        Error::InvalidParameter {
            op,
            details: details.into(),
        }
    }

    pub(crate) fn config(path: impl Into<String>, details: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            details: details.into(),
        }
    }

    /// Process exit code the CLI uses for this error: `2` for numerical
    /// failures (a computation was attempted and broke down), `1` for
    /// everything the user can fix up front (bad inputs, bad config, I/O).
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::NoConvergence { .. } | Error::NotPositiveDefinite { .. } => 2,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
