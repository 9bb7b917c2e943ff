use std::io;
use std::path::PathBuf;

use randers_core::algebra::describe_vector;
use randers_core::Error;

use crate::definition::DefinitionError;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    /// A verification ran and reported a failure or mismatch.
    pub const CHECK_FAILED: u8 = 1;
    /// Bad command line: unknown case, missing option, invalid parameters.
    pub const USAGE: u8 = 2;
    /// Unreadable input: TOML syntax, bad rational, wrong vector length.
    pub const PARSE: u8 = 3;
    /// `g(Q, Q) >= 1`.
    pub const NORM_TOO_LARGE: u8 = 4;
    /// A Douglas-type metric was required.
    pub const NOT_DOUGLAS: u8 = 5;
    /// Flag vectors are dependent or zero.
    pub const DEGENERATE_FLAG: u8 = 6;
    /// Structure constants, metric or Jacobi identity invalid.
    pub const INVALID_ALGEBRA: u8 = 7;
    pub const IO: u8 = 8;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] Error),

    #[error("{}: {source}", path.display())]
    Definition { path: PathBuf, source: DefinitionError },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    /// An argument that could not be parsed.
    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Core(e) => match e {
                Error::ParseScalar(_) => exit::PARSE,
                Error::NormTooLarge { .. } => exit::NORM_TOO_LARGE,
                Error::NotDouglas => exit::NOT_DOUGLAS,
                Error::DegeneratePlane | Error::ZeroDirection => exit::DEGENERATE_FLAG,
                Error::DimensionMismatch { .. }
                | Error::NotAntisymmetric { .. }
                | Error::MetricNotSymmetric { .. }
                | Error::MetricNotPositiveDefinite { .. } => exit::INVALID_ALGEBRA,
                Error::UnknownCase(_) | Error::InvalidParameters(_) => exit::USAGE,
            },
            Self::Definition { source, .. } if source.is_parse_error() => exit::PARSE,
            Self::Definition { .. } => exit::INVALID_ALGEBRA,
            Self::Io { .. } => exit::IO,
            Self::Input(_) => exit::PARSE,
            Self::Usage(_) => exit::USAGE,
        }
    }

    /// Message with any per-item diagnostics on following lines.
    pub fn report(&self) -> String {
        let mut out = format!("error: {self}");
        if let Self::Definition { source: DefinitionError::Jacobi { labels, violations }, .. } = self {
            for v in violations {
                out.push_str("\n  ");
                out.push_str(&describe_jacobi(v, labels));
            }
        }
        out
    }
}

/// Renders a Jacobi violation with basis labels.
pub fn describe_jacobi(v: &randers_core::JacobiViolation, labels: &[String]) -> String {
    format!(
        "({}, {}, {}): cyclic sum = {}",
        labels[v.i],
        labels[v.j],
        labels[v.k],
        describe_vector(&v.residual, labels)
    )
}
