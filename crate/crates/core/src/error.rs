use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Each variant maps onto one process exit code of the command-line tool,
/// see [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not meet its tail bound within the allotted terms.
    #[error("series did not converge within {terms} terms (tail bound {tail_bound:e})")]
    NonConvergence { terms: usize, tail_bound: f64 },

    /// The evaluated quantity has a vanishing denominator at this point.
    #[error("singular point at r = {r}, theta = {theta}: |denominator| = {modulus:e}")]
    Singular { r: f64, theta: f64, modulus: f64 },

    /// Malformed configuration, scan specification or input file.
    #[error("invalid specification: {0}")]
    Spec(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::Spec(msg.into())
    }

    /// Exit code used by the CLI: 2 domain/spec, 3 non-convergence, 4 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Domain(_) | Error::Spec(_) | Error::Singular { .. } => 2,
            Error::NonConvergence { .. } => 3,
            Error::Csv(e) if !matches!(e.kind(), csv::ErrorKind::Io(_)) => 2,
            Error::Io(_) | Error::Csv(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
