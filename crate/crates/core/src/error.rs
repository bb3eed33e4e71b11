use thiserror::Error;

/// Crate-wide error type.
///
/// `Input` covers malformed or inconsistent caller data (dimension mismatches,
/// out-of-range indices, unparsable files). `Numerical` covers iterative
/// routines that failed to produce a usable result. `Domain` covers
/// evaluations outside a function's domain, such as the secular function at a
/// live pole.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code for the CLI contract: 2 for input problems,
    /// 1 for everything else that is not a success.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Input(_) | Error::Io(_) => 2,
            _ => 1,
        }
    }
}
