use thiserror::Error;

/// Errors produced by the library.
///
/// The variants map onto the CLI exit-code contract: everything here is an
/// input or precondition problem (exit code 2). A property that merely fails
/// to hold is reported as a value, never as an error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    /// A Cayley table that is not a Latin square.
    #[error("structure error: {0}")]
    Structure(String),

    #[error("identity error: {0}")]
    IdentityPosition(String),

    #[error("cocycle normalization error: {0}")]
    CocycleNormalization(String),

    /// The question is ill-posed for this input (e.g. asking for LIP
    /// conditions over a base loop without LIP).
    #[error("precondition error: {0}")]
    Precondition(String),

    #[error("order-3 element: {0}")]
    Order3(String),

    #[error("resource error: {0}")]
    Resource(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
