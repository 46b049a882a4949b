use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("prime enumeration unavailable: {0}")]
    PrimeEnumerationUnavailable(String),
    #[error("finiteness undetermined: {0}")]
    FinitenessUndetermined(String),
    #[error("window insufficient: {0}")]
    WindowInsufficient(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Short machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::PrimeEnumerationUnavailable(_) => "prime-enumeration-unavailable",
            Error::FinitenessUndetermined(_) => "finiteness-undetermined",
            Error::WindowInsufficient(_) => "window-insufficient",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
