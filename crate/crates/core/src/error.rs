use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("precision insufficient: {0}")]
    Precision(String),
    #[error("validation failed ({hypothesis}): {detail}")]
    Validation { hypothesis: String, detail: String },
    #[error("config error: {0}")]
    Config(String),
    #[error("singular element: {0}")]
    Singular(String),
    #[error("presentation error: {0}")]
    Presentation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("recognition failed: {0}")]
    Recognition(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
