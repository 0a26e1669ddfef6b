use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("not a valid channel: max deviation from trace preservation {deviation:.3e}")]
    InvalidChannel { deviation: f64 },

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("channel is not a generalized dephasing channel: {0}")]
    NotDephasing(String),

    #[error("rate point carries no achieving ensemble")]
    MissingEnsemble,

    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}
