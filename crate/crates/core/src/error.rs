use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The effective channel is identically zero, so no MRT precoder exists.
    #[error("degenerate channel: zero vector has no MRT direction")]
    DegenerateChannel,

    #[error("rotation |theta| = {theta} rad exceeds the pi/6 sector bound")]
    OutOfSector { theta: f64 },

    /// Configuration failed validation; `field` is the dotted key path.
    #[error("{field}: {message}")]
    Config { field: String, message: String },

    #[error("config parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}
