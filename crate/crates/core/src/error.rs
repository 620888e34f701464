use thiserror::Error;

/// Errors raised by the link-simulation library.
#[derive(Debug, Error)]
pub enum Error {
    /// A size that must be a power of two (or otherwise constrained) is not.
    #[error("invalid size {size}: {reason}")]
    Size { size: usize, reason: &'static str },

    /// Array shapes that must agree do not.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Payload or frame length incompatible with the configured framing.
    #[error("framing error: {0}")]
    Framing(String),

    /// Out-of-range or non-finite parameter.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Power of a signal is zero, so a power ratio is undefined.
    #[error("undefined power: signal has zero mean power")]
    UndefinedPower,

    /// Malformed configuration text or CSV content.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
