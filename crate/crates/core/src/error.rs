use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A model or waveform parameter violates its invariant.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("trace spans {span_s} s but at least {required_s} s are required")]
    TraceTooShort { span_s: f64, required_s: f64 },

    #[error("trace is not closed: |V(end) - V(start)| = {gap_v} V")]
    TraceNotClosed { gap_v: f64 },

    /// Resistance never moves, so a period is undefined.
    #[error("resistance trace is constant; period undefined")]
    ConstantTrace,

    #[error("insufficient sweep: {0}")]
    InsufficientSweep(String),

    #[error("config parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("config validation error in `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
