use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A self-refining computation stopped at its refinement cap.
    #[error("accuracy error: {what} did not converge (last {last:e}, previous {previous:e})")]
    Accuracy { what: String, last: f64, previous: f64 },

    /// A region reaches past the boundary radius cap.
    #[error("cap error: {0}")]
    Cap(String),

    #[error("malformed coefficient data at line {line}: {reason}")]
    Format { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn accuracy(what: impl Into<String>, last: f64, previous: f64) -> Self {
        Error::Accuracy {
            what: what.into(),
            last,
            previous,
        }
    }
}
