use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical engine.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]: lower bound must be below upper bound")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("class violation: {0}")]
    ClassViolation(String),

    #[error("quadrature did not reach tolerance: achieved {achieved:e}, partial value {partial}")]
    Accuracy { achieved: f64, partial: Complex64 },

    #[error("jet order {requested} exceeds capability {max}")]
    Capability { requested: usize, max: usize },

    #[error("{what} at {location} (pole index {index}); residue {residue:?}")]
    Pole {
        what: &'static str,
        location: Complex64,
        index: usize,
        residue: Option<Complex64>,
    },

    #[error("non-finite value encountered at {at}")]
    Evaluation { at: Complex64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Context { context: String, source: Box<Error> },
}

impl Error {
    /// Wraps `self` with the name of the step that failed.
    pub fn context(self, context: impl Into<String>) -> Error {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, with all context layers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
