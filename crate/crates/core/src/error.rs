//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The input document does not match the expected JSON shape.
    #[error("schema violation: {0}")]
    Schema(String),

    /// A well-formed document failed a named validation rule.
    #[error("invalid flow data [{rule}]: {detail}")]
    Invalid { rule: &'static str, detail: String },

    /// A function was called outside its domain (bad frequency, bad
    /// evaluation point, non-acyclic complex, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine could not reach its accuracy contract.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Text that should denote a rational or complex number does not.
    #[error("parse error: {0}")]
    Parse(String),

    /// Lookup of a bundled example by an unrecognized name.
    #[error("unknown example {0:?}")]
    UnknownExample(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    /// Name of the validation rule behind this error, if it is one.
    pub fn rule(&self) -> Option<&'static str> {
        match self {
            Error::Invalid { rule, .. } => Some(rule),
            _ => None,
        }
    }
}
