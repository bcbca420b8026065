use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter fell outside the interval where the quantity is defined.
    #[error("domain error: {name} = {value} violates {bound}")]
    Domain {
        name: &'static str,
        value: f64,
        bound: &'static str,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The intersection of the balls has no interior.
    #[error("empty or degenerate intersection")]
    Empty,

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("unknown solid `{0}`")]
    UnknownSolid(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, bound: &'static str) -> Self {
        Error::Domain { name, value, bound }
    }
}
