use thiserror::Error;

/// Errors raised by the spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DtnError {
    /// The spectral parameter sits on (or numerically at) a Dirichlet eigenvalue,
    /// where the requested branch blows up.
    #[error("Λ = {lambda} is a pole of the branch (Dirichlet eigenvalue {pole})")]
    Pole { lambda: f64, pole: f64 },

    /// Argument outside the domain of definition of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The result would overflow; the scaled variant must be used instead.
    #[error("overflow: {0}; use the exponentially scaled variant")]
    Overflow(String),

    /// The requested combination of domain and operation is not supported.
    #[error("unsupported: {0}")]
    Capability(String),

    /// Invalid boundary geometry.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// A requested evaluation cannot be performed to the advertised accuracy.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    /// An iterative method failed to converge.
    #[error("no convergence: {0}")]
    Convergence(String),

    /// Malformed input file or configuration.
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, DtnError>;
