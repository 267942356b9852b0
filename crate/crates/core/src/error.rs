use thiserror::Error;

/// Errors produced by the model, its numerical kernels and the oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("transition kinematically forbidden at this epsilon: {0}")]
    Regime(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("singular point: {0}")]
    Singularity(String),

    #[error("divergent integral: {0}")]
    Divergence(String),

    #[error("{what} did not converge: achieved error {achieved:e}, requested {requested:e}")]
    Convergence {
        what: String,
        achieved: f64,
        requested: f64,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for failures of a numerical method, false for rejected inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Convergence { .. } | Error::Numerical(_))
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
