use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("quadrature did not converge after {panels} panels: estimates {coarse:e} and {fine:e}")]
    QuadratureNotConverged { coarse: f64, fine: f64, panels: usize },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("numerical derivative unstable: Richardson levels differ by {rel_diff:e} (relative)")]
    UnstableDerivative { rel_diff: f64 },

    #[error("wall offset too large: eigenvalue {index} shifts by {shift:e} (relative) when the inset doubles")]
    WallOffsetTooLarge { index: usize, shift: f64 },

    #[error("grid resolution inadequate: {0}")]
    GridResolution(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors caused by bad input rather than by a numerical engine.
    pub fn is_configuration(&self) -> bool {
        matches!(self, Error::InvalidParameter { .. })
    }
}
