use thiserror::Error;

/// Errors raised by state construction, channel application and the
/// phase-space / metrology pipelines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{0} states are not representable as a diagonal photon-number distribution")]
    NotDiagonal(&'static str),

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("truncation failed: tail bound {achieved:e} still above tolerance {tol:e} at dimension {dim}")]
    Truncation { achieved: f64, tol: f64, dim: usize },

    #[error("grid half-width {q_max} does not cover mean photon number {mean_photons} (need at least {required})")]
    GridCoverage {
        q_max: f64,
        mean_photons: f64,
        required: f64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("numerical integrity check failed: {0}")]
    Numerical(String),

    #[error("operation requires a field in the {expected} convention")]
    Convention { expected: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::InvalidParameter {
            name,
            value,
            reason: "must lie in [0, 1]",
        });
    }
    Ok(())
}

pub(crate) fn check_non_negative(name: &'static str, value: f64) -> Result<()> {
    if !(value >= 0.0) || !value.is_finite() {
        return Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and non-negative",
        });
    }
    Ok(())
}
