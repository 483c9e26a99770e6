use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("no negativity threshold exists: {0}")]
    NoThreshold(String),

    #[error("grid specification invalid: {0}")]
    InvalidGrid(String),

    #[error("domain too small: {clipped:.3e} of the probability mass falls outside the grid")]
    DomainTooSmall { clipped: f64 },

    #[error("point ({x}, {p}) lies outside the grid domain")]
    Domain { x: f64, p: f64 },

    #[error("spectral convolution leakage {leakage:.3e} exceeds {limit:.1e}")]
    Aliasing { leakage: f64, limit: f64 },

    #[error("grids are not compatible: {0}")]
    GridMismatch(String),

    #[error("explicit diffusion step unstable: kappa*dt = {kappa_dt:.3e} > {bound:.3e}")]
    Stability { kappa_dt: f64, bound: f64 },

    #[error("frequency grid truncates {truncated:.3e} of the mode-function mass")]
    GridSpan { truncated: f64 },

    #[error("pump parameter {0} is at or above the oscillation threshold")]
    PumpRange(f64),

    #[error("noise spectrum has a negative sample {value} at omega = {omega}")]
    NegativeNoise { omega: f64, value: f64 },

    #[error("state purity {0} is not positive")]
    DegeneratePurity(f64),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
