use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("jet populated only through order {have}, order {need} required")]
    IncompleteJet { have: usize, need: usize },

    #[error("grid index ({it}, {ix}, {iz}) is too close to the boundary for central stencils")]
    OutOfStencil { it: usize, ix: usize, iz: usize },

    #[error("grid too small: {0}")]
    GridTooSmall(String),

    #[error("generator catalog mismatch: {0}")]
    CatalogMismatch(String),

    #[error("jet is off the solution manifold (relative residual {0:.3e})")]
    OffManifold(f64),

    #[error("singular point: {0}")]
    SingularPoint(String),

    #[error("out of regime: {0}")]
    OutOfRegime(String),

    #[error("time {t} outside trajectory span [{start}, {end}]")]
    OutsideSpan { t: f64, start: f64, end: f64 },

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("quadrature did not converge: estimate {estimate:.3e} exceeds {tolerance:.3e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("undefined period: {0}")]
    UndefinedPeriod(String),

    #[error("i/o: {0}")]
    Io(String),

    #[error("format: {0}")]
    Format(String),

    #[error("config: {0}")]
    Config(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
