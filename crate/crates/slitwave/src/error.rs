use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Validation and analysis failures.
///
/// Every finite input maps to a structured error; no code path panics on
/// user data.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("wavelength must be positive")]
    NonPositiveWavelength,
    #[error("width must be positive")]
    NonPositiveWidth,
    #[error("slit length must be positive (or infinite)")]
    NonPositiveLength,
    #[error("thickness must be non-negative and finite")]
    InvalidThickness,
    #[error("gap must be non-negative and finite")]
    InvalidGap,
    #[error("slit count must be at least 1")]
    NoSlits,
    #[error("direction has sin^2(alpha) + sin^2(beta) > 1: no real propagation direction")]
    InvalidDirection,
    #[error("screen distance must be positive")]
    NonPositiveScreenDistance,
    #[error("scan range must satisfy beta_min < beta_max")]
    EmptyScanRange,
    #[error("scan needs at least 2 samples")]
    TooFewSamples,
    #[error("max mode index must be at least 1")]
    ZeroModeCap,
    #[error("tail tolerance must lie strictly between 0 and 1")]
    TailToleranceOutOfRange,
    #[error("point ({x:e}, {y:e}, {z:e}) lies outside the slit volume")]
    PointOutsideSlit { x: f64, y: f64, z: f64 },
    #[error("operation requires an infinite slit length")]
    FiniteLength,
    #[error("series too short for extremum analysis")]
    SeriesTooShort,
    #[error("pattern series grids do not match")]
    GridMismatch,
    #[error("missing-order analysis requires at least 2 slits")]
    TooFewSlitsForOrders,
    #[error("scan range covers no grating orders")]
    NoOrdersInRange,
    #[error("unknown scenario '{0}'")]
    UnknownScenario(String),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
