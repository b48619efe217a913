use thiserror::Error;

/// Errors produced while building grids, problems, or running solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("time {t} outside horizon [0, {horizon}]")]
    TimeOutOfRange { t: f64, horizon: f64 },

    #[error("field length {got} does not match grid node count {expected}")]
    FieldSizeMismatch { got: usize, expected: usize },

    #[error("fields live on different grids: {0}")]
    GridMismatch(String),

    #[error("grids are not nested: {0}")]
    IncompatibleGrids(String),

    #[error("control {0:?} outside the admissible box (bound {1})")]
    ControlOutOfBounds(Vec<f64>, f64),

    #[error("initial density projection is identically zero on the grid")]
    EmptyProjection,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
