use thiserror::Error;

use crate::params::Branch;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("below threshold: r = {r} (lasing requires r > 1)")]
    BelowThreshold { r: f64 },

    #[error("operation requires the x-polarized branch, got {0:?}")]
    WrongBranch(Branch),

    #[error("integration diverged at t = {t} ns")]
    Diverged { t: f64 },

    #[error("no oscillation found in the ringdown signal")]
    NoOscillation,

    #[error("frequency grids differ (lengths {left} and {right})")]
    GridMismatch { left: usize, right: usize },

    #[error("degenerate beam splitter angle: one output arm carries no mean current")]
    DegenerateSplit,

    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
