use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("design matrix is rank deficient (column {column} `{name}` is linearly dependent on earlier columns)")]
    RankDeficient { column: usize, name: String },

    #[error("underdetermined system: {rows} rows for {cols} coefficients")]
    Underdetermined { rows: usize, cols: usize },

    #[error("simplex exceeded {limit} pivots without reaching optimality")]
    PivotLimit { limit: usize },

    #[error("numerical failure in solver: {0}")]
    Numerical(String),

    #[error("quantile level must lie strictly inside (0, 1), got {0}")]
    InvalidTau(f64),

    #[error("prices must be strictly positive, got p_plus={p_plus}, p_minus={p_minus}")]
    NonPositivePrice { p_plus: f64, p_minus: f64 },

    #[error("actual value is zero at position {0}; percentage error undefined")]
    ZeroActual(usize),

    #[error("no target has a complete lag window")]
    EmptyResult,

    #[error("lead of {0} months is not a whole number of years")]
    NonMonthlyLead(u32),

    #[error("split would leave an empty side ({train} train / {validation} validation rows)")]
    DegenerateSplit { train: usize, validation: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid record: {0}")]
    InvalidRecord(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("duplicate month {0}")]
    DuplicateMonth(String),

    #[error("{0}: no data rows")]
    EmptyFile(PathBuf),

    #[error("index mismatch: {0}")]
    IndexMismatch(String),

    #[error("malformed model file: {0}")]
    ModelFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
