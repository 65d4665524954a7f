//! Load forecasting under asymmetric error prices.
//!
//! Positive forecast errors (under-forecasts) and negative ones (over-forecasts)
//! carry different prices. Minimizing the priced error of a linear forecaster is
//! a quantile regression at `tau = p_plus / (p_plus + p_minus)`, which this crate
//! solves exactly with a simplex method on the split-residual linear program.
//!
//! The pipeline runs ingest, same-month lag features, a chronological split,
//! quantile (or least-squares) fitting, evaluation and sweeps over `tau`.

pub mod baseline;
pub mod dataset;
mod error;
pub mod ingestion;
pub mod linalg;
pub mod metrics;
pub mod model_io;
pub mod pipeline;
pub mod solver;
pub mod synthetic;

pub use baseline::{fit_ols, predict_ols, LinearModel};
pub use dataset::{
    build_supervised, chronological_split, LoadSeries, MonthlyRecord, SplitSpec, SupervisedSet,
    YearMonth,
};
pub use error::{Error, Result};
pub use ingestion::{read_predictions, read_series, write_predictions, IngestOptions, Normalize};
pub use linalg::Matrix;
pub use metrics::{elfe, elfe_over_d, evaluate, mae, mape, mse, rmse, EvaluationReport, PriceTags};
pub use solver::{
    fit_quantile, pinball_objective, predict, tau_from_prices, QuantileModel, SolverOptions, Tau,
    TieBreak,
};

/// Formats a number with 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_num(x: f64) -> String {
    format!("{:.16e}", x)
}
