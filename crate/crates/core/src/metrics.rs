//! Forecast accuracy metrics and the priced error (ELFE).
//!
//! Residuals are `actual - forecast`: positive means under-forecast.

use crate::error::{Error, Result};
use crate::fmt_num;

/// Prices per unit of positive (under-forecast) and negative (over-forecast) error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceTags {
    p_plus: f64,
    p_minus: f64,
}

impl PriceTags {
    pub fn new(p_plus: f64, p_minus: f64) -> Result<Self> {
        let ok = |p: f64| p.is_finite() && p > 0.0;
        if !ok(p_plus) || !ok(p_minus) {
            return Err(Error::NonPositivePrice { p_plus, p_minus });
        }
        Ok(PriceTags { p_plus, p_minus })
    }

    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }

    pub fn p_minus(&self) -> f64 {
        self.p_minus
    }

    pub fn total(&self) -> f64 {
        self.p_plus + self.p_minus
    }
}

fn check_len(actual: &[f64], forecast: &[f64]) -> Result<()> {
    if actual.len() != forecast.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} actual values vs {} forecasts",
            actual.len(),
            forecast.len()
        )));
    }
    if actual.is_empty() {
        return Err(Error::InvalidArgument("metrics need at least one observation".into()));
    }
    Ok(())
}

/// Mean absolute percentage error, in percent.
pub fn mape(actual: &[f64], forecast: &[f64]) -> Result<f64> {
    check_len(actual, forecast)?;
    let mut sum = 0.0;
    for (i, (&y, &f)) in actual.iter().zip(forecast).enumerate() {
        if y == 0.0 {
            return Err(Error::ZeroActual(i));
        }
        sum += ((y - f) / y).abs();
    }
    Ok(sum / actual.len() as f64 * 100.0)
}

pub fn mae(actual: &[f64], forecast: &[f64]) -> Result<f64> {
    check_len(actual, forecast)?;
    let sum: f64 = actual.iter().zip(forecast).map(|(y, f)| (y - f).abs()).sum();
    Ok(sum / actual.len() as f64)
}

pub fn mse(actual: &[f64], forecast: &[f64]) -> Result<f64> {
    check_len(actual, forecast)?;
    let sum: f64 = actual.iter().zip(forecast).map(|(y, f)| (y - f).powi(2)).sum();
    Ok(sum / actual.len() as f64)
}

pub fn rmse(actual: &[f64], forecast: &[f64]) -> Result<f64> {
    mse(actual, forecast).map(f64::sqrt)
}

/// Total priced error: `p_plus` times the under-forecast volume plus
/// `p_minus` times the over-forecast volume. Exact-zero residuals cost nothing.
pub fn elfe(actual: &[f64], forecast: &[f64], prices: PriceTags) -> Result<f64> {
    check_len(actual, forecast)?;
    let (mut under, mut over) = (0.0, 0.0);
    for (y, f) in actual.iter().zip(forecast) {
        let e = y - f;
        if e > 0.0 {
            under += e;
        } else if e < 0.0 {
            over -= e;
        }
    }
    Ok(prices.p_plus * under + prices.p_minus * over)
}

/// ELFE divided by `p_plus + p_minus`; equal to the pinball loss at the
/// price-implied quantile level.
pub fn elfe_over_d(actual: &[f64], forecast: &[f64], prices: PriceTags) -> Result<f64> {
    Ok(elfe(actual, forecast, prices)? / prices.total())
}

/// All metrics for one split.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub split_label: String,
    pub n: usize,
    pub mape: f64,
    pub mae: f64,
    pub mse: f64,
    pub rmse: f64,
    pub elfe: f64,
    pub elfe_over_d: f64,
}

impl EvaluationReport {
    pub const CSV_HEADER: &'static str = "split,n,mape,mae,mse,rmse,elfe,elfe_over_d";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.split_label,
            self.n,
            fmt_num(self.mape),
            fmt_num(self.mae),
            fmt_num(self.mse),
            fmt_num(self.rmse),
            fmt_num(self.elfe),
            fmt_num(self.elfe_over_d)
        )
    }

    /// Fixed-width table row for terminal output.
    pub fn table_row(&self) -> String {
        format!(
            "{:<12} {:>6} {:>10.4} {:>12.4} {:>14.4} {:>12.4} {:>14.4} {:>14.4}",
            self.split_label,
            self.n,
            self.mape,
            self.mae,
            self.mse,
            self.rmse,
            self.elfe,
            self.elfe_over_d
        )
    }

    pub fn table_header() -> String {
        format!(
            "{:<12} {:>6} {:>10} {:>12} {:>14} {:>12} {:>14} {:>14}",
            "split", "n", "MAPE", "MAE", "MSE", "RMSE", "ELFE", "ELFE/d"
        )
    }
}

/// Computes every metric and checks the report's internal consistency.
pub fn evaluate(
    actual: &[f64],
    forecast: &[f64],
    prices: PriceTags,
    split_label: &str,
) -> Result<EvaluationReport> {
    let report = EvaluationReport {
        split_label: split_label.to_string(),
        n: actual.len(),
        mape: mape(actual, forecast)?,
        mae: mae(actual, forecast)?,
        mse: mse(actual, forecast)?,
        rmse: rmse(actual, forecast)?,
        elfe: elfe(actual, forecast, prices)?,
        elfe_over_d: elfe_over_d(actual, forecast, prices)?,
    };
    let metrics = [
        report.mape,
        report.mae,
        report.mse,
        report.rmse,
        report.elfe,
        report.elfe_over_d,
    ];
    if !metrics.iter().all(|m| m.is_finite() && *m >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "non-finite metric in report for `{}` (are all inputs finite?)",
            split_label
        )));
    }
    Ok(report)
}
