//! End-to-end runs: features, split, fit, evaluation, sweeps and comparisons.
//!
//! Everything here is deterministic for fixed inputs. Sweep fits run in
//! parallel over a shared read-only training set; results keep grid order.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::baseline::fit_ols;
use crate::dataset::{build_supervised, chronological_split, LoadSeries, SplitSpec, SupervisedSet};
use crate::error::{Error, Result};
use crate::fmt_num;
use crate::ingestion::{write_predictions, PredictionTable};
use crate::metrics::{evaluate, EvaluationReport, PriceTags};
use crate::model_io::{FeatureLayout, FittedModel, ModelFile};
use crate::solver::{fit_quantile, tau_from_prices, SolverOptions, Tau};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Qr,
    Mlr,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qr" => Ok(Method::Qr),
            "mlr" => Ok(Method::Mlr),
            other => Err(Error::InvalidArgument(format!("unknown method `{}`", other))),
        }
    }
}

/// The asymmetric cost, given either as a quantile level or as prices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cost {
    Tau(Tau),
    Prices(PriceTags),
}

impl Cost {
    pub fn tau(&self) -> Result<Tau> {
        match *self {
            Cost::Tau(t) => Ok(t),
            Cost::Prices(p) => tau_from_prices(p),
        }
    }

    /// Prices used for ELFE. A bare `tau` is read as `(tau, 1 - tau)`, which
    /// makes ELFE/d the pinball loss at `tau`.
    pub fn prices(&self) -> Result<PriceTags> {
        match *self {
            Cost::Tau(t) => PriceTags::new(t.value(), 1.0 - t.value()),
            Cost::Prices(p) => Ok(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub lead_months: u32,
    pub lag_years: u32,
    pub train_fraction: f64,
    pub include_intercept: bool,
    pub solver: SolverOptions,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            lead_months: 12,
            lag_years: 11,
            train_fraction: 0.6,
            include_intercept: true,
            solver: SolverOptions::default(),
        }
    }
}

impl PipelineConfig {
    pub fn layout(&self) -> FeatureLayout {
        FeatureLayout {
            lead_months: self.lead_months,
            lag_years: self.lag_years,
            intercept: self.include_intercept,
        }
    }
}

/// Builds the supervised set and splits it chronologically.
pub fn prepare(
    series: &LoadSeries,
    config: &PipelineConfig,
) -> Result<(SupervisedSet, SupervisedSet)> {
    let set = build_supervised(
        series,
        config.lead_months,
        config.lag_years,
        config.include_intercept,
    )?;
    chronological_split(&set, SplitSpec::new(config.train_fraction)?)
}

pub fn fit_method(
    train: &SupervisedSet,
    method: Method,
    tau: Tau,
    solver: &SolverOptions,
) -> Result<FittedModel> {
    Ok(match method {
        Method::Qr => FittedModel::Quantile(fit_quantile(train, tau, solver)?),
        Method::Mlr => FittedModel::Ols(fit_ols(train)?),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitResult {
    pub predictions: PredictionTable,
    pub report: EvaluationReport,
}

fn score(
    model: &FittedModel,
    set: &SupervisedSet,
    prices: PriceTags,
    label: &str,
) -> Result<SplitResult> {
    let forecast = model.predict(set.design())?;
    let report = evaluate(set.targets(), &forecast, prices, label)?;
    Ok(SplitResult {
        predictions: PredictionTable {
            index: set.index().to_vec(),
            actual: set.targets().to_vec(),
            forecast,
        },
        report,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitOutcome {
    pub model: ModelFile,
    pub train: SplitResult,
    pub validation: SplitResult,
}

pub fn run_fit(
    series: &LoadSeries,
    config: &PipelineConfig,
    method: Method,
    cost: Cost,
) -> Result<FitOutcome> {
    let (train, validation) = prepare(series, config)?;
    let prices = cost.prices()?;
    let model = fit_method(&train, method, cost.tau()?, &config.solver)?;
    Ok(FitOutcome {
        train: score(&model, &train, prices, "train")?,
        validation: score(&model, &validation, prices, "validation")?,
        model: ModelFile {
            layout: config.layout(),
            model,
        },
    })
}

pub fn write_reports(path: impl AsRef<Path>, reports: &[&EvaluationReport]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{}", EvaluationReport::CSV_HEADER)?;
    for r in reports {
        writeln!(w, "{}", r.csv_row())?;
    }
    w.flush()?;
    Ok(())
}

fn write_split(path: &Path, split: &SplitResult) -> Result<()> {
    let p = &split.predictions;
    write_predictions(path, &p.index, &p.actual, &p.forecast)
}

/// Writes `model.txt`, `predictions_train.csv`, `predictions_validation.csv`
/// and `report.csv` into `dir`, creating it if needed.
pub fn write_fit_outputs(outcome: &FitOutcome, dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    outcome.model.save(dir.join("model.txt"))?;
    write_split(&dir.join("predictions_train.csv"), &outcome.train)?;
    write_split(&dir.join("predictions_validation.csv"), &outcome.validation)?;
    write_reports(
        dir.join("report.csv"),
        &[&outcome.train.report, &outcome.validation.report],
    )
}

/// `0.50, 0.55, ..., 0.90`.
pub fn default_sweep_grid() -> Vec<Tau> {
    (0..9)
        .map(|i| Tau::new((50 + 5 * i) as f64 / 100.0).expect("grid inside (0, 1)"))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub tau: Tau,
    pub train: EvaluationReport,
    pub validation: EvaluationReport,
}

/// Fits one quantile model per grid value and scores each at fixed `prices`.
pub fn run_sweep(
    train: &SupervisedSet,
    validation: &SupervisedSet,
    grid: &[Tau],
    prices: PriceTags,
    solver: &SolverOptions,
) -> Result<Vec<SweepRow>> {
    grid.par_iter()
        .map(|&tau| {
            let model = FittedModel::Quantile(fit_quantile(train, tau, solver)?);
            Ok(SweepRow {
                tau,
                train: score(&model, train, prices, "train")?.report,
                validation: score(&model, validation, prices, "validation")?.report,
            })
        })
        .collect()
}

pub const SWEEP_HEADER: &str = "tau,train_mape,train_mae,train_rmse,train_elfe_over_d,\
validation_mape,validation_mae,validation_rmse,validation_elfe_over_d";

pub fn write_sweep(path: impl AsRef<Path>, rows: &[SweepRow]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{}", SWEEP_HEADER)?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            fmt_num(r.tau.value()),
            fmt_num(r.train.mape),
            fmt_num(r.train.mae),
            fmt_num(r.train.rmse),
            fmt_num(r.train.elfe_over_d),
            fmt_num(r.validation.mape),
            fmt_num(r.validation.mae),
            fmt_num(r.validation.rmse),
            fmt_num(r.validation.elfe_over_d),
        )?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub method: String,
    pub train: EvaluationReport,
    pub validation: EvaluationReport,
}

/// Scores the built-in methods and any external prediction tables.
///
/// An external table must cover the training rows followed by the validation
/// rows, date for date. Its forecast column is scored against the actual
/// values of the supervised set.
pub fn run_compare(
    train: &SupervisedSet,
    validation: &SupervisedSet,
    cost: Cost,
    solver: &SolverOptions,
    externals: &[(String, PredictionTable)],
) -> Result<Vec<CompareRow>> {
    let prices = cost.prices()?;
    let tau = cost.tau()?;
    let mut rows = Vec::new();
    for method in [Method::Qr, Method::Mlr] {
        let model = fit_method(train, method, tau, solver)?;
        rows.push(CompareRow {
            method: model.method().to_string(),
            train: score(&model, train, prices, "train")?.report,
            validation: score(&model, validation, prices, "validation")?.report,
        });
    }
    let n_train = train.len();
    for (name, table) in externals {
        let expected = train.index().iter().chain(validation.index());
        if table.index.len() != n_train + validation.len()
            || !table.index.iter().eq(expected)
        {
            return Err(Error::IndexMismatch(format!(
                "predictions for `{}` do not cover the {} evaluation months in order",
                name,
                n_train + validation.len()
            )));
        }
        let (ftrain, fval) = table.forecast.split_at(n_train);
        rows.push(CompareRow {
            method: name.clone(),
            train: evaluate(train.targets(), ftrain, prices, "train")?,
            validation: evaluate(validation.targets(), fval, prices, "validation")?,
        });
    }
    Ok(rows)
}

pub const COMPARE_HEADER: &str = "method,train_mape,validation_mape,train_mae,validation_mae,\
train_rmse,validation_rmse,train_elfe,validation_elfe,train_elfe_over_d,validation_elfe_over_d";

pub fn write_compare(path: impl AsRef<Path>, rows: &[CompareRow]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{}", COMPARE_HEADER)?;
    for r in rows {
        let vals = [
            r.train.mape,
            r.validation.mape,
            r.train.mae,
            r.validation.mae,
            r.train.rmse,
            r.validation.rmse,
            r.train.elfe,
            r.validation.elfe,
            r.train.elfe_over_d,
            r.validation.elfe_over_d,
        ];
        let cells: Vec<String> = vals.iter().map(|v| fmt_num(*v)).collect();
        writeln!(w, "{},{}", r.method, cells.join(","))?;
    }
    w.flush()?;
    Ok(())
}
