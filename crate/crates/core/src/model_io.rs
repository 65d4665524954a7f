//! Flat `key = value` text format for fitted models.
//!
//! ```text
//! kind = quantile
//! tau = 6.9999999999999996e-1
//! lead_months = 12
//! lag_years = 11
//! intercept = true
//! feature_names = load_lag1y,...,intercept
//! coefficients = ...
//! objective_value = ...
//! feasibility_tolerance = 1.0000000000000001e-9
//! max_pivots = auto
//! tie_break = lowest-vertex
//! pivots = 17
//! ```
//!
//! Least-squares models use `kind = ols`, omit `tau` and the solver options,
//! and carry `sse` in place of `objective_value`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::baseline::LinearModel;
use crate::error::{Error, Result};
use crate::fmt_num;
use crate::linalg::Matrix;
use crate::solver::{QuantileModel, SolverOptions, Tau};

/// How the design rows of a model were built from a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeatureLayout {
    pub lead_months: u32,
    pub lag_years: u32,
    pub intercept: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FittedModel {
    Quantile(QuantileModel),
    Ols(LinearModel),
}

impl FittedModel {
    pub fn coefficients(&self) -> &[f64] {
        match self {
            FittedModel::Quantile(m) => &m.coefficients,
            FittedModel::Ols(m) => &m.coefficients,
        }
    }

    pub fn feature_names(&self) -> &[String] {
        match self {
            FittedModel::Quantile(m) => &m.feature_names,
            FittedModel::Ols(m) => &m.feature_names,
        }
    }

    pub fn predict(&self, design: &Matrix) -> Result<Vec<f64>> {
        design.mul_vec(self.coefficients())
    }

    pub fn method(&self) -> &'static str {
        match self {
            FittedModel::Quantile(_) => "qr",
            FittedModel::Ols(_) => "mlr",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub layout: FeatureLayout,
    pub model: FittedModel,
}

fn join_nums(v: &[f64]) -> String {
    v.iter().map(|x| fmt_num(*x)).collect::<Vec<_>>().join(",")
}

impl ModelFile {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let l = &self.layout;
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{} = {}", k, v);
        };
        match &self.model {
            FittedModel::Quantile(m) => {
                kv("kind", "quantile".into());
                kv("tau", fmt_num(m.tau.value()));
            }
            FittedModel::Ols(_) => kv("kind", "ols".into()),
        }
        kv("lead_months", l.lead_months.to_string());
        kv("lag_years", l.lag_years.to_string());
        kv("intercept", l.intercept.to_string());
        kv("feature_names", self.model.feature_names().join(","));
        kv("coefficients", join_nums(self.model.coefficients()));
        match &self.model {
            FittedModel::Quantile(m) => {
                kv("objective_value", fmt_num(m.objective_value));
                kv("feasibility_tolerance", fmt_num(m.options.feasibility_tolerance));
                kv(
                    "max_pivots",
                    m.options
                        .max_pivots
                        .map_or_else(|| "auto".to_string(), |n| n.to_string()),
                );
                kv("tie_break", m.options.tie_break.label().into());
                kv("pivots", m.pivots.to_string());
            }
            FittedModel::Ols(m) => kv("sse", fmt_num(m.sse)),
        }
        s
    }

    pub fn parse(text: &str) -> Result<ModelFile> {
        let mut fields = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::ModelFormat(format!("line {}: expected `key = value`", n + 1)))?;
            if fields.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(Error::ModelFormat(format!("duplicate key `{}`", k.trim())));
            }
        }
        let get = |k: &str| {
            fields
                .get(k)
                .map(String::as_str)
                .ok_or_else(|| Error::ModelFormat(format!("missing `{}`", k)))
        };
        let bad = |k: &str| Error::ModelFormat(format!("invalid value for `{}`", k));
        let num = |k: &str| get(k)?.parse::<f64>().map_err(|_| bad(k));
        let layout = FeatureLayout {
            lead_months: get("lead_months")?.parse().map_err(|_| bad("lead_months"))?,
            lag_years: get("lag_years")?.parse().map_err(|_| bad("lag_years"))?,
            intercept: get("intercept")?.parse().map_err(|_| bad("intercept"))?,
        };
        let feature_names: Vec<String> = match get("feature_names")? {
            "" => Vec::new(),
            s => s.split(',').map(|x| x.trim().to_string()).collect(),
        };
        let coefficients = match get("coefficients")? {
            "" => Vec::new(),
            s => s
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("coefficients"))?,
        };
        if coefficients.len() != feature_names.len() {
            return Err(Error::ModelFormat(format!(
                "{} coefficients for {} feature names",
                coefficients.len(),
                feature_names.len()
            )));
        }
        let model = match get("kind")? {
            "quantile" => {
                let max_pivots = match get("max_pivots")? {
                    "auto" => None,
                    s => Some(s.parse().map_err(|_| bad("max_pivots"))?),
                };
                FittedModel::Quantile(QuantileModel {
                    coefficients,
                    tau: Tau::new(num("tau")?)?,
                    feature_names,
                    objective_value: num("objective_value")?,
                    options: SolverOptions {
                        feasibility_tolerance: num("feasibility_tolerance")?,
                        max_pivots,
                        tie_break: get("tie_break")?.parse()?,
                    },
                    pivots: get("pivots")?.parse().map_err(|_| bad("pivots"))?,
                })
            }
            "ols" => FittedModel::Ols(LinearModel {
                coefficients,
                feature_names,
                sse: num("sse")?,
            }),
            other => return Err(Error::ModelFormat(format!("unknown model kind `{}`", other))),
        };
        Ok(ModelFile { layout, model })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ModelFile> {
        ModelFile::parse(&std::fs::read_to_string(path)?)
    }
}
