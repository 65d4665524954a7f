//! CSV input and output.
//!
//! Series files have the header `date,load,hdd,cdd` with dates as `YYYY-MM`.
//! Prediction files have the header `date,actual,forecast,residual`, where
//! `residual = actual - forecast`. Numbers are written with 17 significant
//! digits so values survive a write/read cycle exactly.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use log::warn;

use crate::dataset::{LoadSeries, MonthlyRecord, YearMonth};
use crate::error::{Error, Result};
use crate::fmt_num;

pub const SERIES_HEADER: [&str; 4] = ["date", "load", "hdd", "cdd"];
pub const PREDICTION_HEADER: [&str; 4] = ["date", "actual", "forecast", "residual"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalize {
    #[default]
    None,
    /// Divide every load by the series maximum.
    DivideByMax,
}

impl FromStr for Normalize {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Normalize::None),
            "divide_by_max" | "divide-by-max" => Ok(Normalize::DivideByMax),
            other => Err(Error::InvalidArgument(format!(
                "unknown normalization `{}` (expected none or divide_by_max)",
                other
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IngestOptions {
    pub normalize: Normalize,
    /// Reject unparseable rows instead of skipping them with a warning.
    pub strict: bool,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            normalize: Normalize::None,
            strict: true,
        }
    }
}

fn open_reader(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path)?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file))
}

fn check_header(
    reader: &mut csv::Reader<File>,
    path: &Path,
    expected: &[&str; 4],
) -> Result<()> {
    let header = reader.headers()?.clone();
    let got: Vec<&str> = header.iter().map(|h| h.trim_start_matches('\u{feff}')).collect();
    if got != expected {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: format!("expected header `{}`, found `{}`", expected.join(","), got.join(",")),
        });
    }
    Ok(())
}

fn parse_number(field: &str, what: &str) -> std::result::Result<f64, String> {
    field
        .parse::<f64>()
        .map_err(|_| format!("{} `{}` is not a number", what, field))
}

fn parse_series_row(rec: &csv::StringRecord) -> std::result::Result<MonthlyRecord, String> {
    if rec.len() != 4 {
        return Err(format!("expected 4 fields, found {}", rec.len()));
    }
    let date: YearMonth = rec[0].parse().map_err(|e: Error| e.to_string())?;
    let load = parse_number(&rec[1], "load")?;
    let hdd = parse_number(&rec[2], "hdd")?;
    let cdd = parse_number(&rec[3], "cdd")?;
    MonthlyRecord::new(date, load, hdd, cdd).map_err(|e| e.to_string())
}

/// Reads, validates and sorts a monthly series, applying optional normalization.
pub fn read_series(path: impl AsRef<Path>, options: IngestOptions) -> Result<LoadSeries> {
    let path = path.as_ref();
    if std::fs::metadata(path)?.len() == 0 {
        return Err(Error::EmptyFile(path.to_path_buf()));
    }
    let mut reader = open_reader(path)?;
    check_header(&mut reader, path, &SERIES_HEADER)?;
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line());
        match parse_series_row(&row) {
            Ok(r) => records.push(r),
            Err(message) if options.strict => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line,
                    message,
                })
            }
            Err(message) => warn!("{}:{}: skipping row: {}", path.display(), line, message),
        }
    }
    if records.is_empty() {
        return Err(Error::EmptyFile(path.to_path_buf()));
    }
    let series = LoadSeries::new(records)?;
    match options.normalize {
        Normalize::None => Ok(series),
        Normalize::DivideByMax => {
            let max = series.loads().into_iter().fold(f64::NEG_INFINITY, f64::max);
            if !(max > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "cannot normalize by a non-positive maximum load ({})",
                    max
                )));
            }
            Ok(series.scaled(1.0 / max))
        }
    }
}

/// Writes a series in the canonical input schema.
pub fn write_series(path: impl AsRef<Path>, series: &LoadSeries) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{}", SERIES_HEADER.join(","))?;
    for r in series.records() {
        writeln!(w, "{},{},{},{}", r.date, fmt_num(r.load), fmt_num(r.hdd), fmt_num(r.cdd))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes one `date,actual,forecast,residual` row per observation.
pub fn write_predictions(
    path: impl AsRef<Path>,
    index: &[YearMonth],
    actual: &[f64],
    forecast: &[f64],
) -> Result<()> {
    if index.len() != actual.len() || actual.len() != forecast.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} dates, {} actual values, {} forecasts",
            index.len(),
            actual.len(),
            forecast.len()
        )));
    }
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{}", PREDICTION_HEADER.join(","))?;
    for ((d, y), f) in index.iter().zip(actual).zip(forecast) {
        writeln!(w, "{},{},{},{}", d, fmt_num(*y), fmt_num(*f), fmt_num(y - f))?;
    }
    w.flush()?;
    Ok(())
}

/// Contents of a prediction file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PredictionTable {
    pub index: Vec<YearMonth>,
    pub actual: Vec<f64>,
    pub forecast: Vec<f64>,
}

/// Reads a prediction file. The residual column is checked for presence only;
/// it is recomputed from `actual - forecast` wherever needed.
pub fn read_predictions(path: impl AsRef<Path>) -> Result<PredictionTable> {
    let path = path.as_ref();
    let mut reader = open_reader(path)?;
    check_header(&mut reader, path, &PREDICTION_HEADER)?;
    let mut table = PredictionTable::default();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let parse = || -> std::result::Result<(YearMonth, f64, f64), String> {
            if row.len() != 4 {
                return Err(format!("expected 4 fields, found {}", row.len()));
            }
            let date: YearMonth = row[0].parse().map_err(|e: Error| e.to_string())?;
            Ok((date, parse_number(&row[1], "actual")?, parse_number(&row[2], "forecast")?))
        };
        let (d, y, f) = parse().map_err(|message| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        })?;
        table.index.push(d);
        table.actual.push(y);
        table.forecast.push(f);
    }
    Ok(table)
}
