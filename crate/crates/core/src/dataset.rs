//! Monthly load series and the lagged supervised problem built from them.
//!
//! A target month `(Y, m)` is forecast from the loads of the same calendar
//! month in earlier years plus the actual heating/cooling degree days of the
//! target month itself.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A calendar month.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YearMonth {
    pub year: i32,
    pub month: u32,
}

impl YearMonth {
    pub fn new(year: i32, month: u32) -> Result<Self> {
        if year < 1900 {
            return Err(Error::InvalidRecord(format!("year {} is before 1900", year)));
        }
        if !(1..=12).contains(&month) {
            return Err(Error::InvalidRecord(format!("month {} outside 1..=12", month)));
        }
        Ok(YearMonth { year, month })
    }

    /// Months elapsed since January of year 0; used for ordering arithmetic.
    pub fn ordinal(self) -> i64 {
        self.year as i64 * 12 + (self.month as i64 - 1)
    }

    pub fn next(self) -> YearMonth {
        if self.month == 12 {
            YearMonth {
                year: self.year + 1,
                month: 1,
            }
        } else {
            YearMonth {
                year: self.year,
                month: self.month + 1,
            }
        }
    }
}

impl fmt::Display for YearMonth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl FromStr for YearMonth {
    type Err = Error;

    /// Parses `YYYY-MM`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRecord(format!("date `{}` is not YYYY-MM", s));
        let (y, m) = s.split_once('-').ok_or_else(bad)?;
        if y.len() != 4 || m.len() != 2 || !y.bytes().chain(m.bytes()).all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        YearMonth::new(y.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?)
    }
}

/// One month of load together with its total heating and cooling degree days.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonthlyRecord {
    pub date: YearMonth,
    pub load: f64,
    pub hdd: f64,
    pub cdd: f64,
}

impl MonthlyRecord {
    pub fn new(date: YearMonth, load: f64, hdd: f64, cdd: f64) -> Result<Self> {
        if !load.is_finite() {
            return Err(Error::InvalidRecord(format!("{}: load is not finite", date)));
        }
        if !(hdd.is_finite() && hdd >= 0.0) {
            return Err(Error::InvalidRecord(format!(
                "{}: hdd must be finite and non-negative, got {}",
                date, hdd
            )));
        }
        if !(cdd.is_finite() && cdd >= 0.0) {
            return Err(Error::InvalidRecord(format!(
                "{}: cdd must be finite and non-negative, got {}",
                date, cdd
            )));
        }
        Ok(MonthlyRecord {
            date,
            load,
            hdd,
            cdd,
        })
    }
}

/// Records strictly increasing by month. Gaps are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadSeries {
    records: Vec<MonthlyRecord>,
}

impl LoadSeries {
    /// Sorts the records by month and rejects duplicates.
    pub fn new(mut records: Vec<MonthlyRecord>) -> Result<Self> {
        records.sort_by_key(|r| r.date);
        if let Some(w) = records.windows(2).find(|w| w[0].date == w[1].date) {
            return Err(Error::DuplicateMonth(w[0].date.to_string()));
        }
        Ok(LoadSeries { records })
    }

    pub fn records(&self) -> &[MonthlyRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, date: YearMonth) -> Option<&MonthlyRecord> {
        self.records
            .binary_search_by_key(&date, |r| r.date)
            .ok()
            .map(|i| &self.records[i])
    }

    pub fn loads(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.load).collect()
    }

    /// Returns a copy with every load multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> LoadSeries {
        LoadSeries {
            records: self
                .records
                .iter()
                .map(|r| MonthlyRecord {
                    load: r.load * factor,
                    ..*r
                })
                .collect(),
        }
    }
}

/// Targets paired with their lagged design rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SupervisedSet {
    targets: Vec<f64>,
    design: Matrix,
    feature_names: Vec<String>,
    index: Vec<YearMonth>,
    lead_months: u32,
    lag_years: u32,
}

impl SupervisedSet {
    /// Assembles a set from parts, checking shapes, finiteness and order.
    pub fn new(
        targets: Vec<f64>,
        design: Matrix,
        feature_names: Vec<String>,
        index: Vec<YearMonth>,
        lead_months: u32,
        lag_years: u32,
    ) -> Result<Self> {
        if design.rows() != targets.len() || index.len() != targets.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} targets, {} design rows, {} index entries",
                targets.len(),
                design.rows(),
                index.len()
            )));
        }
        if design.cols() != feature_names.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} design columns but {} feature names",
                design.cols(),
                feature_names.len()
            )));
        }
        if !design.as_slice().iter().all(|v| v.is_finite())
            || !targets.iter().all(|v| v.is_finite())
        {
            return Err(Error::InvalidArgument("non-finite entry in supervised set".into()));
        }
        if index.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("index is not strictly chronological".into()));
        }
        Ok(SupervisedSet {
            targets,
            design,
            feature_names,
            index,
            lead_months,
            lag_years,
        })
    }

    /// A set with a generic index (consecutive months from 1900-01), for data
    /// that did not come from a calendar series.
    pub fn from_xy(design: Matrix, targets: Vec<f64>) -> Result<Self> {
        let names = (0..design.cols()).map(|j| format!("x{}", j)).collect();
        let mut index = Vec::with_capacity(targets.len());
        let mut ym = YearMonth {
            year: 1900,
            month: 1,
        };
        for _ in 0..targets.len() {
            index.push(ym);
            ym = ym.next();
        }
        SupervisedSet::new(targets, design, names, index, 12, 1)
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn design(&self) -> &Matrix {
        &self.design
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn index(&self) -> &[YearMonth] {
        &self.index
    }

    pub fn lead_months(&self) -> u32 {
        self.lead_months
    }

    pub fn lag_years(&self) -> u32 {
        self.lag_years
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn num_features(&self) -> usize {
        self.design.cols()
    }

    fn slice(&self, range: std::ops::Range<usize>) -> SupervisedSet {
        SupervisedSet {
            targets: self.targets[range.clone()].to_vec(),
            design: self.design.slice_rows(range.clone()),
            feature_names: self.feature_names.clone(),
            index: self.index[range].to_vec(),
            lead_months: self.lead_months,
            lag_years: self.lag_years,
        }
    }
}

/// Fraction of rows, in chronological order, assigned to training.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    train_fraction: f64,
}

impl SplitSpec {
    pub fn new(train_fraction: f64) -> Result<Self> {
        if !(train_fraction > 0.0 && train_fraction < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "train fraction must lie in (0, 1), got {}",
                train_fraction
            )));
        }
        Ok(SplitSpec { train_fraction })
    }

    pub fn train_fraction(&self) -> f64 {
        self.train_fraction
    }
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            train_fraction: 0.6,
        }
    }
}

/// Feature label of the load `years_back` years before the target month.
pub fn lag_feature_name(years_back: u32) -> String {
    format!("load_lag{}y", years_back)
}

/// Builds the lagged supervised set.
///
/// With a lead of `L = lead_months / 12` years, the row for target `(Y, m)` is
/// `[load(Y-L, m), ..., load(Y-L-lag_years+1, m), hdd(Y, m), cdd(Y, m), (1)]`
/// and its target is `load(Y, m)`. Targets missing any lag are skipped.
pub fn build_supervised(
    series: &LoadSeries,
    lead_months: u32,
    lag_years: u32,
    include_intercept: bool,
) -> Result<SupervisedSet> {
    if lead_months == 0 {
        return Err(Error::InvalidArgument("lead must be at least one month".into()));
    }
    if lead_months % 12 != 0 {
        return Err(Error::NonMonthlyLead(lead_months));
    }
    if lag_years == 0 {
        return Err(Error::InvalidArgument("at least one lag year is required".into()));
    }
    if series.is_empty() {
        return Err(Error::InvalidArgument("series is empty".into()));
    }
    let lead_years = (lead_months / 12) as i32;

    let mut feature_names: Vec<String> = (0..lag_years)
        .map(|k| lag_feature_name(lead_years as u32 + k))
        .collect();
    feature_names.push("hdd".into());
    feature_names.push("cdd".into());
    if include_intercept {
        feature_names.push("intercept".into());
    }
    let p = feature_names.len();

    let mut targets = Vec::new();
    let mut index = Vec::new();
    let mut data = Vec::new();
    let mut row = Vec::with_capacity(p);
    'records: for rec in series.records() {
        row.clear();
        for k in 0..lag_years as i32 {
            let year = rec.date.year - lead_years - k;
            let lagged = (year >= 1900)
                .then(|| {
                    series.get(YearMonth {
                        year,
                        month: rec.date.month,
                    })
                })
                .flatten();
            match lagged {
                Some(l) => row.push(l.load),
                None => continue 'records,
            }
        }
        row.push(rec.hdd);
        row.push(rec.cdd);
        if include_intercept {
            row.push(1.0);
        }
        data.extend_from_slice(&row);
        targets.push(rec.load);
        index.push(rec.date);
    }
    if targets.is_empty() {
        return Err(Error::EmptyResult);
    }
    let design = Matrix::from_row_major(targets.len(), p, data)?;
    SupervisedSet::new(targets, design, feature_names, index, lead_months, lag_years)
}

/// Splits chronologically: the first `floor(fraction * N)` rows train.
pub fn chronological_split(
    set: &SupervisedSet,
    spec: SplitSpec,
) -> Result<(SupervisedSet, SupervisedSet)> {
    let n = set.len();
    let n_train = (spec.train_fraction * n as f64).floor() as usize;
    if n_train == 0 || n_train >= n {
        return Err(Error::DegenerateSplit {
            train: n_train.min(n),
            validation: n - n_train.min(n),
        });
    }
    Ok((set.slice(0..n_train), set.slice(n_train..n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monthly(start: YearMonth, n: usize) -> LoadSeries {
        let mut recs = Vec::new();
        let mut ym = start;
        for i in 0..n {
            recs.push(MonthlyRecord::new(ym, 100.0 + i as f64, i as f64 % 7.0, 1.5).unwrap());
            ym = ym.next();
        }
        LoadSeries::new(recs).unwrap()
    }

    fn januaries(n: i32) -> LoadSeries {
        let recs = (0..n)
            .map(|k| {
                MonthlyRecord::new(YearMonth::new(2000 + k, 1).unwrap(), k as f64, 10.0, 0.0)
                    .unwrap()
            })
            .collect();
        LoadSeries::new(recs).unwrap()
    }

    #[test]
    fn parses_and_displays_dates() {
        let ym: YearMonth = "2011-01".parse().unwrap();
        assert_eq!(ym, YearMonth::new(2011, 1).unwrap());
        assert_eq!(ym.to_string(), "2011-01");
        for bad in ["2011-13", "2011-1", "11-01", "2011/01", "1899-12", "2011-0a"] {
            assert!(bad.parse::<YearMonth>().is_err(), "{}", bad);
        }
    }

    #[test]
    fn rejects_invalid_records() {
        let ym = YearMonth::new(2000, 1).unwrap();
        assert!(MonthlyRecord::new(ym, f64::NAN, 0.0, 0.0).is_err());
        assert!(MonthlyRecord::new(ym, 1.0, -1.0, 0.0).is_err());
        assert!(MonthlyRecord::new(ym, 1.0, 0.0, -0.5).is_err());
    }

    #[test]
    fn series_sorts_and_rejects_duplicates() {
        let a = MonthlyRecord::new(YearMonth::new(2001, 2).unwrap(), 1.0, 0.0, 0.0).unwrap();
        let b = MonthlyRecord::new(YearMonth::new(2000, 5).unwrap(), 2.0, 0.0, 0.0).unwrap();
        let s = LoadSeries::new(vec![a, b]).unwrap();
        assert_eq!(s.records()[0], b);
        assert!(matches!(
            LoadSeries::new(vec![a, b, a]),
            Err(Error::DuplicateMonth(d)) if d == "2001-02"
        ));
    }

    #[test]
    fn twelve_januaries_give_one_row() {
        let set = build_supervised(&januaries(12), 12, 11, true).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.index()[0], YearMonth::new(2011, 1).unwrap());
        assert_eq!(
            set.design().row(0),
            &[10.0, 9.0, 8.0, 7.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0, 0.0, 10.0, 0.0, 1.0]
        );
        assert_eq!(set.targets(), &[11.0]);
    }

    #[test]
    fn eleven_januaries_are_not_enough() {
        assert!(matches!(
            build_supervised(&januaries(11), 12, 11, true),
            Err(Error::EmptyResult)
        ));
    }

    #[test]
    fn full_paper_window_yields_57_rows() {
        let s = monthly(YearMonth::new(2000, 1).unwrap(), 189);
        assert_eq!(s.records().last().unwrap().date, YearMonth::new(2015, 9).unwrap());
        let set = build_supervised(&s, 12, 11, true).unwrap();
        assert_eq!(set.len(), 57);
        assert_eq!(set.index()[0], YearMonth::new(2011, 1).unwrap());
        assert_eq!(*set.index().last().unwrap(), YearMonth::new(2015, 9).unwrap());
        assert_eq!(set.num_features(), 14);
        assert_eq!(set.feature_names()[0], "load_lag1y");
        assert_eq!(set.feature_names()[10], "load_lag11y");
    }

    #[test]
    fn gap_drops_only_dependent_targets() {
        let full = monthly(YearMonth::new(2000, 1).unwrap(), 48);
        // drop March 2001
        let recs: Vec<_> = full
            .records()
            .iter()
            .copied()
            .filter(|r| r.date != YearMonth::new(2001, 3).unwrap())
            .collect();
        let s = LoadSeries::new(recs).unwrap();
        let set = build_supervised(&s, 12, 1, false).unwrap();
        let march = |y| YearMonth::new(y, 3).unwrap();
        assert!(!set.index().contains(&march(2001)));
        assert!(!set.index().contains(&march(2002)));
        assert!(set.index().contains(&march(2003)));
        assert_eq!(set.len(), 36 - 2);
    }

    #[test]
    fn two_year_lead_shifts_lags() {
        let s = januaries(5);
        let set = build_supervised(&s, 24, 2, false).unwrap();
        assert_eq!(set.feature_names()[..2], ["load_lag2y", "load_lag3y"]);
        // target 2003 uses 2001 and 2000
        assert_eq!(set.index()[0], YearMonth::new(2003, 1).unwrap());
        assert_eq!(set.design().row(0)[..2], [1.0, 0.0]);
    }

    #[test]
    fn rejects_bad_lead_and_lag() {
        let s = januaries(12);
        assert!(matches!(build_supervised(&s, 6, 1, true), Err(Error::NonMonthlyLead(6))));
        assert!(build_supervised(&s, 0, 1, true).is_err());
        assert!(build_supervised(&s, 12, 0, true).is_err());
        let empty = LoadSeries::new(vec![]).unwrap();
        assert!(build_supervised(&empty, 12, 1, true).is_err());
    }

    #[test]
    fn split_sizes() {
        let s = monthly(YearMonth::new(2000, 1).unwrap(), 189);
        let set = build_supervised(&s, 12, 11, true).unwrap();
        let (tr, va) = chronological_split(&set, SplitSpec::new(0.6).unwrap()).unwrap();
        assert_eq!((tr.len(), va.len()), (34, 23));

        let small = build_supervised(&januaries(13), 12, 11, true).unwrap();
        let (tr, va) = chronological_split(&small, SplitSpec::new(0.5).unwrap()).unwrap();
        assert_eq!((tr.len(), va.len()), (1, 1));

        let ten = build_supervised(&monthly(YearMonth::new(2000, 1).unwrap(), 22), 12, 1, true)
            .unwrap();
        assert_eq!(ten.len(), 10);
        let (tr, va) = chronological_split(&ten, SplitSpec::new(0.9).unwrap()).unwrap();
        assert_eq!((tr.len(), va.len()), (9, 1));
    }

    #[test]
    fn degenerate_splits_error() {
        let one = build_supervised(&januaries(12), 12, 11, true).unwrap();
        assert!(matches!(
            chronological_split(&one, SplitSpec::new(0.6).unwrap()),
            Err(Error::DegenerateSplit { .. })
        ));
        assert!(SplitSpec::new(0.0).is_err());
        assert!(SplitSpec::new(1.0).is_err());
        assert!(SplitSpec::new(f64::NAN).is_err());
    }
}
