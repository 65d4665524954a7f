//! Seeded synthetic monthly series for tests and benchmarks.
//!
//! Degree days follow an annual cosine cycle with Gaussian jitter. The load of
//! month `(Y, m)` is autoregressive in the same month of year `Y - 1` plus a
//! linear degree-day response and i.i.d. Gaussian noise, so a linear model on
//! the lagged design is correctly specified and its conditional quantiles are
//! shifted copies of the conditional mean.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::{LoadSeries, MonthlyRecord, YearMonth};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub start_year: i32,
    pub years: u32,
    pub base_load: f64,
    /// Weight on the same month one year earlier; must be below 1 in magnitude.
    pub persistence: f64,
    pub hdd_response: f64,
    pub cdd_response: f64,
    pub noise_sd: f64,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            start_year: 1900,
            years: 40,
            base_load: 400.0,
            persistence: 0.5,
            hdd_response: 0.3,
            cdd_response: 0.6,
            noise_sd: 15.0,
            seed: 0,
        }
    }
}

impl SyntheticConfig {
    pub fn with_seed(seed: u64) -> Self {
        SyntheticConfig {
            seed,
            ..Default::default()
        }
    }
}

pub fn generate(config: &SyntheticConfig) -> Result<LoadSeries> {
    if config.years == 0 {
        return Err(Error::InvalidArgument("synthetic series needs at least one year".into()));
    }
    if !(config.persistence.abs() < 1.0) {
        return Err(Error::InvalidArgument("persistence must lie in (-1, 1)".into()));
    }
    let noise = Normal::new(0.0, config.noise_sd)
        .map_err(|e| Error::InvalidArgument(format!("noise_sd: {}", e)))?;
    let hdd_jitter = Normal::new(0.0, 40.0).expect("constant sd");
    let cdd_jitter = Normal::new(0.0, 20.0).expect("constant sd");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut previous = [f64::NAN; 12];
    let mut records = Vec::with_capacity(config.years as usize * 12);
    for y in 0..config.years as i32 {
        for m in 1..=12u32 {
            let phase = (2.0 * PI * (m - 1) as f64 / 12.0).cos();
            let hdd = (450.0 + 400.0 * phase + hdd_jitter.sample(&mut rng)).max(0.0);
            let cdd = (120.0 - 200.0 * phase + cdd_jitter.sample(&mut rng)).max(0.0);
            let drive =
                config.base_load + config.hdd_response * hdd + config.cdd_response * cdd;
            let slot = (m - 1) as usize;
            let carried = if previous[slot].is_nan() {
                // start from the month's stationary level
                config.persistence * drive / (1.0 - config.persistence)
            } else {
                config.persistence * previous[slot]
            };
            let load = drive + carried + noise.sample(&mut rng);
            previous[slot] = load;
            records.push(MonthlyRecord::new(
                YearMonth::new(config.start_year + y, m)?,
                load,
                hdd,
                cdd,
            )?);
        }
    }
    LoadSeries::new(records)
}
