use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use loadqr::ingestion::{read_predictions, write_predictions, write_series};
use loadqr::model_io::ModelFile;
use loadqr::pipeline::{
    default_sweep_grid, prepare, run_compare, run_fit, run_sweep, write_compare,
    write_fit_outputs, write_reports, write_sweep, Cost, Method, PipelineConfig,
};
use loadqr::synthetic::{generate, SyntheticConfig};
use loadqr::{
    build_supervised, evaluate, read_series, EvaluationReport, IngestOptions, LoadSeries,
    Normalize, PriceTags, SolverOptions, Tau,
};

#[derive(Parser)]
#[command(name = "loadqr", version, about = "Load forecasting with asymmetric error prices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a series file and optionally write it back in canonical form.
    Ingest {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Fit a model and write it with predictions and a train/validation report.
    Fit {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "qr")]
        method: Method,
    },
    /// Apply a saved model to every complete row of a series.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        output: PathBuf,
    },
    /// Score a prediction file.
    Evaluate {
        #[arg(long)]
        predictions: PathBuf,
        #[command(flatten)]
        cost: CostArgs,
        #[arg(long, default_value = "all")]
        label: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Fit quantile models over a grid of tau and score each at fixed prices.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Comma-separated quantile levels.
        #[arg(long, value_delimiter = ',')]
        sweep_grid: Option<Vec<f64>>,
    },
    /// Tabulate qr, mlr and external predictions side by side.
    Compare {
        #[command(flatten)]
        run: RunArgs,
        /// `name=path` of a prediction file covering every supervised month.
        #[arg(long = "external", value_parser = parse_external)]
        externals: Vec<(String, PathBuf)>,
    },
    /// Generate a synthetic monthly series.
    Synth {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        years: u32,
        #[arg(long, default_value_t = 15.0)]
        noise_sd: f64,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct InputArgs {
    #[arg(long = "data")]
    data_path: PathBuf,
    #[arg(long, default_value = "none")]
    normalize: Normalize,
    /// Skip unparseable rows with a warning instead of failing.
    #[arg(long)]
    lenient: bool,
}

impl InputArgs {
    fn read(&self) -> loadqr::Result<LoadSeries> {
        let opts = IngestOptions {
            normalize: self.normalize,
            strict: !self.lenient,
        };
        read_series(&self.data_path, opts)
    }
}

#[derive(Args)]
struct CostArgs {
    /// Quantile level; ELFE is then priced at (tau, 1 - tau).
    #[arg(long, conflicts_with_all = ["p_plus", "p_minus"])]
    tau: Option<f64>,
    /// Price of under-forecasts (actual above forecast).
    #[arg(long, requires = "p_minus")]
    p_plus: Option<f64>,
    /// Price of over-forecasts.
    #[arg(long, requires = "p_plus")]
    p_minus: Option<f64>,
}

impl CostArgs {
    fn cost(&self) -> loadqr::Result<Cost> {
        match (self.tau, self.p_plus, self.p_minus) {
            (Some(t), _, _) => Ok(Cost::Tau(Tau::new(t)?)),
            (None, Some(p), Some(m)) => Ok(Cost::Prices(PriceTags::new(p, m)?)),
            _ => Ok(Cost::Tau(Tau::new(0.7)?)),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    cost: CostArgs,
    #[arg(long, default_value_t = 12)]
    lead_months: u32,
    #[arg(long, default_value_t = 11)]
    lag_years: u32,
    #[arg(long, default_value_t = 0.6)]
    train_fraction: f64,
    /// Leave out the trailing constant feature.
    #[arg(long)]
    no_intercept: bool,
    #[arg(long, default_value_t = 1e-9)]
    feasibility_tolerance: f64,
    #[arg(long)]
    max_pivots: Option<usize>,
    #[arg(long, default_value = "out")]
    output_dir: PathBuf,
}

impl RunArgs {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            lead_months: self.lead_months,
            lag_years: self.lag_years,
            train_fraction: self.train_fraction,
            include_intercept: !self.no_intercept,
            solver: SolverOptions {
                feasibility_tolerance: self.feasibility_tolerance,
                max_pivots: self.max_pivots,
                ..Default::default()
            },
        }
    }
}

fn parse_external(s: &str) -> Result<(String, PathBuf), String> {
    match s.split_once('=') {
        Some((name, path)) if !name.is_empty() && !path.is_empty() => {
            Ok((name.to_string(), PathBuf::from(path)))
        }
        _ => Err(format!("expected name=path, got `{}`", s)),
    }
}

fn print_reports(reports: &[&EvaluationReport]) {
    println!("{}", EvaluationReport::table_header());
    for r in reports {
        println!("{}", r.table_row());
    }
}

fn output_dir(dir: &Path) -> loadqr::Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

fn run(cli: Cli) -> loadqr::Result<()> {
    match cli.command {
        Command::Ingest { input, output } => {
            let series = input.read()?;
            let recs = series.records();
            let first = recs[0].date;
            let last = recs[recs.len() - 1].date;
            let span = (last.ordinal() - first.ordinal() + 1) as usize;
            println!(
                "{} records from {} to {} ({} missing months)",
                recs.len(),
                first,
                last,
                span - recs.len()
            );
            if let Some(out) = output {
                write_series(&out, &series)?;
                info!("wrote {}", out.display());
            }
        }
        Command::Fit { run, method } => {
            let series = run.input.read()?;
            let outcome = run_fit(&series, &run.config(), method, run.cost.cost()?)?;
            write_fit_outputs(&outcome, &run.output_dir)?;
            print_reports(&[&outcome.train.report, &outcome.validation.report]);
            info!("wrote model and reports to {}", run.output_dir.display());
        }
        Command::Predict {
            model,
            input,
            output,
        } => {
            let file = ModelFile::load(&model)?;
            let series = input.read()?;
            let l = file.layout;
            let set = build_supervised(&series, l.lead_months, l.lag_years, l.intercept)?;
            if set.feature_names() != file.model.feature_names() {
                return Err(loadqr::Error::DimensionMismatch(format!(
                    "model features {:?} differ from series features {:?}",
                    file.model.feature_names(),
                    set.feature_names()
                )));
            }
            let forecast = file.model.predict(set.design())?;
            write_predictions(&output, set.index(), set.targets(), &forecast)?;
            info!("wrote {} predictions to {}", forecast.len(), output.display());
        }
        Command::Evaluate {
            predictions,
            cost,
            label,
            output,
        } => {
            let table = read_predictions(&predictions)?;
            let report = evaluate(&table.actual, &table.forecast, cost.cost()?.prices()?, &label)?;
            print_reports(&[&report]);
            if let Some(out) = output {
                write_reports(&out, &[&report])?;
            }
        }
        Command::Sweep { run, sweep_grid } => {
            let grid = match sweep_grid {
                Some(values) => values
                    .into_iter()
                    .map(Tau::new)
                    .collect::<loadqr::Result<Vec<_>>>()?,
                None => default_sweep_grid(),
            };
            let series = run.input.read()?;
            let cfg = run.config();
            let (train, validation) = prepare(&series, &cfg)?;
            let rows = run_sweep(&train, &validation, &grid, run.cost.cost()?.prices()?, &cfg.solver)?;
            output_dir(&run.output_dir)?;
            write_sweep(run.output_dir.join("sweep.csv"), &rows)?;
            println!(
                "{:>6} {:>12} {:>12} {:>14} {:>14}",
                "tau", "train MAPE", "valid MAPE", "train ELFE/d", "valid ELFE/d"
            );
            for r in &rows {
                println!(
                    "{:>6.3} {:>12.4} {:>12.4} {:>14.4} {:>14.4}",
                    r.tau.value(),
                    r.train.mape,
                    r.validation.mape,
                    r.train.elfe_over_d,
                    r.validation.elfe_over_d
                );
            }
        }
        Command::Compare { run, externals } => {
            let series = run.input.read()?;
            let cfg = run.config();
            let (train, validation) = prepare(&series, &cfg)?;
            let tables = externals
                .into_iter()
                .map(|(name, path)| Ok((name, read_predictions(&path)?)))
                .collect::<loadqr::Result<Vec<_>>>()?;
            let rows = run_compare(&train, &validation, run.cost.cost()?, &cfg.solver, &tables)?;
            output_dir(&run.output_dir)?;
            write_compare(run.output_dir.join("compare.csv"), &rows)?;
            println!(
                "{:<12} {:>12} {:>12} {:>14} {:>14}",
                "method", "train MAPE", "valid MAPE", "train ELFE/d", "valid ELFE/d"
            );
            for r in &rows {
                println!(
                    "{:<12} {:>12.4} {:>12.4} {:>14.4} {:>14.4}",
                    r.method,
                    r.train.mape,
                    r.validation.mape,
                    r.train.elfe_over_d,
                    r.validation.elfe_over_d
                );
            }
        }
        Command::Synth {
            seed,
            years,
            noise_sd,
            output,
        } => {
            let series = generate(&SyntheticConfig {
                years,
                noise_sd,
                ..SyntheticConfig::with_seed(seed)
            })?;
            write_series(&output, &series)?;
            info!("wrote {} records to {}", series.len(), output.display());
        }
    }
    Ok(())
}

fn exit_code(err: &loadqr::Error) -> u8 {
    use loadqr::Error::*;
    match err {
        Io(_) => 3,
        Csv(_) | Parse { .. } => 4,
        EmptyFile(_) => 5,
        DuplicateMonth(_) => 6,
        InvalidRecord(_) => 7,
        EmptyResult => 8,
        NonMonthlyLead(_) => 9,
        DegenerateSplit { .. } => 10,
        RankDeficient { .. } => 11,
        Underdetermined { .. } => 12,
        PivotLimit { .. } => 13,
        Numerical(_) => 14,
        InvalidTau(_) => 15,
        NonPositivePrice { .. } => 16,
        ZeroActual(_) => 17,
        DimensionMismatch(_) => 18,
        IndexMismatch(_) => 19,
        ModelFormat(_) => 20,
        InvalidArgument(_) => 21,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
