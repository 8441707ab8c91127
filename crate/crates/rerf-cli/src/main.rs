//! `bench`: run RERF/RF/Lasso benchmark experiments from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rerf_cli::config::{
    DatasetSection, ExperimentConfig, ExperimentKind, ExperimentSection, LambdaGrid, Method,
    SearchKind, TuningSection,
};
use rerf_cli::intro::{run_intro, write_intro_csv, IntroSettings};
use rerf_cli::runner::run_experiment;
use rerf_core::simgen::scenario_labels;

/// Benchmarks comparing Lasso, random forests, and regression-enhanced
/// random forests. Set RERF_THREADS to cap the worker thread count.
#[derive(Parser)]
#[command(name = "bench", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a TOML config file.
    Run {
        /// Path to the experiment config.
        #[arg(long)]
        config: PathBuf,
        /// Reuse completed replicates from an earlier interrupted run.
        #[arg(long)]
        resume: bool,
    },
    /// Describe the built-in simulation scenarios.
    Scenarios {
        /// List scenario labels.
        #[arg(long)]
        list: bool,
    },
    /// Run the concrete-strength experiment on a local copy of the dataset.
    Concrete(ConcreteArgs),
    /// Reproduce the truncated-z pointwise-error comparison; emits raw
    /// errors for external plotting.
    IntroFigure(IntroArgs),
}

#[derive(Args)]
struct ConcreteArgs {
    /// CSV with the 1030-row concrete dataset (header row required).
    #[arg(long)]
    csv: PathBuf,
    /// Train/validation split: INT1, INT2, or EXT1..EXT4.
    #[arg(long)]
    split: String,
    /// Response column name.
    #[arg(long, default_value = "ccs")]
    response: String,
    /// Cement column (numerator of the added cement-to-water ratio).
    #[arg(long, default_value = "cement")]
    cement: String,
    /// Water column (denominator of the added cement-to-water ratio).
    #[arg(long, default_value = "water")]
    water: String,
    #[arg(long, default_value_t = 50)]
    replicates: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory; defaults to runs/concrete-<split>.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Methods to run, comma-separated.
    #[arg(long, default_value = "lasso,rf,rerf", value_delimiter = ',')]
    methods: Vec<Method>,
    #[command(flatten)]
    tuning: TuningArgs,
}

#[derive(Args)]
struct IntroArgs {
    /// Output directory for pointwise_errors.csv.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 5)]
    seeds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    k_folds: usize,
    #[arg(long, default_value_t = 25)]
    cv_trees: usize,
    #[arg(long, default_value_t = 500)]
    refit_trees: usize,
    #[arg(long, default_value_t = 25)]
    lambda_count: usize,
}

#[derive(Args)]
struct TuningArgs {
    /// exhaustive or approximate (the three-stage search).
    #[arg(long, default_value = "approximate")]
    search: String,
    #[arg(long, default_value_t = 5)]
    k_folds: usize,
    #[arg(long, default_value_t = 50)]
    cv_trees: usize,
    #[arg(long, default_value_t = 500)]
    refit_trees: usize,
    /// Penalty grid resolution between 0.001 and 100.
    #[arg(long, default_value_t = 50)]
    lambda_count: usize,
}

impl TuningArgs {
    fn to_section(&self) -> Result<TuningSection, String> {
        let search = match self.search.to_ascii_lowercase().as_str() {
            "exhaustive" => SearchKind::Exhaustive,
            "approximate" => SearchKind::Approximate,
            other => return Err(format!("unknown search kind `{other}`")),
        };
        Ok(TuningSection {
            k_folds: self.k_folds,
            search,
            cv_n_trees: self.cv_trees,
            refit_n_trees: self.refit_trees,
            lambda_grid: LambdaGrid { min: 0.001, max: 100.0, count: self.lambda_count },
            ..Default::default()
        })
    }
}

fn init_thread_pool() {
    if let Ok(value) = std::env::var("RERF_THREADS") {
        match value.parse::<usize>() {
            Ok(n) if n >= 1 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("warning: could not set thread count: {e}");
                }
            }
            _ => eprintln!("warning: ignoring invalid RERF_THREADS value `{value}`"),
        }
    }
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Run { config, resume } => {
            let config = ExperimentConfig::from_path(&config).map_err(|e| e.to_string())?;
            run_and_report(&config, resume)
        }
        Command::Scenarios { list: _ } => {
            println!("label   description");
            for label in scenario_labels() {
                let description = match label {
                    "LxI" => "linear model, interpolation sampling",
                    "PxI" => "partially linear model, interpolation sampling",
                    "NxI" => "non-additive partially linear model, interpolation sampling",
                    "LxE" => "linear model, x3 extrapolation (beta(4,8) train, beta(5,1) validation)",
                    "PxE" => "partially linear model, x3 extrapolation",
                    "NxE" => "non-additive model, x3 extrapolation",
                    "INTRO" => "Friedman function + 10z, z truncated to [0, 0.8) in training",
                    _ => "",
                };
                println!("{label:7} {description}");
            }
            Ok(())
        }
        Command::Concrete(args) => {
            let config = concrete_config(&args)?;
            run_and_report(&config, false)
        }
        Command::IntroFigure(args) => {
            std::fs::create_dir_all(&args.out)
                .map_err(|e| format!("creating {}: {e}", args.out.display()))?;
            let settings = IntroSettings {
                seeds: args.seeds,
                base_seed: args.seed,
                k_folds: args.k_folds,
                cv_n_trees: args.cv_trees,
                refit_n_trees: args.refit_trees,
                lambda_count: args.lambda_count,
            };
            let outcome = run_intro(&settings).map_err(|e| e.to_string())?;
            let path = args.out.join("pointwise_errors.csv");
            write_intro_csv(&outcome, &path).map_err(|e| e.to_string())?;
            for method in ["rf", "rerf"] {
                let inside = outcome.mean_abs_error(method, false, 0.8);
                let outside = outcome.mean_abs_error(method, true, 0.8);
                println!(
                    "{method:5} mean |error|: z <= 0.8: {inside:.4}, z > 0.8: {outside:.4} (ratio {:.2})",
                    outside / inside
                );
            }
            println!("wrote {}", path.display());
            Ok(())
        }
    }
}

fn concrete_config(args: &ConcreteArgs) -> Result<ExperimentConfig, String> {
    let split = args.split.to_ascii_uppercase();
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("runs/concrete-{}", split.to_lowercase())));
    let config = ExperimentConfig {
        experiment: ExperimentSection {
            id: format!("concrete-{}", split.to_lowercase()),
            kind: ExperimentKind::Dataset,
            methods: args.methods.clone(),
            replicates: args.replicates,
            seed: args.seed,
            output_dir: out,
        },
        simulation: None,
        dataset: Some(DatasetSection {
            csv: args.csv.clone(),
            response: args.response.clone(),
            split: Some(split),
            split_rule: None,
            add_ratio_columns: vec![(args.cement.clone(), args.water.clone())],
            drop_columns: Vec::new(),
            split_column: Some(format!("{}/{}", args.cement, args.water)),
            expansion: Default::default(),
        }),
        tuning: args.tuning.to_section()?,
    };
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

fn run_and_report(config: &ExperimentConfig, resume: bool) -> Result<(), String> {
    let summary = run_experiment(config, resume).map_err(|e| e.to_string())?;
    println!(
        "completed {}/{} replicates ({} reused); results in {}",
        summary.completed_replicates,
        config.experiment.replicates,
        summary.reused_replicates,
        summary.results_path.display()
    );
    for method in config.experiment.methods.iter().map(|m| m.to_string()) {
        let scores: Vec<f64> = summary
            .records
            .iter()
            .filter(|r| r.method == method)
            .map(|r| r.rmse)
            .collect();
        if !scores.is_empty() {
            println!(
                "{method:5} median validation RMSE over {} replicates: {:.4}",
                scores.len(),
                rerf_core::median(&scores)
            );
        }
    }
    if !summary.failures.is_empty() {
        for (rep, message) in &summary.failures {
            eprintln!("replicate {rep} failed: {message}");
        }
        return Err(format!("{} replicate(s) failed", summary.failures.len()));
    }
    Ok(())
}
