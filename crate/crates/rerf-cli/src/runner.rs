//! Experiment execution: replicate loop, per-method tuning and scoring,
//! incremental result writing and crash-safe resume.
//!
//! Tuning only ever sees the training partition; validation rows enter the
//! pipeline solely to score the refit model. Every seed is derived from the
//! master seed and the replicate/method indices, so reruns are byte-identical
//! regardless of thread count, and `results.csv` carries no timing data
//! (wall times go to `timings.csv`, which is not part of the deterministic
//! contract).

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::mpsc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rerf_core::dataset::{expand_features, load_csv, split, DataMatrix, SplitRule};
use rerf_core::error::{Error, Result};
use rerf_core::rng::derive_seed;
use rerf_core::tuning::{
    approximate_search, default_grid, grid_search, tune_forest_cv, tune_lasso_cv, write_cv_table,
    SearchSettings, TuningGrid,
};
use rerf_core::{
    fit_forest, fit_lasso, fit_rerf_with, predict_forest, predict_linear, predict_rerf, rmse,
    ForestParams, RerfOptions,
};

use crate::config::{
    named_split_rule, ExperimentConfig, ExperimentKind, Method, SearchKind,
};

/// One scored (method, replicate) outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub experiment_id: String,
    pub scenario: String,
    pub method: String,
    pub replicate: usize,
    pub lambda: Option<f64>,
    pub mtry: Option<usize>,
    pub nodesize: Option<usize>,
    pub rmse: f64,
    pub n_train: usize,
    pub n_validation: usize,
}

/// Wall time of one (method, replicate); kept out of the deterministic CSV.
#[derive(Debug, Clone, Serialize)]
pub struct TimingRecord {
    pub method: String,
    pub replicate: usize,
    pub wall_ms: u128,
}

#[derive(Debug)]
pub struct RunSummary {
    pub records: Vec<ResultRecord>,
    pub completed_replicates: usize,
    pub reused_replicates: usize,
    pub failures: Vec<(usize, String)>,
    pub results_path: PathBuf,
}

const RESULTS_FILE: &str = "results.csv";
const TIMINGS_FILE: &str = "timings.csv";
const MANIFEST_FILE: &str = "manifest.json";
const RESULTS_HEADER: [&str; 10] = [
    "experiment_id",
    "scenario",
    "method",
    "replicate",
    "lambda",
    "mtry",
    "nodesize",
    "rmse",
    "n_train",
    "n_validation",
];

/// Run every replicate of the configured experiment, writing records
/// incrementally in replicate order. With `resume`, replicates already
/// complete in an existing results file are reused instead of recomputed.
pub fn run_experiment(config: &ExperimentConfig, resume: bool) -> Result<RunSummary> {
    config.validate()?;
    let out_dir = &config.experiment.output_dir;
    fs::create_dir_all(out_dir).map_err(|e| Error::Io {
        path: out_dir.display().to_string(),
        source: e,
    })?;

    let results_path = out_dir.join(RESULTS_FILE);
    let reused: BTreeMap<usize, Vec<ResultRecord>> = if resume && results_path.exists() {
        load_complete_replicates(&results_path, &config.experiment.methods)?
    } else {
        BTreeMap::new()
    };

    write_manifest(config, out_dir)?;

    // dataset experiments load the CSV once
    let base_data = match config.experiment.kind {
        ExperimentKind::Dataset => Some(prepare_dataset(config)?),
        ExperimentKind::Simulation => None,
    };

    let replicates = config.experiment.replicates;
    let todo: Vec<usize> = (0..replicates)
        .filter(|r| !reused.contains_key(r))
        .collect();
    let reused_count = reused.len();

    // compute in parallel on the caller's rayon pool, write strictly in
    // replicate order on a scoped writer thread
    let (tx, rx) = mpsc::channel::<(usize, Result<(Vec<ResultRecord>, Vec<TimingRecord>)>)>();
    type WriterState = (
        BTreeMap<usize, Vec<ResultRecord>>,
        BTreeMap<usize, Vec<TimingRecord>>,
        Vec<(usize, String)>,
    );

    let (all_records, timings, mut failures) = std::thread::scope(
        |scope| -> Result<WriterState> {
            let writer_path = results_path.clone();
            let writer = scope.spawn(move || -> Result<WriterState> {
                let mut all_records = reused;
                let mut timings: BTreeMap<usize, Vec<TimingRecord>> = BTreeMap::new();
                let mut failures: Vec<(usize, String)> = Vec::new();
                let mut writer = IncrementalWriter::new(&writer_path)?;
                let mut pending: BTreeMap<usize, Vec<ResultRecord>> = BTreeMap::new();
                let mut next_to_write = 0usize;
                // replicates already on disk flush first
                for (&rep, records) in &all_records {
                    pending.insert(rep, records.clone());
                }
                for (rep, outcome) in rx {
                    match outcome {
                        Ok((records, times)) => {
                            pending.insert(rep, records.clone());
                            all_records.insert(rep, records);
                            timings.insert(rep, times);
                        }
                        Err(e) => {
                            failures.push((rep, e.to_string()));
                            // a failed replicate still unblocks the cursor
                            pending.insert(rep, Vec::new());
                        }
                    }
                    while let Some(records) = pending.remove(&next_to_write) {
                        writer.append(&records)?;
                        next_to_write += 1;
                    }
                }
                while let Some(records) = pending.remove(&next_to_write) {
                    writer.append(&records)?;
                    next_to_write += 1;
                }
                writer.flush()?;
                Ok((all_records, timings, failures))
            });

            let base_ref = base_data.as_ref();
            todo.par_iter().for_each_with(tx, |tx, &rep| {
                let outcome = run_replicate(config, base_ref, rep);
                // receiver hangs up only on writer failure
                let _ = tx.send((rep, outcome));
            });
            writer.join().expect("writer thread panicked")
        },
    )?;

    failures.sort_by_key(|(rep, _)| *rep);

    // canonical rewrite so resumed and uninterrupted runs end byte-identical
    let records: Vec<ResultRecord> = all_records.into_values().flatten().collect();
    write_results_atomic(&results_path, &records)?;
    write_timings(&out_dir.join(TIMINGS_FILE), &timings)?;

    Ok(RunSummary {
        completed_replicates: replicates - failures.len(),
        reused_replicates: reused_count,
        records,
        failures,
        results_path,
    })
}

struct IncrementalWriter {
    file: fs::File,
    path: PathBuf,
}

impl IncrementalWriter {
    fn new(path: &Path) -> Result<Self> {
        let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        writeln!(file, "{}", RESULTS_HEADER.join(",")).map_err(|e| Error::io(path, e))?;
        Ok(IncrementalWriter { file, path: path.to_path_buf() })
    }

    fn append(&mut self, records: &[ResultRecord]) -> Result<()> {
        for r in records {
            writeln!(self.file, "{}", record_line(r)).map_err(|e| Error::io(&self.path, e))?;
        }
        self.file.flush().map_err(|e| Error::io(&self.path, e))
    }

    fn flush(&mut self) -> Result<()> {
        self.file.flush().map_err(|e| Error::io(&self.path, e))
    }
}

fn record_line(r: &ResultRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.experiment_id,
        r.scenario,
        r.method,
        r.replicate,
        r.lambda.map_or(String::new(), |v| format!("{v}")),
        r.mtry.map_or(String::new(), |v| format!("{v}")),
        r.nodesize.map_or(String::new(), |v| format!("{v}")),
        r.rmse,
        r.n_train,
        r.n_validation,
    )
}

fn write_results_atomic(path: &Path, records: &[ResultRecord]) -> Result<()> {
    let tmp = path.with_extension("csv.tmp");
    {
        let mut file = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        writeln!(file, "{}", RESULTS_HEADER.join(",")).map_err(|e| Error::io(&tmp, e))?;
        for r in records {
            writeln!(file, "{}", record_line(r)).map_err(|e| Error::io(&tmp, e))?;
        }
        file.flush().map_err(|e| Error::io(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

fn write_timings(path: &Path, timings: &BTreeMap<usize, Vec<TimingRecord>>) -> Result<()> {
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    writeln!(file, "method,replicate,wall_ms").map_err(|e| Error::io(path, e))?;
    for times in timings.values() {
        for t in times {
            writeln!(file, "{},{},{}", t.method, t.replicate, t.wall_ms)
                .map_err(|e| Error::io(path, e))?;
        }
    }
    Ok(())
}

/// Parse an existing results file; returns replicates that already carry one
/// record per configured method. A torn final line (crash mid-write) is
/// skipped.
fn load_complete_replicates(
    path: &Path,
    methods: &[Method],
) -> Result<BTreeMap<usize, Vec<ResultRecord>>> {
    let expected: BTreeSet<String> = methods.iter().map(|m| m.to_string()).collect();
    let mut by_rep: BTreeMap<usize, Vec<ResultRecord>> = BTreeMap::new();

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_path(path)
        .map_err(|e| Error::Csv {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    for record in reader.records() {
        let Ok(record) = record else { break };
        if record.len() != RESULTS_HEADER.len() {
            break;
        }
        let parse = || -> Option<ResultRecord> {
            Some(ResultRecord {
                experiment_id: record[0].to_string(),
                scenario: record[1].to_string(),
                method: record[2].to_string(),
                replicate: record[3].parse().ok()?,
                lambda: parse_opt(&record[4])?,
                mtry: parse_opt(&record[5])?,
                nodesize: parse_opt(&record[6])?,
                rmse: record[7].parse().ok()?,
                n_train: record[8].parse().ok()?,
                n_validation: record[9].parse().ok()?,
            })
        };
        let Some(r) = parse() else { break };
        by_rep.entry(r.replicate).or_default().push(r);
    }

    by_rep.retain(|_, records| {
        let present: BTreeSet<String> = records.iter().map(|r| r.method.clone()).collect();
        present == expected
    });
    Ok(by_rep)
}

fn parse_opt<T: std::str::FromStr>(field: &str) -> Option<Option<T>> {
    if field.is_empty() {
        Some(None)
    } else {
        field.parse::<T>().ok().map(Some)
    }
}

fn write_manifest(config: &ExperimentConfig, out_dir: &Path) -> Result<()> {
    #[derive(Serialize)]
    struct Manifest<'a> {
        crate_version: &'static str,
        results_file: &'static str,
        timings_file: &'static str,
        config: &'a ExperimentConfig,
    }
    let manifest = Manifest {
        crate_version: env!("CARGO_PKG_VERSION"),
        results_file: RESULTS_FILE,
        timings_file: TIMINGS_FILE,
        config,
    };
    let path = out_dir.join(MANIFEST_FILE);
    let body = serde_json::to_vec_pretty(&manifest)
        .map_err(|e| Error::Serialization(e.to_string()))?;
    fs::write(&path, body).map_err(|e| Error::io(&path, e))
}

/// The loaded dataset plus everything needed to split it per replicate.
struct PreparedDataset {
    data: DataMatrix,
    scenario: String,
    named_split: Option<String>,
    split_rule: Option<SplitRule>,
    split_column: String,
}

fn prepare_dataset(config: &ExperimentConfig) -> Result<PreparedDataset> {
    let ds = config.dataset.as_ref().expect("validated");
    let (mut data, dropped) = load_csv(&ds.csv, &ds.response)?;
    if dropped > 0 {
        eprintln!("dropped {dropped} rows with missing values from {}", ds.csv.display());
    }
    if !ds.add_ratio_columns.is_empty() {
        let spec = rerf_core::FeatureExpansionSpec {
            ratios: ds.add_ratio_columns.clone(),
            ..Default::default()
        };
        data = expand_features(&data, &spec)?;
    }
    if !ds.drop_columns.is_empty() {
        data = data.drop_columns(&ds.drop_columns)?;
    }
    let split_column = ds.split_column.clone().unwrap_or_else(|| {
        ds.add_ratio_columns
            .first()
            .map(|(a, b)| format!("{a}/{b}"))
            .unwrap_or_default()
    });
    let scenario = ds
        .split
        .clone()
        .unwrap_or_else(|| "custom-split".to_string());
    Ok(PreparedDataset {
        data,
        scenario,
        named_split: ds.split.clone(),
        split_rule: ds.split_rule.clone(),
        split_column,
    })
}

fn replicate_data(
    config: &ExperimentConfig,
    base: Option<&PreparedDataset>,
    rep: usize,
) -> Result<(DataMatrix, DataMatrix, String)> {
    let rep_seed = derive_seed(config.experiment.seed, rep as u64, 0);
    match config.experiment.kind {
        ExperimentKind::Simulation => {
            let sim = config.simulation.as_ref().expect("validated");
            let mut spec =
                rerf_core::ScenarioSpec::from_label(&sim.scenario, derive_seed(rep_seed, 0, 3))?;
            if let Some(n) = sim.n_train {
                spec.n_train = n;
            }
            if let Some(n) = sim.n_validation {
                spec.n_validation = n;
            }
            if let Some(sd) = sim.noise_sd {
                spec.noise_sd = sd;
            }
            let label = spec.label();
            let (train, val) = rerf_core::generate(&spec)?;
            Ok((train, val, label))
        }
        ExperimentKind::Dataset => {
            let base = base.expect("dataset prepared");
            let rule = match (&base.named_split, &base.split_rule) {
                (Some(name), _) => {
                    named_split_rule(name, &base.split_column, derive_seed(rep_seed, 0, 4))?
                }
                (None, Some(rule)) => rule.clone(),
                (None, None) => unreachable!("validated"),
            };
            let (train, val) = split(&base.data, &rule)?;
            Ok((train, val, base.scenario.clone()))
        }
    }
}

fn expansion_for(config: &ExperimentConfig) -> rerf_core::FeatureExpansionSpec {
    config
        .dataset
        .as_ref()
        .map(|ds| ds.expansion.clone())
        .unwrap_or_default()
}

fn tuning_grid_for(config: &ExperimentConfig, forest_p: usize) -> Result<TuningGrid> {
    let lambdas = config.tuning.lambda_grid.build()?;
    let mtry = if config.tuning.mtry.is_empty() {
        default_grid(forest_p).mtry_candidates
    } else {
        config.tuning.mtry.clone()
    };
    Ok(TuningGrid {
        lambdas,
        mtry_candidates: mtry,
        nodesize_candidates: config.tuning.nodesize.clone(),
    })
}

fn run_replicate(
    config: &ExperimentConfig,
    base: Option<&PreparedDataset>,
    rep: usize,
) -> Result<(Vec<ResultRecord>, Vec<TimingRecord>)> {
    let (train, validation, scenario) = replicate_data(config, base, rep)?;
    let expansion = expansion_for(config);
    let rep_seed = derive_seed(config.experiment.seed, rep as u64, 0);

    let mut records = Vec::new();
    let mut timings = Vec::new();
    for (m_idx, &method) in config.experiment.methods.iter().enumerate() {
        let tune_seed = derive_seed(rep_seed, m_idx as u64, 1);
        let refit_seed = derive_seed(rep_seed, m_idx as u64, 2);
        let started = std::time::Instant::now();
        let (lambda, mtry, nodesize, score) = match method {
            Method::Lasso => {
                let exp_train = expand_features(&train, &expansion)?;
                let exp_val = expand_features(&validation, &expansion)?;
                let lambdas = config.tuning.lambda_grid.build()?;
                let cv = tune_lasso_cv(&exp_train, &lambdas, config.tuning.k_folds, tune_seed)?;
                let fit = fit_lasso(&exp_train, cv.lambda)?;
                let pred = predict_linear(&fit, &exp_val)?;
                let score = rmse(&pred, exp_val.response_or_err()?)?;
                (Some(cv.lambda), None, None, score)
            }
            Method::Rf => {
                let grid = tuning_grid_for(config, train.n_cols())?;
                let settings = SearchSettings {
                    k: config.tuning.k_folds,
                    seed: tune_seed,
                    cv_n_trees: config.tuning.cv_n_trees,
                    forest_on_expanded: false,
                    bootstrap: config.tuning.bootstrap,
                };
                let cv = tune_forest_cv(
                    &train,
                    &grid.mtry_candidates,
                    &grid.nodesize_candidates,
                    &settings,
                )?;
                let params = ForestParams {
                    n_trees: config.tuning.refit_n_trees,
                    mtry: cv.mtry,
                    nodesize: cv.nodesize,
                    seed: refit_seed,
                    bootstrap: config.tuning.bootstrap,
                };
                let forest = fit_forest(&train, &params)?;
                let pred = predict_forest(&forest, &validation)?;
                let score = rmse(&pred, validation.response_or_err()?)?;
                (None, Some(cv.mtry), Some(cv.nodesize), score)
            }
            Method::Rerf => {
                let forest_p = if config.tuning.forest_on_expanded {
                    train.n_cols() + expansion.generated_names().len()
                } else {
                    train.n_cols()
                };
                let grid = tuning_grid_for(config, forest_p)?;
                let settings = SearchSettings {
                    k: config.tuning.k_folds,
                    seed: tune_seed,
                    cv_n_trees: config.tuning.cv_n_trees,
                    forest_on_expanded: config.tuning.forest_on_expanded,
                    bootstrap: config.tuning.bootstrap,
                };
                let result = match config.tuning.search {
                    SearchKind::Exhaustive => grid_search(&train, &expansion, &grid, &settings)?,
                    SearchKind::Approximate => {
                        approximate_search(&train, &expansion, &grid, &settings)?
                    }
                };
                for failure in &result.failures {
                    eprintln!(
                        "replicate {rep}: cv cell (lambda {}, mtry {}, nodesize {}) fold {} failed: {}",
                        failure.lambda, failure.mtry, failure.nodesize, failure.fold, failure.message
                    );
                }
                if config.tuning.dump_cv_tables {
                    let path = config
                        .experiment
                        .output_dir
                        .join(format!("cv_table_rerf_rep{rep}.csv"));
                    write_cv_table(&result, path)?;
                }
                let sel = result.selected;
                let options = RerfOptions {
                    n_trees: config.tuning.refit_n_trees,
                    forest_on_expanded: config.tuning.forest_on_expanded,
                    bootstrap: config.tuning.bootstrap,
                };
                let model = fit_rerf_with(
                    &train,
                    &expansion,
                    sel.lambda,
                    sel.mtry,
                    sel.nodesize,
                    refit_seed,
                    &options,
                )?;
                let pred = predict_rerf(&model, &validation)?;
                let score = rmse(&pred, validation.response_or_err()?)?;
                (Some(sel.lambda), Some(sel.mtry), Some(sel.nodesize), score)
            }
        };
        timings.push(TimingRecord {
            method: method.to_string(),
            replicate: rep,
            wall_ms: started.elapsed().as_millis(),
        });
        records.push(ResultRecord {
            experiment_id: config.experiment.id.clone(),
            scenario: scenario.clone(),
            method: method.to_string(),
            replicate: rep,
            lambda,
            mtry,
            nodesize,
            rmse: score,
            n_train: train.n_rows(),
            n_validation: validation.n_rows(),
        });
    }
    Ok((records, timings))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config(dir: &Path, replicates: usize, seed: u64) -> ExperimentConfig {
        let toml_src = format!(
            r#"
[experiment]
id = "t"
kind = "simulation"
methods = ["lasso", "rf", "rerf"]
replicates = {replicates}
seed = {seed}
output_dir = "{}"

[simulation]
scenario = "LxI"
n_train = 60
n_validation = 20

[tuning]
search = "approximate"
cv_n_trees = 5
refit_n_trees = 10
k_folds = 3
lambda_grid = {{ min = 0.01, max = 10.0, count = 4 }}
"#,
            dir.display()
        );
        let cfg: ExperimentConfig = toml::from_str(&toml_src).unwrap();
        cfg.validate().unwrap();
        cfg
    }

    #[test]
    fn tiny_run_produces_records_and_files() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = tiny_config(dir.path(), 2, 3);
        let summary = run_experiment(&cfg, false).unwrap();
        assert!(summary.failures.is_empty());
        assert_eq!(summary.records.len(), 6);
        assert!(dir.path().join("results.csv").exists());
        assert!(dir.path().join("manifest.json").exists());
        assert!(dir.path().join("timings.csv").exists());
        for r in &summary.records {
            assert_eq!(r.n_train, 60);
            assert_eq!(r.n_validation, 20);
            assert!(r.rmse >= 0.0);
            assert_eq!(r.scenario, "LxI");
        }
        // lasso records carry lambda only; rf records carry (mtry, nodesize)
        let lasso = summary.records.iter().find(|r| r.method == "lasso").unwrap();
        assert!(lasso.lambda.is_some() && lasso.mtry.is_none());
        let rf = summary.records.iter().find(|r| r.method == "rf").unwrap();
        assert!(rf.lambda.is_none() && rf.mtry.is_some());
    }

    #[test]
    fn reruns_are_byte_identical() {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let cfg_a = tiny_config(dir_a.path(), 2, 9);
        let cfg_b = tiny_config(dir_b.path(), 2, 9);
        run_experiment(&cfg_a, false).unwrap();
        run_experiment(&cfg_b, false).unwrap();
        let a = fs::read(dir_a.path().join("results.csv")).unwrap();
        let b = fs::read(dir_b.path().join("results.csv")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn resume_reuses_complete_replicates_and_matches_uninterrupted() {
        let dir_full = tempfile::tempdir().unwrap();
        let cfg_full = tiny_config(dir_full.path(), 3, 11);
        run_experiment(&cfg_full, false).unwrap();
        let full = fs::read(dir_full.path().join("results.csv")).unwrap();

        // simulate a crash: keep only replicate 0's records (plus a torn line)
        let dir_part = tempfile::tempdir().unwrap();
        let cfg_part = tiny_config(dir_part.path(), 3, 11);
        let text = String::from_utf8(full.clone()).unwrap();
        let mut kept: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with("experiment_id") || l.contains(",0,") && l.starts_with("t,"))
            .collect();
        // keep header + replicate-0 lines, then a torn partial line
        kept.push("t,LxI,la");
        fs::create_dir_all(dir_part.path()).unwrap();
        fs::write(dir_part.path().join("results.csv"), kept.join("\n")).unwrap();

        let summary = run_experiment(&cfg_part, true).unwrap();
        assert_eq!(summary.reused_replicates, 1);
        let resumed = fs::read(dir_part.path().join("results.csv")).unwrap();
        assert_eq!(resumed, full);
    }

    #[test]
    fn tuning_ignores_validation_responses() {
        // permuting validation responses must not change selected parameters:
        // tuning never receives the validation partition
        let dir = tempfile::tempdir().unwrap();
        let cfg = tiny_config(dir.path(), 1, 21);
        let base = None;
        let (records, _) = run_replicate(&cfg, base, 0).unwrap();

        // rebuild the same replicate but score against permuted validation
        let (train, validation, _) = replicate_data(&cfg, base, 0).unwrap();
        let mut y = validation.response().unwrap().to_vec();
        y.reverse();
        let permuted = validation.replace_response("y", y).unwrap();
        assert_eq!(train.n_rows(), 60);

        let grid = tuning_grid_for(&cfg, train.n_cols()).unwrap();
        let rep_seed = derive_seed(cfg.experiment.seed, 0, 0);
        let tune_seed = derive_seed(rep_seed, 2, 1); // rerf is method index 2
        let settings = SearchSettings {
            k: cfg.tuning.k_folds,
            seed: tune_seed,
            cv_n_trees: cfg.tuning.cv_n_trees,
            forest_on_expanded: false,
            bootstrap: true,
        };
        let result =
            approximate_search(&train, &Default::default(), &grid, &settings).unwrap();
        let rerf_record = records.iter().find(|r| r.method == "rerf").unwrap();
        assert_eq!(Some(result.selected.lambda), rerf_record.lambda);
        assert_eq!(Some(result.selected.mtry), rerf_record.mtry);
        assert_eq!(Some(result.selected.nodesize), rerf_record.nodesize);
        drop(permuted);
    }
}
