//! Behavioral checks of the benchmark pipeline beyond the acceptance gate.

use rerf_cli::config::ExperimentConfig;
use rerf_cli::runner::run_experiment;
use rerf_core::median;

fn config(dir: &std::path::Path, scenario: &str, replicates: usize, seed: u64) -> ExperimentConfig {
    let toml_src = format!(
        r#"
[experiment]
id = "beh-{scenario}"
kind = "simulation"
methods = ["lasso", "rerf"]
replicates = {replicates}
seed = {seed}
output_dir = "{}"

[simulation]
scenario = "{scenario}"
n_train = 500
n_validation = 100

[tuning]
search = "approximate"
k_folds = 5
cv_n_trees = 25
refit_n_trees = 50
lambda_grid = {{ min = 0.001, max = 100.0, count = 50 }}
"#,
        dir.display()
    );
    let cfg: ExperimentConfig = toml::from_str(&toml_src).unwrap();
    cfg.validate().unwrap();
    cfg
}

/// The penalty selected for the combined model sits above the penalty
/// selected for a plain Lasso in the median: the forest absorbs structure
/// that would otherwise force the Lasso toward smaller penalties.
#[test]
fn selected_penalty_ordering_on_nonlinear_data() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "NxI", 20, 11);
    let summary = run_experiment(&cfg, false).unwrap();
    assert!(summary.failures.is_empty());

    let lambdas = |method: &str| -> Vec<f64> {
        summary
            .records
            .iter()
            .filter(|r| r.method == method)
            .map(|r| r.lambda.expect("both methods record lambda"))
            .collect()
    };
    let lasso = median(&lambdas("lasso"));
    let rerf = median(&lambdas("rerf"));
    println!("median selected lambda: lasso {lasso:.4}, rerf {rerf:.4}");
    assert!(
        rerf > lasso,
        "expected the combined model's median penalty ({rerf}) above the Lasso's ({lasso})"
    );
}
