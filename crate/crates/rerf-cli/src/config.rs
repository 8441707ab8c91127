//! Experiment configuration: a TOML file describing what to run.
//!
//! Two experiment kinds exist. `simulation` draws fresh synthetic data per
//! replicate from one of the built-in scenarios; `dataset` loads a CSV once
//! and splits it per replicate. Tuning settings apply to every method;
//! full-scale study settings (100-point penalty grid, 100 CV trees,
//! exhaustive search, 1000 replicates) are reachable here, while the
//! defaults keep desk-scale runs affordable.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use rerf_core::dataset::SplitRule;
use rerf_core::error::{Error, Result};
use rerf_core::lasso::PenaltyGrid;
use rerf_core::FeatureExpansionSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Lasso,
    Rf,
    Rerf,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Lasso => write!(f, "lasso"),
            Method::Rf => write!(f, "rf"),
            Method::Rerf => write!(f, "rerf"),
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lasso" => Ok(Method::Lasso),
            "rf" => Ok(Method::Rf),
            "rerf" => Ok(Method::Rerf),
            other => Err(Error::invalid(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchKind {
    Exhaustive,
    Approximate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub id: String,
    pub kind: ExperimentKind,
    pub methods: Vec<Method>,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    #[serde(default)]
    pub seed: u64,
    pub output_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Simulation,
    Dataset,
}

fn default_replicates() -> usize {
    50
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSection {
    /// Scenario label: LxI, PxI, NxI, LxE, PxE, NxE or INTRO.
    pub scenario: String,
    #[serde(default)]
    pub n_train: Option<usize>,
    #[serde(default)]
    pub n_validation: Option<usize>,
    #[serde(default)]
    pub noise_sd: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSection {
    pub csv: PathBuf,
    pub response: String,
    /// Named split (INT1, INT2, EXT1..EXT4) or a full rule under
    /// `[dataset.split_rule]`.
    #[serde(default)]
    pub split: Option<String>,
    #[serde(default)]
    pub split_rule: Option<SplitRule>,
    /// Ratio columns appended to the dataset itself (visible to every
    /// method), e.g. [["cement", "water"]] adds "cement/water".
    #[serde(default)]
    pub add_ratio_columns: Vec<(String, String)>,
    /// Columns removed after the ratios are added.
    #[serde(default)]
    pub drop_columns: Vec<String>,
    /// Column the named EXT3/EXT4 splits threshold on.
    #[serde(default)]
    pub split_column: Option<String>,
    /// Design expansion for the linear part (RERF step 1; the Lasso method
    /// uses the same design).
    #[serde(default)]
    pub expansion: FeatureExpansionSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TuningSection {
    pub k_folds: usize,
    pub search: SearchKind,
    pub cv_n_trees: usize,
    pub refit_n_trees: usize,
    /// Penalty grid; the full-scale grid is {min: 0.001, max: 100, count: 100}.
    pub lambda_grid: LambdaGrid,
    /// Empty means the default rule from the predictor count.
    pub mtry: Vec<usize>,
    pub nodesize: Vec<usize>,
    pub forest_on_expanded: bool,
    pub bootstrap: bool,
    pub dump_cv_tables: bool,
}

impl Default for TuningSection {
    fn default() -> Self {
        TuningSection {
            k_folds: 5,
            search: SearchKind::Exhaustive,
            cv_n_trees: 100,
            refit_n_trees: 500,
            lambda_grid: LambdaGrid::default(),
            mtry: Vec::new(),
            nodesize: vec![1, 5],
            forest_on_expanded: false,
            bootstrap: true,
            dump_cv_tables: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Default for LambdaGrid {
    fn default() -> Self {
        LambdaGrid { min: 0.001, max: 100.0, count: 100 }
    }
}

impl LambdaGrid {
    pub fn build(&self) -> Result<PenaltyGrid> {
        PenaltyGrid::log_spaced(self.min, self.max, self.count)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentSection,
    #[serde(default)]
    pub simulation: Option<SimulationSection>,
    #[serde(default)]
    pub dataset: Option<DatasetSection>,
    #[serde(default)]
    pub tuning: TuningSection,
}

impl ExperimentConfig {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let body = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let config: ExperimentConfig =
            toml::from_str(&body).map_err(|e| Error::invalid(format!(
                "config `{}`: {e}",
                path.display()
            )))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.experiment.methods.is_empty() {
            return Err(Error::invalid("at least one method is required"));
        }
        let unique: BTreeSet<_> = self.experiment.methods.iter().collect();
        if unique.len() != self.experiment.methods.len() {
            return Err(Error::invalid("duplicate method in config"));
        }
        if self.experiment.replicates < 1 {
            return Err(Error::invalid("replicates must be at least 1"));
        }
        match self.experiment.kind {
            ExperimentKind::Simulation => {
                let sim = self
                    .simulation
                    .as_ref()
                    .ok_or_else(|| Error::invalid("kind = simulation requires [simulation]"))?;
                rerf_core::ScenarioSpec::from_label(&sim.scenario, 0)?;
            }
            ExperimentKind::Dataset => {
                let ds = self
                    .dataset
                    .as_ref()
                    .ok_or_else(|| Error::invalid("kind = dataset requires [dataset]"))?;
                if ds.split.is_none() && ds.split_rule.is_none() {
                    return Err(Error::invalid("dataset experiments need split or split_rule"));
                }
                if let Some(name) = &ds.split {
                    named_split_kind(name)?;
                }
            }
        }
        if self.tuning.k_folds < 2 {
            return Err(Error::invalid("k_folds must be at least 2"));
        }
        self.tuning.lambda_grid.build()?;
        if self.tuning.nodesize.is_empty() {
            return Err(Error::invalid("nodesize candidates must be non-empty"));
        }
        Ok(())
    }
}

/// The named train/validation split rules of the concrete-strength study.
/// `split_column` is only used by EXT3/EXT4; `seed` only by INT1/INT2.
pub fn named_split_rule(name: &str, split_column: &str, seed: u64) -> Result<SplitRule> {
    Ok(match named_split_kind(name)? {
        "INT1" => SplitRule::RandomFraction { train_fraction: 0.75, seed },
        "INT2" => SplitRule::RandomFraction { train_fraction: 0.5, seed },
        "EXT1" => SplitRule::ResponseThreshold { threshold: 25.0, train_above: true },
        "EXT2" => SplitRule::ResponseBandComplement { low: 16.0, high: 56.0 },
        "EXT3" => SplitRule::FeatureThreshold {
            column: split_column.to_string(),
            threshold: 2.0,
            train_above: false,
        },
        "EXT4" => SplitRule::FeatureBandComplement {
            column: split_column.to_string(),
            low: 1.0,
            high: 3.0,
        },
        _ => unreachable!(),
    })
}

fn named_split_kind(name: &str) -> Result<&'static str> {
    match name.to_ascii_uppercase().as_str() {
        "INT1" => Ok("INT1"),
        "INT2" => Ok("INT2"),
        "EXT1" => Ok("EXT1"),
        "EXT2" => Ok("EXT2"),
        "EXT3" => Ok("EXT3"),
        "EXT4" => Ok("EXT4"),
        other => Err(Error::invalid(format!(
            "unknown split `{other}` (expected INT1, INT2 or EXT1..EXT4)"
        ))),
    }
}
