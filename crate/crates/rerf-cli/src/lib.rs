//! Benchmark harness around `rerf-core`: experiment configs, the replicate
//! runner, and the intro-figure pointwise-error experiment.

pub mod config;
pub mod intro;
pub mod runner;

pub use config::{ExperimentConfig, Method, SearchKind};
pub use runner::{run_experiment, ResultRecord, RunSummary};
