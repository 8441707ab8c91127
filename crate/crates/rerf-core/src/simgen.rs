//! Deterministic generators for the synthetic benchmark scenarios.
//!
//! Three data-generating mean functions over 10 uniform predictors (a linear
//! model L, a partially linear model P, and its non-additive variant N), each
//! crossed with an interpolation scheme I (all predictors unif(0,1) in train
//! and validation) and an extrapolation scheme E (x3 is beta(4,8) in train
//! but beta(5,1) in validation). A separate INTRO scenario adds an eleventh
//! predictor z with a strong linear effect and a training domain truncated
//! at 0.8.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dataset::DataMatrix;
use crate::error::{Error, Result};
use crate::rng::{self, beta_integer, normal, uniform};

/// Data-generating mean function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    /// f(x) + 10 z with f the Friedman-MARS function; z truncated in training.
    Intro,
    /// x1 + x2 + 2 x3 + 2 x4
    L,
    /// sin(pi x1) + 4 / (1 + exp(-20 x2 + 10)) + 2 x3 + 2 x4
    P,
    /// P plus the interaction 3 x3 x4
    N,
}

/// Predictor sampling scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sampling {
    /// Interpolation: identical unif(0,1) sampling in train and validation.
    I,
    /// Extrapolation: x3 ~ beta(4,8) in train, beta(5,1) in validation.
    E,
}

/// One synthetic experiment: model, sampling scheme, sizes, noise and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub model: Model,
    pub sampling: Sampling,
    pub n_train: usize,
    pub n_validation: usize,
    pub noise_sd: f64,
    pub seed: u64,
}

pub const N_PREDICTORS: usize = 10;
const INTRO_TRAIN_Z_MAX: f64 = 0.8;

impl ScenarioSpec {
    /// Scenario with the benchmark defaults: 1000/100 observations, noise
    /// sd 0.5.
    pub fn new(model: Model, sampling: Sampling, seed: u64) -> Self {
        ScenarioSpec {
            model,
            sampling,
            n_train: 1000,
            n_validation: 100,
            noise_sd: 0.5,
            seed,
        }
    }

    /// The introductory truncated-z scenario: 1500/300 observations.
    pub fn intro(seed: u64) -> Self {
        ScenarioSpec {
            model: Model::Intro,
            sampling: Sampling::I,
            n_train: 1500,
            n_validation: 300,
            noise_sd: 0.5,
            seed,
        }
    }

    /// Short label, e.g. "LxI", "NxE", "INTRO".
    pub fn label(&self) -> String {
        match self.model {
            Model::Intro => "INTRO".to_string(),
            m => format!(
                "{}x{}",
                m,
                match self.sampling {
                    Sampling::I => "I",
                    Sampling::E => "E",
                }
            ),
        }
    }

    /// Parse a label like "NxE" or "INTRO" into a default-sized spec.
    pub fn from_label(label: &str, seed: u64) -> Result<Self> {
        let norm = label.to_ascii_uppercase();
        if norm == "INTRO" {
            return Ok(ScenarioSpec::intro(seed));
        }
        let (m, s) = norm
            .split_once('X')
            .ok_or_else(|| Error::invalid(format!("unknown scenario label `{label}`")))?;
        let model = match m {
            "L" => Model::L,
            "P" => Model::P,
            "N" => Model::N,
            _ => return Err(Error::invalid(format!("unknown model `{m}` in `{label}`"))),
        };
        let sampling = match s {
            "I" => Sampling::I,
            "E" => Sampling::E,
            _ => return Err(Error::invalid(format!("unknown sampling `{s}` in `{label}`"))),
        };
        Ok(ScenarioSpec::new(model, sampling, seed))
    }

    fn validate(&self) -> Result<()> {
        if self.n_train == 0 || self.n_validation == 0 {
            return Err(Error::invalid("scenario sizes must be positive"));
        }
        if !(self.noise_sd >= 0.0 && self.noise_sd.is_finite()) {
            return Err(Error::invalid("noise_sd must be finite and nonnegative"));
        }
        Ok(())
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Intro => write!(f, "INTRO"),
            Model::L => write!(f, "L"),
            Model::P => write!(f, "P"),
            Model::N => write!(f, "N"),
        }
    }
}

/// All six model-by-sampling labels plus INTRO, in presentation order.
pub fn scenario_labels() -> Vec<&'static str> {
    vec!["LxI", "PxI", "NxI", "LxE", "PxE", "NxE", "INTRO"]
}

/// Evaluate the noiseless mean function. `x` has 10 coordinates; `z` is
/// required exactly for the INTRO model.
pub fn eval_mean_function(model: Model, x: &[f64], z: Option<f64>) -> Result<f64> {
    if x.len() != N_PREDICTORS {
        return Err(Error::DimensionMismatch {
            expected: N_PREDICTORS,
            actual: x.len(),
        });
    }
    match (model, z) {
        (Model::Intro, Some(z)) => {
            let f = 0.1 * (4.0 * x[0]).exp()
                + 4.0 / (1.0 + (-20.0 * (x[1] - 0.5)).exp())
                + 3.0 * x[2]
                + 2.0 * x[3]
                + x[4];
            Ok(f + 10.0 * z)
        }
        (Model::Intro, None) => Err(Error::invalid("INTRO model requires z")),
        (_, Some(_)) => Err(Error::invalid("z is only meaningful for the INTRO model")),
        (Model::L, None) => Ok(x[0] + x[1] + 2.0 * x[2] + 2.0 * x[3]),
        (Model::P, None) => Ok(partially_linear(x)),
        (Model::N, None) => Ok(partially_linear(x) + 3.0 * x[2] * x[3]),
    }
}

fn partially_linear(x: &[f64]) -> f64 {
    (std::f64::consts::PI * x[0]).sin()
        + 4.0 / (1.0 + (-20.0 * x[1] + 10.0).exp())
        + 2.0 * x[2]
        + 2.0 * x[3]
}

/// Generate (train, validation) per the spec. Deterministic under the seed;
/// train and validation use separate ChaCha streams.
pub fn generate(spec: &ScenarioSpec) -> Result<(DataMatrix, DataMatrix)> {
    spec.validate()?;
    let train = generate_part(spec, spec.n_train, 0, true)?;
    let validation = generate_part(spec, spec.n_validation, 1, false)?;
    Ok((train, validation))
}

fn generate_part(
    spec: &ScenarioSpec,
    n: usize,
    stream: u64,
    is_train: bool,
) -> Result<DataMatrix> {
    let mut rng = rng::stream_rng(spec.seed, stream);
    let has_z = spec.model == Model::Intro;
    let p = N_PREDICTORS + usize::from(has_z);

    let mut columns: Vec<Vec<f64>> = vec![Vec::with_capacity(n); p];
    let mut response: Vec<f64> = Vec::with_capacity(n);
    let mut x = [0.0f64; N_PREDICTORS];

    for _ in 0..n {
        for (j, xj) in x.iter_mut().enumerate() {
            *xj = if j == 2 && spec.sampling == Sampling::E && spec.model != Model::Intro {
                if is_train {
                    beta_integer(&mut rng, 4, 8)
                } else {
                    beta_integer(&mut rng, 5, 1)
                }
            } else {
                uniform(&mut rng)
            };
        }
        let z = if has_z {
            let z = if is_train {
                INTRO_TRAIN_Z_MAX * uniform(&mut rng)
            } else {
                uniform(&mut rng)
            };
            Some(z)
        } else {
            None
        };
        let mean = eval_mean_function(spec.model, &x, z)?;
        let noise = if spec.noise_sd > 0.0 {
            spec.noise_sd * normal(&mut rng)
        } else {
            0.0
        };
        for (j, &xj) in x.iter().enumerate() {
            columns[j].push(xj);
        }
        if let Some(z) = z {
            columns[N_PREDICTORS].push(z);
        }
        response.push(mean + noise);
    }

    let mut names: Vec<String> = (1..=N_PREDICTORS).map(|j| format!("x{j}")).collect();
    if has_z {
        names.push("z".to_string());
    }
    DataMatrix::new(names, columns)?.with_response("y", response)
}
