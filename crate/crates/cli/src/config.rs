//! Run configuration: defaults, optional TOML file, command-line overrides
//! (flags win over the file, the file wins over defaults).

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarOrList {
    Scalar(f64),
    List(Vec<f64>),
}

impl ScalarOrList {
    /// Expand to one value per ray.
    pub fn per_ray(&self, n_rays: usize) -> Result<Vec<f64>> {
        match self {
            ScalarOrList::Scalar(x) => Ok(vec![*x; n_rays]),
            ScalarOrList::List(v) => {
                if v.len() != n_rays {
                    bail!("epsilon list has {} entries for {} rays", v.len(), n_rays);
                }
                Ok(v.clone())
            }
        }
    }
}

/// Parse "0.5" or "0.3,0.5,0.7" from the command line.
pub fn parse_scalar_or_list(text: &str) -> Result<ScalarOrList> {
    if text.contains(',') {
        let v: Vec<f64> = text
            .split(',')
            .map(|t| t.trim().parse::<f64>().context("bad number in list"))
            .collect::<Result<_>>()?;
        Ok(ScalarOrList::List(v))
    } else {
        Ok(ScalarOrList::Scalar(
            text.trim().parse::<f64>().context("bad number")?,
        ))
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub epsilon: Option<ScalarOrList>,
    pub delta: Option<Vec<f64>>,
    pub radii: Option<Vec<f64>>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tol_identity: Option<f64>,
    pub tol_limit: Option<f64>,
    pub dirs: Option<usize>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(FileConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading config {}", p.display()))?;
                toml::from_str(&text).with_context(|| format!("parsing config {}", p.display()))
            }
        }
    }
}

/// Fully resolved job configuration. Every output records the seed and the
/// tolerances, so runs are reproducible byte for byte.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub epsilon: ScalarOrList,
    pub delta: Vec<f64>,
    pub radii: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub tol_identity: f64,
    pub tol_limit: f64,
    pub dirs: usize,
    pub out: PathBuf,
}

pub struct Overrides {
    pub epsilon: Option<ScalarOrList>,
    pub delta: Option<Vec<f64>>,
    pub radii: Option<Vec<f64>>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tol_identity: Option<f64>,
    pub tol_limit: Option<f64>,
    pub dirs: Option<usize>,
    pub out: Option<PathBuf>,
}

impl JobConfig {
    pub fn resolve(file: FileConfig, flags: Overrides, default_deltas: &[f64]) -> Result<Self> {
        let cfg = JobConfig {
            epsilon: flags
                .epsilon
                .or(file.epsilon)
                .unwrap_or(ScalarOrList::Scalar(0.5)),
            delta: flags
                .delta
                .or(file.delta)
                .unwrap_or_else(|| default_deltas.to_vec()),
            radii: flags
                .radii
                .or(file.radii)
                .unwrap_or_else(|| vec![0.3, 0.7, 1.0, 1.5]),
            samples: flags.samples.or(file.samples).unwrap_or(100),
            seed: flags.seed.or(file.seed).unwrap_or(0),
            tol_identity: flags.tol_identity.or(file.tol_identity).unwrap_or(1e-8),
            tol_limit: flags.tol_limit.or(file.tol_limit).unwrap_or(1e-2),
            dirs: flags.dirs.or(file.dirs).unwrap_or(360),
            out: flags.out.or(file.out).unwrap_or_else(|| PathBuf::from("out")),
        };
        if !(cfg.tol_identity > 0.0) || !(cfg.tol_limit > 0.0) {
            bail!("tolerances must be positive");
        }
        Ok(cfg)
    }
}
