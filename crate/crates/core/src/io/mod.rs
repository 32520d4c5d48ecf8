//! Config loading, CSV output, run manifests, and the task runner behind
//! the command-line tool.
//!
//! Every task writes one CSV plus a `<stem>.manifest.json` next to it. The
//! manifest holds the resolved config and every parameter, so
//! [`replay`] reproduces the CSV byte for byte.

mod csv;
mod run;

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::analysis::AnalysisError;
use crate::hybrid::{load_preset, ConfigError, NonFiniteState, Preset, State4, SystemConfig};

pub use self::csv::{
    fmt_real, write_bifurcation, write_bifurcation_skips, write_cobweb, write_histogram, write_lyapunov,
    write_lyapunov_skips, write_scatter, write_trajectory,
};
pub use run::{
    execute, manifest_path, read_manifest, replay, repro, sidecar_path, ReproScale, RunManifest, RunSummary,
    Task,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config {path}: {source}")]
    Config { path: String, source: ConfigError },
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Numeric(#[from] AnalysisError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } | CliError::Read { .. } => EXIT_USAGE,
            CliError::Write { .. } => EXIT_IO,
            CliError::Numeric(AnalysisError::InvalidArgument(_)) => EXIT_USAGE,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }

    pub(crate) fn write(path: &Path, source: std::io::Error) -> Self {
        CliError::Write { path: path.to_owned(), source }
    }
}

impl From<NonFiniteState> for CliError {
    fn from(e: NonFiniteState) -> Self {
        CliError::Numeric(AnalysisError::NonFinite(e))
    }
}

/// Where a config comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigSource {
    File(PathBuf),
    Preset(Preset),
}

/// Command-line overrides applied on top of a loaded config.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub r: Option<f64>,
    pub burn_in: Option<usize>,
    pub seed_state: Option<[f64; 4]>,
}

pub fn load_config(source: &ConfigSource, overrides: &Overrides) -> Result<SystemConfig, CliError> {
    let (label, mut cfg) = match source {
        ConfigSource::Preset(p) => (p.to_string(), load_preset(*p)),
        ConfigSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|source| CliError::Read { path: path.clone(), source })?;
            let label = path.display().to_string();
            let cfg = SystemConfig::from_json(&text)
                .map_err(|source| CliError::Config { path: label.clone(), source })?;
            (label, cfg)
        }
    };
    if let Some(r) = overrides.r {
        cfg = cfg.with_r(r).map_err(|source| CliError::Config { path: label.clone(), source })?;
    }
    if let Some(b) = overrides.burn_in {
        cfg = cfg.with_burn_in(b);
    }
    if let Some(s) = overrides.seed_state {
        let state = State4::from_array(s).map_err(|e| CliError::Usage(format!("--seed-state: {e}")))?;
        cfg = cfg.with_initial(state);
    }
    Ok(cfg)
}

/// Parses `LO:HI:STEPS`.
pub fn parse_r_range(s: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || CliError::Usage(format!("--r-range `{s}` is not LO:HI:STEPS"));
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else { return Err(bad()) };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let steps: usize = steps.trim().parse().map_err(|_| bad())?;
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) || steps == 0 {
        return Err(CliError::Usage(format!("--r-range `{s}` needs LO < HI and STEPS >= 1")));
    }
    Ok((lo, hi, steps))
}

/// Parses a comma-separated list of reals; an empty list is an error.
pub fn parse_real_list(flag: &str, s: &str) -> Result<Vec<f64>, CliError> {
    let values = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| CliError::Usage(format!("{flag}: `{t}` is not a number"))))
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(CliError::Usage(format!("{flag}: empty list")));
    }
    Ok(values)
}

pub fn parse_seed_state(s: &str) -> Result<[f64; 4], CliError> {
    let v = parse_real_list("--seed-state", s)?;
    <[f64; 4]>::try_from(v.as_slice())
        .map_err(|_| CliError::Usage(format!("--seed-state needs 4 values, got {}", v.len())))
}
