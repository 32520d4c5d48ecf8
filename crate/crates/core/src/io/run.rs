use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::csv::*;
use super::CliError;
use crate::analysis::{
    bifurcation_scan, chi_square_uniformity, classify, cobweb, histogram, lyapunov_sweep, r_grid,
    scatter_pairs, AnalysisError, DEFAULT_BINS, DEFAULT_DELTA, DEFAULT_TOL,
};
use crate::hybrid::{generate, load_preset, ConfigFile, Coord, Preset, SystemConfig, R_MAX};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One unit of work with all of its parameters resolved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Task {
    Generate { n: usize },
    Lyapunov { rs: Vec<f64>, n: usize, tol: f64, delta: f64 },
    Bifurcation { r_lo: f64, r_hi: f64, steps: usize, keep: usize, coord: Coord },
    Cobweb { n: usize, coord: Coord },
    Histogram { n: usize, coord: Coord, bins: usize },
    Scatter { n: usize, a: Coord, b: Coord },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Generate { .. } => "generate",
            Task::Lyapunov { .. } => "lyapunov",
            Task::Bifurcation { .. } => "bifurcation",
            Task::Cobweb { .. } => "cobweb",
            Task::Histogram { .. } => "histogram",
            Task::Scatter { .. } => "scatter",
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        match self {
            Task::Generate { n }
            | Task::Cobweb { n, .. }
            | Task::Histogram { n, .. }
            | Task::Scatter { n, .. }
                if *n == 0 =>
            {
                usage(format!("{}: --n must be at least 1", self.name()))
            }
            Task::Lyapunov { rs, .. } if rs.is_empty() => usage("lyapunov: empty r list".into()),
            Task::Lyapunov { rs, .. } if rs.iter().any(|r| !(*r > 0.0 && *r <= R_MAX)) => {
                usage(format!("lyapunov: every r must lie in (0, {R_MAX}]"))
            }
            Task::Lyapunov { n, .. } if *n < 100 => usage("lyapunov: --n must be at least 100".into()),
            Task::Lyapunov { tol, .. } if tol.is_nan() || *tol <= 0.0 => {
                usage("lyapunov: --tol must be positive".into())
            }
            Task::Bifurcation { r_lo, r_hi, .. } if !(*r_lo >= 0.0 && r_lo < r_hi && *r_hi <= R_MAX) => {
                usage(format!("bifurcation: need 0 <= r_lo < r_hi <= {R_MAX}, got {r_lo}:{r_hi}"))
            }
            Task::Histogram { bins, .. } if *bins < 2 => usage("histogram: --bins must be at least 2".into()),
            Task::Scatter { a, b, .. } if a == b => {
                usage(format!("scatter: the two coordinates must differ (both are {a})"))
            }
            _ => Ok(()),
        }
    }
}

/// Written as `<stem>.manifest.json` next to every output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub task: Task,
    pub config: ConfigFile,
    /// File names, relative to the manifest's directory.
    pub outputs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunSummary {
    pub outputs: Vec<PathBuf>,
    pub rows: usize,
    /// Human-readable remarks for stderr (statistics, skipped points).
    pub notes: Vec<String>,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    out.with_extension("manifest.json")
}

pub fn sidecar_path(out: &Path, tag: &str) -> PathBuf {
    out.with_extension(format!("{tag}.csv"))
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::write(dir, e))?;
    }
    fs::write(path, bytes).map_err(|e| CliError::write(path, e))
}

fn render(f: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Vec<u8> {
    let mut buf = Vec::new();
    f(&mut buf).expect("writing to a Vec cannot fail");
    buf
}

/// Runs `task` on `cfg`, writing the CSV to `out` plus any sidecars and the
/// manifest.
pub fn execute(task: &Task, cfg: &SystemConfig, out: &Path) -> Result<RunSummary, CliError> {
    task.validate()?;
    let mut summary = RunSummary::default();
    let mut extra: Vec<(PathBuf, Vec<u8>)> = Vec::new();

    let csv = match task {
        Task::Generate { n } => {
            let traj = generate(cfg, *n)?;
            summary.rows = traj.len();
            render(|w| write_trajectory(w, &traj))
        }
        Task::Lyapunov { rs, n, tol, delta } => {
            let mut rows = Vec::new();
            let mut skips = Vec::new();
            let mut first_err = None;
            for (r, res) in lyapunov_sweep(cfg, rs, *n, *delta) {
                match res {
                    Ok(res) => rows.push((res, classify(&res, *tol).name())),
                    Err(e) => {
                        skips.push((r, e.to_string()));
                        first_err.get_or_insert(e);
                    }
                }
            }
            if rows.is_empty() {
                return Err(first_err.expect("non-empty r list").into());
            }
            if !skips.is_empty() {
                summary.notes.push(format!("{} of {} r values failed", skips.len(), rs.len()));
            }
            summary.rows = rows.len();
            let skip_path = sidecar_path(out, "skipped");
            extra.push((skip_path, render(|w| write_lyapunov_skips(w, &skips))));
            render(|w| write_lyapunov(w, &rows))
        }
        Task::Bifurcation { r_lo, r_hi, steps, keep, coord } => {
            let data = bifurcation_scan(cfg, *r_lo, *r_hi, *steps, *keep, *coord)?;
            if !data.skipped.is_empty() {
                summary.notes.push(format!("{} of {steps} r values skipped", data.skipped.len()));
            }
            summary.rows = data.points.len();
            let skip_path = sidecar_path(out, "skipped");
            extra.push((skip_path, render(|w| write_bifurcation_skips(w, &data.skipped))));
            render(|w| write_bifurcation(w, &data))
        }
        Task::Cobweb { n, coord } => {
            let data = cobweb(cfg, *coord, *n)?;
            summary.rows = data.points.len();
            render(|w| write_cobweb(w, &data))
        }
        Task::Histogram { n, coord, bins } => {
            let traj = generate(cfg, *n)?;
            let h = histogram(&traj.coord(*coord), *bins)?;
            match chi_square_uniformity(&h) {
                Ok(chi) => summary.notes.push(format!(
                    "chi-square uniformity of {coord}: {:.4} with {} degrees of freedom",
                    chi.statistic, chi.dof
                )),
                Err(AnalysisError::TooFewSamples { total, required }) => {
                    summary.notes.push(format!("chi-square skipped: {total} samples, need {required}"))
                }
                Err(e) => return Err(e.into()),
            }
            summary.rows = h.bin_count();
            render(|w| write_histogram(w, &h))
        }
        Task::Scatter { n, a, b } => {
            let traj = generate(cfg, *n)?;
            let pairs = scatter_pairs(&traj, *a, *b)?;
            summary.rows = pairs.len();
            render(|w| write_scatter(w, *a, *b, &pairs))
        }
    };

    write_file(out, &csv)?;
    summary.outputs.push(out.to_owned());
    for (path, bytes) in extra {
        write_file(&path, &bytes)?;
        summary.outputs.push(path);
    }

    let manifest = RunManifest {
        tool: TOOL.into(),
        version: VERSION.into(),
        task: task.clone(),
        config: cfg.to_file(),
        outputs: summary.outputs.iter().map(|p| file_name(p)).collect(),
    };
    let mpath = manifest_path(out);
    let mut json = serde_json::to_vec_pretty(&manifest).expect("manifest serializes");
    json.write_all(b"\n").expect("Vec write");
    write_file(&mpath, &json)?;
    summary.outputs.push(mpath);
    Ok(summary)
}

pub fn read_manifest(path: &Path) -> Result<RunManifest, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config { path: path.display().to_string(), source: e.into() })
}

/// Re-runs a manifest. Output goes to `out` if given, otherwise to the
/// primary output recorded in the manifest.
pub fn replay(manifest: &Path, out: Option<&Path>) -> Result<RunSummary, CliError> {
    let m = read_manifest(manifest)?;
    let cfg = SystemConfig::try_from(m.config)
        .map_err(|source| CliError::Config { path: manifest.display().to_string(), source })?;
    let target = match out {
        Some(p) => p.to_owned(),
        None => {
            let name =
                m.outputs.first().ok_or_else(|| CliError::Usage("manifest lists no outputs".into()))?;
            manifest.parent().unwrap_or(Path::new(".")).join(name)
        }
    };
    execute(&m.task, &cfg, &target)
}

/// Sample sizes for [`repro`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReproScale {
    Full,
    /// Reduced sizes for smoke runs.
    Quick,
}

/// Regenerates the figure data from the shipped presets into `dir`.
pub fn repro(dir: &Path, scale: ReproScale) -> Result<Vec<(String, RunSummary)>, CliError> {
    let quick = scale == ReproScale::Quick;
    let pick = |full: usize, small: usize| if quick { small } else { full };
    let case_i = load_preset(Preset::CaseI);
    let case_ii = load_preset(Preset::CaseII);
    let at = |cfg: &SystemConfig, r: f64| cfg.clone().with_r(r).expect("fixed r within range");

    let mut jobs: Vec<(String, Task, SystemConfig)> = vec![
        (
            "fig3a_lyapunov.csv".into(),
            Task::Lyapunov {
                rs: r_grid(0.0, R_MAX, pick(50, 8)),
                n: pick(20_000, 2_000),
                tol: DEFAULT_TOL,
                delta: DEFAULT_DELTA,
            },
            case_i.clone(),
        ),
        (
            "fig4_bifurcation.csv".into(),
            Task::Bifurcation {
                r_lo: 0.0,
                r_hi: R_MAX,
                steps: pick(600, 60),
                keep: pick(200, 50),
                coord: Coord::X,
            },
            case_ii.clone(),
        ),
        ("fig5_cobweb.csv".into(), Task::Cobweb { n: 500, coord: Coord::X }, at(&case_i, 0.5)),
    ];
    for c in Coord::ALL {
        jobs.push((
            format!("fig6_histogram_{c}.csv"),
            Task::Histogram { n: pick(100_000, 10_000), coord: c, bins: DEFAULT_BINS },
            at(&case_i, 0.5),
        ));
    }
    for (a, b) in [(Coord::X, Coord::Y), (Coord::Z, Coord::W)] {
        jobs.push((
            format!("fig7_scatter_{a}{b}.csv"),
            Task::Scatter { n: pick(10_000, 2_000), a, b },
            at(&case_ii, 0.4),
        ));
    }

    jobs.into_iter()
        .map(|(name, task, cfg)| {
            let summary = execute(&task, &cfg, &dir.join(&name))?;
            Ok((name, summary))
        })
        .collect()
}
