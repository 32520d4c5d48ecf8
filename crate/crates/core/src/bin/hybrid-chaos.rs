use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hybrid_chaos::analysis::{r_grid, DEFAULT_BINS, DEFAULT_DELTA, DEFAULT_TOL};
use hybrid_chaos::io::{
    self, load_config, parse_r_range, parse_real_list, parse_seed_state, CliError, ConfigSource, Overrides,
    ReproScale, RunSummary, Task,
};
use hybrid_chaos::{Coord, Preset};

#[derive(Parser, Debug)]
#[command(
    name = "hybrid-chaos",
    version,
    about = "4D hybrid chaotic system: trajectories and diagnostics as CSV"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// JSON system config
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Shipped parameter set: case_i or case_ii
    #[arg(long, global = true, value_name = "NAME")]
    preset: Option<Preset>,
    /// Control parameter (lyapunov: comma-separated list)
    #[arg(long = "r", global = true, value_name = "R")]
    r: Option<String>,
    /// Sweep LO:HI:STEPS over the half-open interval (LO, HI]
    #[arg(long, global = true, value_name = "LO:HI:STEPS")]
    r_range: Option<String>,
    /// Number of post-burn-in iterations or samples
    #[arg(long, global = true, value_name = "COUNT")]
    n: Option<usize>,
    #[arg(long, global = true, value_name = "COUNT")]
    burn_in: Option<usize>,
    /// Initial state x,y,z,w
    #[arg(long, global = true, value_name = "X,Y,Z,W")]
    seed_state: Option<String>,
    /// Output file (output directory for repro)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "x")]
    coord: Coord,
    #[arg(long, global = true, default_value_t = DEFAULT_BINS)]
    bins: usize,
    /// Half-width of the dead band around zero for classification
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Worker threads for parameter sweeps (default: all cores)
    #[arg(long, global = true, value_name = "COUNT")]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Trajectory CSV: i,x,y,z,w
    Generate,
    /// Lyapunov spectrum per r: r,lambda1..lambda4,class
    Lyapunov {
        /// Finite-difference step for the Jacobian
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
    },
    /// Bifurcation diagram points: r,value
    Bifurcation {
        /// Values kept per r after burn-in
        #[arg(long, default_value_t = 200)]
        keep: usize,
    },
    /// Cobweb staircase of one coordinate: u,v
    Cobweb,
    /// Histogram of one coordinate: bin_lo,bin_hi,count
    Histogram,
    /// Pairs of two coordinates
    Scatter {
        #[arg(long, default_value = "x")]
        a: Coord,
        #[arg(long, default_value = "y")]
        b: Coord,
    },
    /// Regenerate all figure data from the shipped presets
    Repro {
        /// Smaller sample sizes
        #[arg(long)]
        quick: bool,
    },
    /// Re-run a manifest written next to an earlier output
    Replay { manifest: PathBuf },
}

fn single_r(cli: &Cli) -> Result<Option<f64>, CliError> {
    match &cli.r {
        None => Ok(None),
        Some(s) => match parse_real_list("--r", s)?.as_slice() {
            [r] => Ok(Some(*r)),
            _ => Err(CliError::Usage("--r takes a single value here".into())),
        },
    }
}

fn run(cli: Cli) -> Result<RunSummary, CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    }

    match &cli.cmd {
        Cmd::Repro { quick } => {
            let dir = cli.out.clone().unwrap_or_else(|| {
                PathBuf::from(format!("repro-{}", chrono::Local::now().format("%Y-%m-%d")))
            });
            let scale = if *quick { ReproScale::Quick } else { ReproScale::Full };
            let mut all = RunSummary::default();
            for (name, s) in io::repro(&dir, scale)? {
                all.notes.extend(s.notes.into_iter().map(|n| format!("{name}: {n}")));
                all.rows += s.rows;
                all.outputs.extend(s.outputs);
            }
            return Ok(all);
        }
        Cmd::Replay { manifest } => return io::replay(manifest, cli.out.as_deref()),
        _ => {}
    }

    let source = match (&cli.config, cli.preset) {
        (Some(p), _) => ConfigSource::File(p.clone()),
        (None, Some(p)) => ConfigSource::Preset(p),
        (None, None) => return Err(CliError::Usage("one of --config or --preset is required".into())),
    };
    let is_lyapunov = matches!(cli.cmd, Cmd::Lyapunov { .. });
    let overrides = Overrides {
        r: if is_lyapunov { None } else { single_r(&cli)? },
        burn_in: cli.burn_in,
        seed_state: cli.seed_state.as_deref().map(parse_seed_state).transpose()?,
    };
    let cfg = load_config(&source, &overrides)?;

    let n = |default: usize| cli.n.unwrap_or(default);
    let task = match &cli.cmd {
        Cmd::Generate => Task::Generate { n: n(10_000) },
        Cmd::Lyapunov { delta } => {
            let rs = match (&cli.r, &cli.r_range) {
                (Some(_), Some(_)) => return Err(CliError::Usage("give --r or --r-range, not both".into())),
                (Some(list), None) => parse_real_list("--r", list)?,
                (None, Some(range)) => {
                    let (lo, hi, steps) = parse_r_range(range)?;
                    r_grid(lo, hi, steps)
                }
                (None, None) => vec![cfg.r()],
            };
            Task::Lyapunov { rs, n: n(20_000), tol: cli.tol, delta: *delta }
        }
        Cmd::Bifurcation { keep } => {
            let (r_lo, r_hi, steps) = parse_r_range(cli.r_range.as_deref().unwrap_or("0:1.2:600"))?;
            Task::Bifurcation { r_lo, r_hi, steps, keep: *keep, coord: cli.coord }
        }
        Cmd::Cobweb => Task::Cobweb { n: n(500), coord: cli.coord },
        Cmd::Histogram => Task::Histogram { n: n(100_000), coord: cli.coord, bins: cli.bins },
        Cmd::Scatter { a, b } => Task::Scatter { n: n(10_000), a: *a, b: *b },
        Cmd::Repro { .. } | Cmd::Replay { .. } => unreachable!("handled above"),
    };
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from(format!("{}.csv", task.name())));
    io::execute(&task, &cfg, &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(summary) => {
            for note in &summary.notes {
                eprintln!("{note}");
            }
            for p in &summary.outputs {
                eprintln!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
