//! A 4D hybrid chaotic system built from Tent, Sin and Logistic maps, with
//! its function slots written in a small expression language, plus the
//! usual diagnostics for iterated maps.
//!
//! ```no_run
//! use hybrid_chaos::analysis::{classify, lyapunov_spectrum, DEFAULT_DELTA, DEFAULT_TOL};
//! use hybrid_chaos::hybrid::{generate, load_preset, Preset};
//!
//! let cfg = load_preset(Preset::CaseI);
//! let traj = generate(&cfg, 1_000).unwrap();
//! println!("last state: {}", traj.states.last().unwrap());
//!
//! let spectrum = lyapunov_spectrum(&cfg, 20_000, DEFAULT_DELTA).unwrap();
//! println!("{:?} -> {}", spectrum.lambdas, classify(&spectrum, DEFAULT_TOL));
//! ```
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod analysis;
pub mod expr;
pub mod hybrid;
pub mod io;
pub mod maps;

pub use analysis::{AnalysisError, Classification, LyapunovResult};
pub use expr::{parse, EvalEnv, Expr, SyntaxError};
pub use hybrid::{
    generate, load_preset, step, Coord, CouplingMode, NonFiniteState, Preset, State4, SystemConfig,
    Trajectory,
};
pub use maps::{mod1, BaseMap, UnitValue};
