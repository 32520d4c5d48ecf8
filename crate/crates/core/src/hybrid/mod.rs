//! The 4D hybrid system: four piecewise combination parts applied in the
//! order x → y → z → w, each reduced modulo 1.
//!
//! Part `τ` with branch variable `ξ` computes
//!
//! ```text
//! τ' = mod1( α_b · f_b(F_b(r, τ)) + g_b(env) + h_b((β_b − r) · q / 2) )
//! ```
//!
//! where `b = 1, q = ξ` if `ξ < 0.5` and `b = 2, q = 1 − ξ` otherwise. The
//! x part always branches on the current `z`; the y, z and w parts branch
//! on `x`, `y` and `z` respectively, taken from the current state or from
//! the values already computed in this step depending on [`CouplingMode`].

mod config;
mod presets;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{EvalEnv, Expr, Var};
use crate::maps::{mod1, MapError, UnitValue};

pub use config::{
    CombinationPartSpec, ConfigError, ConfigFile, CouplingMode, PartFile, PartsFile, Slot, SystemConfig,
    DEFAULT_BURN_IN, DEFAULT_INITIAL, R_MAX,
};
pub use presets::{load_preset, Preset};

/// One of the four state coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coord {
    X,
    Y,
    Z,
    W,
}

impl Coord {
    pub const ALL: [Coord; 4] = [Coord::X, Coord::Y, Coord::Z, Coord::W];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Coord::X => "x",
            Coord::Y => "y",
            Coord::Z => "z",
            Coord::W => "w",
        }
    }

    fn current_var(self) -> Var {
        match self {
            Coord::X => Var::X,
            Coord::Y => Var::Y,
            Coord::Z => Var::Z,
            Coord::W => Var::W,
        }
    }

    fn next_var(self) -> Var {
        match self {
            Coord::X => Var::Xn,
            Coord::Y => Var::Yn,
            Coord::Z => Var::Zn,
            Coord::W => Var::Wn,
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Coord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "x" => Ok(Coord::X),
            "y" => Ok(Coord::Y),
            "z" => Ok(Coord::Z),
            "w" => Ok(Coord::W),
            other => Err(format!("unknown coordinate `{other}` (expected x, y, z or w)")),
        }
    }
}

/// A point `(x, y, z, w)` of `[0, 1)⁴`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
#[serde(into = "[f64; 4]")]
pub struct State4([UnitValue; 4]);

impl State4 {
    pub fn new(x: f64, y: f64, z: f64, w: f64) -> Result<Self, MapError> {
        Self::from_array([x, y, z, w])
    }

    pub fn from_array(v: [f64; 4]) -> Result<Self, MapError> {
        Ok(State4([
            UnitValue::new(v[0])?,
            UnitValue::new(v[1])?,
            UnitValue::new(v[2])?,
            UnitValue::new(v[3])?,
        ]))
    }

    pub fn from_units(v: [UnitValue; 4]) -> Self {
        State4(v)
    }

    #[inline]
    pub fn get(&self, c: Coord) -> f64 {
        self.0[c.index()].get()
    }

    pub fn x(&self) -> f64 {
        self.0[0].get()
    }

    pub fn y(&self) -> f64 {
        self.0[1].get()
    }

    pub fn z(&self) -> f64 {
        self.0[2].get()
    }

    pub fn w(&self) -> f64 {
        self.0[3].get()
    }

    #[inline]
    pub fn to_array(&self) -> [f64; 4] {
        self.0.map(UnitValue::get)
    }

    /// Largest coordinate-wise absolute difference.
    pub fn max_abs_diff(&self, other: &State4) -> f64 {
        (0..4).map(|i| (self.0[i].get() - other.0[i].get()).abs()).fold(0.0, f64::max)
    }
}

impl From<State4> for [f64; 4] {
    fn from(s: State4) -> Self {
        s.to_array()
    }
}

impl fmt::Display for State4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z, w] = self.to_array();
        write!(f, "({x}, {y}, {z}, {w})")
    }
}

/// Which of the two piecewise branches a part took: `First` when the branch
/// variable is below 0.5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    First,
    Second,
}

impl Branch {
    /// 1 or 2, matching the subscript of the slot that was used.
    pub fn number(self) -> u8 {
        match self {
            Branch::First => 1,
            Branch::Second => 2,
        }
    }

    fn index(self) -> usize {
        self.number() as usize - 1
    }
}

/// A pre-mod-1 sum evaluated to NaN or ±infinity.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub struct NonFiniteState {
    pub coord: Coord,
    pub branch: Branch,
    pub value: f64,
    /// Zero-based step index counted from the initial state (burn-in
    /// included). `None` for a single [`step`] call.
    pub iteration: Option<usize>,
}

impl fmt::Display for NonFiniteState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "non-finite value {} in part {} branch {}", self.value, self.coord, self.branch.number())?;
        if let Some(i) = self.iteration {
            write!(f, " at iteration {i}")?;
        }
        Ok(())
    }
}

#[inline]
fn eval_slot(e: &Expr, env: &EvalEnv) -> f64 {
    // slot variable sets are checked when the config is built
    e.eval(env).unwrap_or(f64::NAN)
}

/// Advances raw coordinates one step. `s` must lie in `[0, 1]⁴`; the result
/// lies in `[0, 1)⁴`.
pub(crate) fn step_raw(cfg: &SystemConfig, s: [f64; 4]) -> Result<([f64; 4], [Branch; 4]), NonFiniteState> {
    let r = cfg.r();
    let mut env = EvalEnv::new()
        .with(Var::R, r)
        .with(Var::X, s[0])
        .with(Var::Y, s[1])
        .with(Var::Z, s[2])
        .with(Var::W, s[3]);
    let mut next = [0.0; 4];
    let mut branches = [Branch::First; 4];

    for coord in Coord::ALL {
        let i = coord.index();
        let xi = match coord {
            Coord::X => s[2],
            _ => {
                let driver = Coord::ALL[i - 1];
                match cfg.coupling() {
                    CouplingMode::Current => s[driver.index()],
                    CouplingMode::Next => next[driver.index()],
                }
            }
        };
        let (branch, q) = if xi < 0.5 { (Branch::First, xi) } else { (Branch::Second, 1.0 - xi) };
        let part = cfg.part(coord);
        let b = branch.index();

        let mapped = part.base[b].eval(r, s[i]);
        let f = eval_slot(part.f[b].expr(), &EvalEnv::unary(mapped));
        let g = eval_slot(part.g[b].expr(), &env);
        let h = eval_slot(part.h[b].expr(), &EvalEnv::unary((part.beta[b] - r) * q / 2.0));
        let sum = part.alpha[b] * f + g + h;

        let value =
            mod1(sum).map_err(|_| NonFiniteState { coord, branch, value: sum, iteration: None })?.get();
        next[i] = value;
        branches[i] = branch;
        env.set(coord.next_var(), value);
    }
    Ok((next, branches))
}

/// One full step of the system.
pub fn step(cfg: &SystemConfig, s: &State4) -> Result<State4, NonFiniteState> {
    step_with_branches(cfg, s).map(|(s, _)| s)
}

/// Like [`step`], also reporting the branch each part took.
pub fn step_with_branches(cfg: &SystemConfig, s: &State4) -> Result<(State4, [Branch; 4]), NonFiniteState> {
    let (next, branches) = step_raw(cfg, s.to_array())?;
    // step_raw only produces mod1 outputs, which are valid unit values
    let units = next.map(|v| UnitValue::new(v).expect("mod1 output in [0, 1)"));
    Ok((State4(units), branches))
}

/// Iterates from `cfg.initial()`, yielding every state including burn-in.
/// Stops after the first error.
pub struct Orbit<'a> {
    cfg: &'a SystemConfig,
    state: State4,
    iteration: usize,
    failed: bool,
}

impl<'a> Orbit<'a> {
    pub fn new(cfg: &'a SystemConfig) -> Self {
        Self::from_state(cfg, *cfg.initial())
    }

    pub fn from_state(cfg: &'a SystemConfig, state: State4) -> Self {
        Orbit { cfg, state, iteration: 0, failed: false }
    }
}

impl Iterator for Orbit<'_> {
    type Item = Result<State4, NonFiniteState>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let i = self.iteration;
        self.iteration += 1;
        match step(self.cfg, &self.state) {
            Ok(s) => {
                self.state = s;
                Some(Ok(s))
            }
            Err(mut e) => {
                self.failed = true;
                e.iteration = Some(i);
                Some(Err(e))
            }
        }
    }
}

/// A run of post-burn-in states.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<State4>,
    pub r: f64,
    /// SHA-256 of the canonical JSON form of the generating config.
    pub config_hash: String,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn coord(&self, c: Coord) -> Vec<f64> {
        self.states.iter().map(|s| s.get(c)).collect()
    }
}

/// Iterates from the initial state, discards `cfg.burn_in()` states and
/// returns the next `n`.
pub fn generate(cfg: &SystemConfig, n: usize) -> Result<Trajectory, NonFiniteState> {
    let burn_in = cfg.burn_in();
    let mut states = Vec::with_capacity(n);
    for (i, s) in Orbit::new(cfg).take(burn_in + n).enumerate() {
        let s = s?;
        if i >= burn_in {
            states.push(s);
        }
    }
    Ok(Trajectory { states, r: cfg.r(), config_hash: cfg.hash() })
}
