use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{Coord, State4};
use crate::expr::{parse, Expr, SyntaxError, Var, VarSet};
use crate::maps::BaseMap;

/// Upper end of the admissible control-parameter range `(0, R_MAX]`.
pub const R_MAX: f64 = 1.2;
pub const DEFAULT_INITIAL: [f64; 4] = [0.1, 0.2, 0.3, 0.4];
pub const DEFAULT_BURN_IN: usize = 1000;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid config document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{key}: {error} in `{source_text}`")]
    Expression { key: String, source_text: String, error: SyntaxError },
    #[error("{key}: `{source_text}` references `{var}`, which is not available in this slot")]
    Variable { key: String, source_text: String, var: Var },
    #[error("{key}: {message}")]
    Invalid { key: String, message: String },
}

impl ConfigError {
    fn invalid(key: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Invalid { key: key.into(), message: message.into() }
    }
}

/// How the branch variables of the y, z and w parts are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingMode {
    /// Branch on the current-step values `x_i, y_i, z_i`.
    Current,
    /// Branch on the values `x_{i+1}, y_{i+1}, z_{i+1}` computed earlier in
    /// the same step.
    Next,
}

/// On-disk form of one combination part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartFile {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub base: [BaseMap; 2],
    pub f: [String; 2],
    pub g: [String; 2],
    pub h: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartsFile {
    pub x: PartFile,
    pub y: PartFile,
    pub z: PartFile,
    pub w: PartFile,
}

impl PartsFile {
    fn get(&self, c: Coord) -> &PartFile {
        match c {
            Coord::X => &self.x,
            Coord::Y => &self.y,
            Coord::Z => &self.z,
            Coord::W => &self.w,
        }
    }
}

fn default_initial() -> [f64; 4] {
    DEFAULT_INITIAL
}

fn default_burn_in() -> usize {
    DEFAULT_BURN_IN
}

/// The JSON config document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub r: f64,
    #[serde(default = "default_initial")]
    pub initial: [f64; 4],
    #[serde(default = "default_burn_in")]
    pub burn_in: usize,
    pub coupling: CouplingMode,
    pub parts: PartsFile,
}

/// A parsed expression together with the text it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Slot {
    source: String,
    expr: Expr,
}

impl Slot {
    pub fn parse(source: &str) -> Result<Self, SyntaxError> {
        Ok(Slot { source: source.to_owned(), expr: parse(source)? })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }
}

/// Parameters of one combination part. Index 0 holds the first-branch
/// (`ζ = 1`) entry of each pair, index 1 the second.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinationPartSpec {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub base: [BaseMap; 2],
    pub f: [Slot; 2],
    pub g: [Slot; 2],
    pub h: [Slot; 2],
}

/// Variables the `g` slots of a part may read: the current state plus the
/// next-step values already computed before this part runs.
pub(crate) fn g_variables(c: Coord) -> VarSet {
    let mut set = VarSet::of(&[Var::R]);
    for earlier in Coord::ALL {
        set.insert(earlier.current_var());
        if earlier < c {
            set.insert(earlier.next_var());
        }
    }
    set
}

fn unary_variables() -> VarSet {
    VarSet::of(&[Var::P])
}

impl CombinationPartSpec {
    fn from_file(coord: Coord, file: &PartFile) -> Result<Self, ConfigError> {
        let key = format!("parts.{coord}");
        for (name, pair) in [("alpha", file.alpha), ("beta", file.beta)] {
            for (k, v) in pair.iter().enumerate() {
                if !v.is_finite() {
                    return Err(ConfigError::invalid(format!("{key}.{name}[{k}]"), "must be finite"));
                }
            }
        }
        let slots = |name: &str, srcs: &[String; 2], allowed: VarSet| -> Result<[Slot; 2], ConfigError> {
            let one = |k: usize| -> Result<Slot, ConfigError> {
                let slot_key = format!("{key}.{name}[{k}]");
                let slot = Slot::parse(&srcs[k]).map_err(|error| ConfigError::Expression {
                    key: slot_key.clone(),
                    source_text: srcs[k].clone(),
                    error,
                })?;
                if let Some(var) = slot.expr.variables().iter().find(|v| !allowed.contains(*v)) {
                    return Err(ConfigError::Variable { key: slot_key, source_text: srcs[k].clone(), var });
                }
                Ok(slot)
            };
            Ok([one(0)?, one(1)?])
        };
        Ok(CombinationPartSpec {
            alpha: file.alpha,
            beta: file.beta,
            base: file.base,
            f: slots("f", &file.f, unary_variables())?,
            g: slots("g", &file.g, g_variables(coord))?,
            h: slots("h", &file.h, unary_variables())?,
        })
    }

    fn to_file(&self) -> PartFile {
        let src = |s: &[Slot; 2]| [s[0].source.clone(), s[1].source.clone()];
        PartFile {
            alpha: self.alpha,
            beta: self.beta,
            base: self.base,
            f: src(&self.f),
            g: src(&self.g),
            h: src(&self.h),
        }
    }
}

/// A validated hybrid-system description.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    r: f64,
    parts: [CombinationPartSpec; 4],
    coupling: CouplingMode,
    initial: State4,
    burn_in: usize,
}

fn check_r(r: f64) -> Result<f64, ConfigError> {
    if r.is_finite() && r > 0.0 && r <= R_MAX {
        Ok(r)
    } else {
        Err(ConfigError::invalid("r", format!("{r} is outside (0, {R_MAX}]")))
    }
}

impl SystemConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let file: ConfigFile = serde_json::from_str(text)?;
        Self::try_from(file)
    }

    pub fn to_file(&self) -> ConfigFile {
        let [x, y, z, w] = self.parts.clone().map(|p| p.to_file());
        ConfigFile {
            r: self.r,
            initial: self.initial.to_array(),
            burn_in: self.burn_in,
            coupling: self.coupling,
            parts: PartsFile { x, y, z, w },
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("config serializes")
    }

    /// Hex SHA-256 of the compact JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(&self.to_file()).expect("config serializes");
        hex::encode(Sha256::digest(&json))
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn coupling(&self) -> CouplingMode {
        self.coupling
    }

    pub fn initial(&self) -> &State4 {
        &self.initial
    }

    pub fn burn_in(&self) -> usize {
        self.burn_in
    }

    pub fn part(&self, c: Coord) -> &CombinationPartSpec {
        &self.parts[c.index()]
    }

    pub fn with_r(mut self, r: f64) -> Result<Self, ConfigError> {
        self.r = check_r(r)?;
        Ok(self)
    }

    pub fn with_initial(mut self, initial: State4) -> Self {
        self.initial = initial;
        self
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }
}

impl TryFrom<ConfigFile> for SystemConfig {
    type Error = ConfigError;

    fn try_from(file: ConfigFile) -> Result<Self, ConfigError> {
        let r = check_r(file.r)?;
        let initial =
            State4::from_array(file.initial).map_err(|e| ConfigError::invalid("initial", e.to_string()))?;
        let parts = [
            CombinationPartSpec::from_file(Coord::X, file.parts.get(Coord::X))?,
            CombinationPartSpec::from_file(Coord::Y, file.parts.get(Coord::Y))?,
            CombinationPartSpec::from_file(Coord::Z, file.parts.get(Coord::Z))?,
            CombinationPartSpec::from_file(Coord::W, file.parts.get(Coord::W))?,
        ];
        Ok(SystemConfig { r, parts, coupling: file.coupling, initial, burn_in: file.burn_in })
    }
}
