//! Base one-dimensional maps and mod-1 reduction.
//!
//! All three maps are in the normalized form that peaks at exactly `r` on
//! `[0, 1]` and is fully chaotic at `r = 1`:
//!
//! | map      | formula                      |
//! |----------|------------------------------|
//! | Tent     | `2r·x` for `x < 0.5`, else `2r·(1 − x)` |
//! | Sin      | `r·sin(πx)`                  |
//! | Logistic | `4r·x·(1 − x)`               |

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MapError {
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("value {0} is outside [0, 1)")]
    OutOfRange(f64),
}

/// A finite real in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
#[serde(transparent)]
pub struct UnitValue(f64);

impl UnitValue {
    pub const ZERO: UnitValue = UnitValue(0.0);

    pub fn new(value: f64) -> Result<Self, MapError> {
        if !value.is_finite() {
            return Err(MapError::NonFinite(value));
        }
        if !(0.0..1.0).contains(&value) {
            return Err(MapError::OutOfRange(value));
        }
        Ok(UnitValue(value))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<UnitValue> for f64 {
    fn from(u: UnitValue) -> f64 {
        u.0
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Reduces `v` modulo 1 with floor semantics, so negative inputs wrap into
/// `[0, 1)` rather than keeping their sign.
pub fn mod1(v: f64) -> Result<UnitValue, MapError> {
    if !v.is_finite() {
        return Err(MapError::NonFinite(v));
    }
    let frac = v - v.floor();
    // A tiny negative v rounds 1 - |v| up to exactly 1.0; 0 is the nearer
    // representative on the circle.
    Ok(UnitValue(if frac >= 1.0 { 0.0 } else { frac }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseMap {
    Tent,
    Sin,
    Logistic,
}

impl BaseMap {
    pub const ALL: [BaseMap; 3] = [BaseMap::Tent, BaseMap::Sin, BaseMap::Logistic];

    /// Evaluates the map at `x ∈ [0, 1]` with control parameter `r`.
    #[inline]
    pub fn eval(self, r: f64, x: f64) -> f64 {
        match self {
            BaseMap::Tent => {
                if x < 0.5 {
                    2.0 * r * x
                } else {
                    2.0 * r * (1.0 - x)
                }
            }
            BaseMap::Sin => r * (PI * x).sin(),
            BaseMap::Logistic => 4.0 * r * x * (1.0 - x),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseMap::Tent => "tent",
            BaseMap::Sin => "sin",
            BaseMap::Logistic => "logistic",
        }
    }
}

impl fmt::Display for BaseMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaseMap {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tent" => Ok(BaseMap::Tent),
            "sin" => Ok(BaseMap::Sin),
            "logistic" => Ok(BaseMap::Logistic),
            other => Err(format!("unknown base map `{other}` (expected tent, sin or logistic)")),
        }
    }
}

/// Free-function form of [`BaseMap::eval`].
pub fn eval_base_map(map: BaseMap, r: f64, x: f64) -> f64 {
    map.eval(r, x)
}
