use std::fmt;
use std::str::FromStr;

use super::SystemConfig;

const CASE_I: &str = include_str!("../../presets/case_i.json");
const CASE_II: &str = include_str!("../../presets/case_ii.json");

/// The two parameter sets shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Branches on current-step values; default `r = 0.5`.
    CaseI,
    /// Branches on next-step values; default `r = 0.4`.
    CaseII,
}

impl Preset {
    pub const ALL: [Preset; 2] = [Preset::CaseI, Preset::CaseII];

    /// The JSON document the preset is loaded from.
    pub fn source(self) -> &'static str {
        match self {
            Preset::CaseI => CASE_I,
            Preset::CaseII => CASE_II,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::CaseI => "case_i",
            Preset::CaseII => "case_ii",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "case_i" | "i" | "1" => Ok(Preset::CaseI),
            "case_ii" | "ii" | "2" => Ok(Preset::CaseII),
            _ => Err(format!("unknown preset `{s}` (expected case_i or case_ii)")),
        }
    }
}

pub fn load_preset(preset: Preset) -> SystemConfig {
    SystemConfig::from_json(preset.source())
        .unwrap_or_else(|e| panic!("shipped preset {preset} is invalid: {e}"))
}
