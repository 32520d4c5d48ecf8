use std::collections::HashSet;

use rayon::prelude::*;

use super::AnalysisError;
use crate::hybrid::{generate, Coord, NonFiniteState, SystemConfig, R_MAX};

/// An `r` value whose orbit hit a non-finite intermediate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkippedR {
    pub r: f64,
    pub error: NonFiniteState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationData {
    pub coord: Coord,
    /// `(r, value)` pairs, grouped by ascending `r`.
    pub points: Vec<(f64, f64)>,
    pub skipped: Vec<SkippedR>,
}

impl BifurcationData {
    /// The values recorded at each successful `r`, in grid order.
    pub fn columns(&self) -> Vec<(f64, Vec<f64>)> {
        let mut out: Vec<(f64, Vec<f64>)> = Vec::new();
        for &(r, v) in &self.points {
            match out.last_mut() {
                Some((last, vals)) if *last == r => vals.push(v),
                _ => out.push((r, vec![v])),
            }
        }
        out
    }
}

/// `steps` points spread uniformly over the half-open interval
/// `(r_lo, r_hi]`: `r_k = r_lo + (k + 1)(r_hi − r_lo)/steps`.
pub fn r_grid(r_lo: f64, r_hi: f64, steps: usize) -> Vec<f64> {
    let width = r_hi - r_lo;
    (0..steps)
        .map(|k| if k + 1 == steps { r_hi } else { r_lo + (k + 1) as f64 * width / steps as f64 })
        .collect()
}

/// Number of distinct values after bucketing at `resolution`.
pub fn distinct_at_resolution(values: &[f64], resolution: f64) -> usize {
    values.iter().map(|v| (v / resolution).floor() as i64).collect::<HashSet<_>>().len()
}

/// For each `r` of [`r_grid`], runs the burn-in of `cfg` and records the
/// next `keep` values of `coord`. Grid points whose orbit fails are listed
/// in [`BifurcationData::skipped`]; the scan only fails if all of them do.
pub fn bifurcation_scan(
    cfg: &SystemConfig,
    r_lo: f64,
    r_hi: f64,
    steps: usize,
    keep: usize,
    coord: Coord,
) -> Result<BifurcationData, AnalysisError> {
    if !(r_lo >= 0.0 && r_lo < r_hi && r_hi <= R_MAX) {
        return Err(AnalysisError::invalid(format!(
            "r range ({r_lo}, {r_hi}] must satisfy 0 <= r_lo < r_hi <= {R_MAX}"
        )));
    }
    if steps == 0 || keep == 0 {
        return Err(AnalysisError::invalid("steps and keep must be at least 1"));
    }

    let columns: Vec<(f64, Result<Vec<f64>, NonFiniteState>)> = r_grid(r_lo, r_hi, steps)
        .into_par_iter()
        .map(|r| {
            let cfg = cfg.clone().with_r(r).expect("grid lies inside (0, R_MAX]");
            (r, generate(&cfg, keep).map(|t| t.coord(coord)))
        })
        .collect();

    let mut points = Vec::with_capacity(steps * keep);
    let mut skipped = Vec::new();
    for (r, col) in columns {
        match col {
            Ok(values) => points.extend(values.into_iter().map(|v| (r, v))),
            Err(error) => skipped.push(SkippedR { r, error }),
        }
    }
    if points.is_empty() {
        let first = skipped[0];
        return Err(AnalysisError::AllFailed { r: first.r, error: first.error });
    }
    Ok(BifurcationData { coord, points, skipped })
}
