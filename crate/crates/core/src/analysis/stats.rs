use super::AnalysisError;
use crate::hybrid::{generate, Coord, SystemConfig, Trajectory};

pub const DEFAULT_BINS: usize = 100;

/// Counts over `bins` equal-width half-open bins `[k/bins, (k+1)/bins)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub counts: Vec<u64>,
    pub total: u64,
}

impl Histogram {
    pub fn bin_count(&self) -> usize {
        self.counts.len()
    }

    /// `[lo, hi)` of bin `k`.
    pub fn edges(&self, k: usize) -> (f64, f64) {
        let n = self.counts.len() as f64;
        (k as f64 / n, (k + 1) as f64 / n)
    }
}

pub fn histogram(values: &[f64], bins: usize) -> Result<Histogram, AnalysisError> {
    if bins < 2 {
        return Err(AnalysisError::invalid(format!("bins = {bins}, need at least 2")));
    }
    if values.is_empty() {
        return Err(AnalysisError::invalid("no values to bin"));
    }
    let mut counts = vec![0u64; bins];
    for &v in values {
        if !(0.0..1.0).contains(&v) {
            return Err(AnalysisError::invalid(format!("value {v} is outside [0, 1)")));
        }
        // v * bins can round up to bins for v just below 1
        let k = ((v * bins as f64) as usize).min(bins - 1);
        counts[k] += 1;
    }
    Ok(Histogram { counts, total: values.len() as u64 })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
}

/// Pearson's statistic `Σ (c − E)² / E` with `E = total / bins`, without
/// any sample-size check.
pub fn pearson_statistic(h: &Histogram) -> f64 {
    let expected = h.total as f64 / h.bin_count() as f64;
    h.counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

/// [`pearson_statistic`] with `bins − 1` degrees of freedom. Requires at
/// least five expected samples per bin.
pub fn chi_square_uniformity(h: &Histogram) -> Result<ChiSquare, AnalysisError> {
    let required = 5 * h.bin_count() as u64;
    if h.total < required {
        return Err(AnalysisError::TooFewSamples { total: h.total, required });
    }
    Ok(ChiSquare { statistic: pearson_statistic(h), dof: h.bin_count() - 1 })
}

/// Staircase polyline `(s0,s0) → (s0,s1) → (s1,s1) → (s1,s2) → …`.
#[derive(Debug, Clone, PartialEq)]
pub struct CobwebData {
    pub points: Vec<(f64, f64)>,
}

pub fn cobweb_from_sequence(seq: &[f64]) -> Result<CobwebData, AnalysisError> {
    let Some(&first) = seq.first() else {
        return Err(AnalysisError::invalid("cobweb needs at least one value"));
    };
    let mut points = Vec::with_capacity(2 * seq.len() - 1);
    points.push((first, first));
    for w in seq.windows(2) {
        points.push((w[0], w[1]));
        points.push((w[1], w[1]));
    }
    Ok(CobwebData { points })
}

/// Cobweb of `n` steps of `coord` after burn-in: `2n + 1` points.
pub fn cobweb(cfg: &SystemConfig, coord: Coord, n: usize) -> Result<CobwebData, AnalysisError> {
    if n == 0 {
        return Err(AnalysisError::invalid("cobweb needs n >= 1"));
    }
    let traj = generate(cfg, n + 1)?;
    cobweb_from_sequence(&traj.coord(coord))
}

pub fn scatter_pairs(traj: &Trajectory, a: Coord, b: Coord) -> Result<Vec<(f64, f64)>, AnalysisError> {
    if a == b {
        return Err(AnalysisError::invalid(format!(
            "scatter needs two different coordinates, got {a} twice"
        )));
    }
    Ok(traj.states.iter().map(|s| (s.get(a), s.get(b))).collect())
}

/// Fraction of the `grid × grid` cells of the unit square holding at least
/// one pair.
pub fn occupied_fraction(pairs: &[(f64, f64)], grid: usize) -> f64 {
    let mut seen = vec![false; grid * grid];
    let cell = |v: f64| ((v * grid as f64) as usize).min(grid - 1);
    for &(a, b) in pairs {
        seen[cell(a) * grid + cell(b)] = true;
    }
    seen.iter().filter(|s| **s).count() as f64 / (grid * grid) as f64
}
