//! Diagnostics for the hybrid system: Lyapunov spectrum and classification,
//! bifurcation scans, cobweb staircases, histograms with a chi-square
//! uniformity statistic, and coordinate-pair scatters.

mod bifurcation;
mod lyapunov;
mod stats;

use thiserror::Error;

use crate::hybrid::NonFiniteState;

pub use bifurcation::{bifurcation_scan, distinct_at_resolution, r_grid, BifurcationData, SkippedR};
pub use lyapunov::{
    classify, jacobian, lyapunov_spectrum, lyapunov_sweep, unwrap_diff, Classification, LyapunovEstimator,
    LyapunovResult, Matrix4, TangentFrame, DEFAULT_DELTA, DEFAULT_TOL,
};
pub use stats::{
    chi_square_uniformity, cobweb, cobweb_from_sequence, histogram, occupied_fraction, pearson_statistic,
    scatter_pairs, ChiSquare, CobwebData, Histogram, DEFAULT_BINS,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    NonFinite(#[from] NonFiniteState),
    #[error("jacobian degenerate on {degenerate} of {steps} steps")]
    DegenerateJacobian { degenerate: usize, steps: usize },
    #[error("too few samples: {total} < {required} (5 per bin)")]
    TooFewSamples { total: u64, required: u64 },
    #[error("every r value failed; first failure at r = {r}: {error}")]
    AllFailed { r: f64, error: NonFiniteState },
}

impl AnalysisError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        AnalysisError::InvalidArgument(msg.into())
    }
}
