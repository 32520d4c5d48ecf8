//! Lyapunov spectrum by tangent-frame re-orthonormalization.
//!
//! An orthonormal 4-frame is pushed through the numeric Jacobian of the
//! step map and re-orthonormalized by QR after every iteration; the
//! exponents are the time averages of `ln R_kk`.

use std::fmt;

use rayon::prelude::*;

use super::AnalysisError;
use crate::hybrid::{step_raw, NonFiniteState, Orbit, State4, SystemConfig};

pub type Matrix4 = [[f64; 4]; 4];

pub const DEFAULT_DELTA: f64 = 1e-6;
pub const DEFAULT_TOL: f64 = 0.01;

/// Fraction of steps allowed to produce a vanishing `R_kk`.
const DEGENERATE_FRACTION: f64 = 0.01;

/// Maps a raw difference of two mod-1 values to its representative in
/// `[-0.5, 0.5]`, removing the seam at 0 ≡ 1.
#[inline]
pub fn unwrap_diff(d: f64) -> f64 {
    d - d.round()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stencil {
    Central,
    Forward,
    Backward,
}

fn stencil(x: f64, delta: f64) -> Stencil {
    let up = x + delta;
    let down = x - delta;
    let up_crosses = up >= 1.0 || (x < 0.5 && up >= 0.5);
    let down_crosses = down < 0.0 || (x >= 0.5 && down < 0.5);
    match (up_crosses, down_crosses) {
        (true, false) => Stencil::Backward,
        (false, true) => Stencil::Forward,
        _ => Stencil::Central,
    }
}

/// Finite-difference Jacobian of the step map at `s`; row `i` holds the
/// derivatives of output coordinate `i`.
///
/// Central differences are used unless the perturbation of a coordinate
/// would cross the branch threshold 0.5 or leave `[0, 1)`, in which case
/// the one-sided difference on the non-crossing side is taken. All output
/// differences are unwrapped modulo 1.
pub fn jacobian(cfg: &SystemConfig, s: &State4, delta: f64) -> Result<Matrix4, NonFiniteState> {
    let base = s.to_array();
    let (center, _) = step_raw(cfg, base)?;
    let mut jac = [[0.0; 4]; 4];
    for j in 0..4 {
        let eval_at = |v: f64| {
            let mut p = base;
            p[j] = v;
            step_raw(cfg, p).map(|(out, _)| out)
        };
        let x = base[j];
        let (hi, lo, width) = match stencil(x, delta) {
            Stencil::Central => (eval_at(x + delta)?, eval_at(x - delta)?, 2.0 * delta),
            Stencil::Forward => (eval_at(x + delta)?, center, delta),
            Stencil::Backward => (center, eval_at(x - delta)?, delta),
        };
        for i in 0..4 {
            jac[i][j] = unwrap_diff(hi[i] - lo[i]) / width;
        }
    }
    Ok(jac)
}

/// An orthonormal frame, stored by columns.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentFrame {
    cols: Matrix4,
}

impl Default for TangentFrame {
    fn default() -> Self {
        Self::identity()
    }
}

fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64; 4]) -> f64 {
    dot(a, a).sqrt()
}

impl TangentFrame {
    pub fn identity() -> Self {
        let mut cols = [[0.0; 4]; 4];
        for (k, c) in cols.iter_mut().enumerate() {
            c[k] = 1.0;
        }
        TangentFrame { cols }
    }

    /// Column `k` of the frame.
    pub fn column(&self, k: usize) -> [f64; 4] {
        self.cols[k]
    }

    /// Largest entry of `|QᵀQ − I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot(&self.cols[a], &self.cols[b]) - target).abs());
            }
        }
        worst
    }

    /// Replaces the frame by `Q′` from `J·Q = Q′R` and returns the diagonal
    /// of `R`, which is non-negative. A zero entry means the corresponding
    /// column collapsed; its frame vector is then completed from the
    /// standard basis so the frame stays orthonormal.
    ///
    /// The factorization is modified Gram–Schmidt with one
    /// re-orthogonalization sweep per column.
    pub fn advance(&mut self, jac: &Matrix4) -> [f64; 4] {
        let z: [[f64; 4]; 4] =
            self.cols.map(|c| std::array::from_fn(|i| (0..4).map(|m| jac[i][m] * c[m]).sum()));
        let scale = z.iter().map(norm).fold(0.0, f64::max);
        let mut diag = [0.0; 4];
        let mut q = [[0.0; 4]; 4];
        for k in 0..4 {
            let mut v = z[k];
            for _ in 0..2 {
                for qj in q.iter().take(k) {
                    let c = dot(qj, &v);
                    for i in 0..4 {
                        v[i] -= c * qj[i];
                    }
                }
            }
            let n = norm(&v);
            if n > 0.0 && n > scale * f64::EPSILON * 16.0 {
                diag[k] = n;
                q[k] = v.map(|x| x / n);
            } else {
                diag[k] = 0.0;
                q[k] = complete_basis(&q[..k]);
            }
        }
        self.cols = q;
        diag
    }
}

/// A unit vector orthogonal to the (orthonormal) `qs`.
fn complete_basis(qs: &[[f64; 4]]) -> [f64; 4] {
    let mut best = [0.0; 4];
    let mut best_norm = -1.0;
    for e in 0..4 {
        let mut v = [0.0; 4];
        v[e] = 1.0;
        for _ in 0..2 {
            for qj in qs {
                let c = dot(qj, &v);
                for i in 0..4 {
                    v[i] -= c * qj[i];
                }
            }
        }
        let n = norm(&v);
        if n > best_norm {
            best_norm = n;
            best = v.map(|x| x / n);
        }
    }
    best
}

/// Four exponents, largest first, in nats per iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovResult {
    pub lambdas: [f64; 4],
    pub iterations_used: usize,
    pub r: f64,
}

impl LyapunovResult {
    pub fn max(&self) -> f64 {
        self.lambdas[0]
    }
}

/// Step-by-step estimator; [`lyapunov_spectrum`] drives it to completion.
#[derive(Debug, Clone)]
pub struct LyapunovEstimator<'a> {
    cfg: &'a SystemConfig,
    delta: f64,
    state: State4,
    frame: TangentFrame,
    log_sums: [f64; 4],
    steps: usize,
    degenerate_steps: usize,
}

impl<'a> LyapunovEstimator<'a> {
    /// Runs the burn-in of `cfg` and positions the estimator on the first
    /// post-burn-in state.
    pub fn new(cfg: &'a SystemConfig, delta: f64) -> Result<Self, AnalysisError> {
        if !(delta > 0.0 && delta <= 1e-4) {
            return Err(AnalysisError::invalid(format!("delta {delta} is outside (0, 1e-4]")));
        }
        let mut state = *cfg.initial();
        for s in Orbit::new(cfg).take(cfg.burn_in()) {
            state = s?;
        }
        Ok(LyapunovEstimator {
            cfg,
            delta,
            state,
            frame: TangentFrame::identity(),
            log_sums: [0.0; 4],
            steps: 0,
            degenerate_steps: 0,
        })
    }

    pub fn advance(&mut self) -> Result<(), AnalysisError> {
        let jac = jacobian(self.cfg, &self.state, self.delta).map_err(|e| self.at_step(e))?;
        let diag = self.frame.advance(&jac);
        let mut degenerate = false;
        for (sum, d) in self.log_sums.iter_mut().zip(diag) {
            if d > 0.0 {
                *sum += d.ln();
            } else {
                degenerate = true;
            }
        }
        if degenerate {
            self.degenerate_steps += 1;
        }
        self.state = crate::hybrid::step(self.cfg, &self.state).map_err(|e| self.at_step(e))?;
        self.steps += 1;
        Ok(())
    }

    fn at_step(&self, mut e: NonFiniteState) -> AnalysisError {
        e.iteration = Some(self.cfg.burn_in() + self.steps);
        AnalysisError::NonFinite(e)
    }

    pub fn frame(&self) -> &TangentFrame {
        &self.frame
    }

    pub fn state(&self) -> &State4 {
        &self.state
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn degenerate_steps(&self) -> usize {
        self.degenerate_steps
    }

    pub fn finish(&self) -> Result<LyapunovResult, AnalysisError> {
        if self.steps == 0 {
            return Err(AnalysisError::invalid("no iterations were run"));
        }
        if self.degenerate_steps as f64 > DEGENERATE_FRACTION * self.steps as f64 {
            return Err(AnalysisError::DegenerateJacobian {
                degenerate: self.degenerate_steps,
                steps: self.steps,
            });
        }
        let n = self.steps as f64;
        let mut lambdas = self.log_sums.map(|s| s / n);
        lambdas.sort_by(|a, b| b.total_cmp(a));
        Ok(LyapunovResult { lambdas, iterations_used: self.steps, r: self.cfg.r() })
    }
}

/// Estimates all four exponents over `n` post-burn-in iterations.
pub fn lyapunov_spectrum(cfg: &SystemConfig, n: usize, delta: f64) -> Result<LyapunovResult, AnalysisError> {
    if n < 100 {
        return Err(AnalysisError::invalid(format!("n = {n} is below the minimum of 100")));
    }
    let mut est = LyapunovEstimator::new(cfg, delta)?;
    for _ in 0..n {
        est.advance()?;
    }
    est.finish()
}

/// Runs [`lyapunov_spectrum`] at each `r` in parallel; results keep the
/// order of `rs`.
pub fn lyapunov_sweep(
    cfg: &SystemConfig,
    rs: &[f64],
    n: usize,
    delta: f64,
) -> Vec<(f64, Result<LyapunovResult, AnalysisError>)> {
    rs.par_iter()
        .map(|&r| {
            let res = cfg
                .clone()
                .with_r(r)
                .map_err(|e| AnalysisError::invalid(e.to_string()))
                .and_then(|c| lyapunov_spectrum(&c, n, delta));
            (r, res)
        })
        .collect()
}

/// Verdict on the sign of the largest exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Chaotic,
    Periodic,
    Bifurcation,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Chaotic => "chaotic",
            Classification::Periodic => "periodic",
            Classification::Bifurcation => "bifurcation",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Chaotic if `λ₁ > tol`, periodic if `λ₁ < −tol`, and a bifurcation point
/// inside the dead band `|λ₁| ≤ tol`.
pub fn classify(res: &LyapunovResult, tol: f64) -> Classification {
    let top = res.max();
    if top > tol {
        Classification::Chaotic
    } else if top < -tol {
        Classification::Periodic
    } else {
        Classification::Bifurcation
    }
}
