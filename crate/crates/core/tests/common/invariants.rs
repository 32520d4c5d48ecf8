//! Structural checks shared by the per-invariant tests and the acceptance
//! run. Each returns a description of the first violation.

use std::f64::consts::PI;

use hybrid_chaos::analysis::{bifurcation_scan, LyapunovEstimator, DEFAULT_DELTA};
use hybrid_chaos::expr::Var;
use hybrid_chaos::hybrid::{step_with_branches, Branch, Orbit};
use hybrid_chaos::{generate, load_preset, parse, step, Coord, EvalEnv, Preset, State4, SystemConfig};

use super::{decoupled, logistic_orbit, SplitMix};

pub type Check = Result<(), String>;

/// Every state of a long orbit lies in `[0, 1)⁴` and no step fails.
pub fn orbit_stays_in_unit_cube(preset: Preset, steps: usize) -> Check {
    let cfg = load_preset(preset);
    for (i, s) in Orbit::new(&cfg).take(steps).enumerate() {
        let s = s.map_err(|e| format!("{preset} step {i}: {e}"))?;
        if let Some(v) = s.to_array().into_iter().find(|v| !(0.0..1.0).contains(v)) {
            return Err(format!("{preset} step {i}: coordinate {v} outside [0, 1)"));
        }
    }
    Ok(())
}

/// Same config, same seed: bit-identical trajectory and config hash.
pub fn generation_is_deterministic(preset: Preset) -> Check {
    let cfg = load_preset(preset);
    let a = generate(&cfg, 5_000).map_err(|e| e.to_string())?;
    let b = generate(&load_preset(preset), 5_000).map_err(|e| e.to_string())?;
    let bits = |t: &hybrid_chaos::Trajectory| -> Vec<u64> {
        t.states.iter().flat_map(|s| s.to_array()).map(f64::to_bits).collect()
    };
    if bits(&a) != bits(&b) || a.config_hash != b.config_hash {
        return Err(format!("{preset}: repeated generation differs"));
    }
    Ok(())
}

/// A 1e-10 nudge to `x` grows past 0.1 within 100 steps.
pub fn nearby_orbits_separate(preset: Preset) -> Check {
    let cfg = load_preset(preset);
    let mut a = *cfg.initial();
    let [x, y, z, w] = a.to_array();
    let mut b = State4::new(x + 1e-10, y, z, w).map_err(|e| e.to_string())?;
    for _ in 0..100 {
        a = step(&cfg, &a).map_err(|e| e.to_string())?;
        b = step(&cfg, &b).map_err(|e| e.to_string())?;
        if a.max_abs_diff(&b) > 0.1 {
            return Ok(());
        }
    }
    Err(format!("{preset}: orbits 1e-10 apart stayed within 0.1 for 100 steps"))
}

/// Both branches of every part are taken within 10^4 steps.
pub fn all_branches_taken(preset: Preset) -> Check {
    let cfg = load_preset(preset);
    let mut seen = [[false; 2]; 4];
    let mut s = *cfg.initial();
    for _ in 0..10_000 {
        let (next, branches) = step_with_branches(&cfg, &s).map_err(|e| e.to_string())?;
        for (k, b) in branches.iter().enumerate() {
            seen[k][(*b == Branch::Second) as usize] = true;
        }
        s = next;
    }
    for c in Coord::ALL {
        if let Some(b) = seen[c.index()].iter().position(|&t| !t) {
            return Err(format!("{preset}: part {c} never took branch {}", b + 1));
        }
    }
    Ok(())
}

/// The Lyapunov frame stays orthonormal to 1e-9 after every QR step.
pub fn frame_stays_orthonormal(cfg: &SystemConfig, steps: usize) -> Check {
    let mut est = LyapunovEstimator::new(cfg, DEFAULT_DELTA).map_err(|e| e.to_string())?;
    for i in 0..steps {
        est.advance().map_err(|e| e.to_string())?;
        let err = est.frame().orthonormality_error();
        if err > 1e-9 {
            return Err(format!("orthonormality error {err:e} at step {i}"));
        }
    }
    Ok(())
}

/// A one-point scan at `r` reproduces the tail of a plain trajectory.
pub fn single_point_scan_matches_trajectory(preset: Preset, r: f64) -> Check {
    let cfg = load_preset(preset).with_r(r).map_err(|e| e.to_string())?;
    let data = bifurcation_scan(&cfg, 0.0, r, 1, 50, Coord::Y).map_err(|e| e.to_string())?;
    let traj = generate(&cfg, 50).map_err(|e| e.to_string())?;
    let want: Vec<(f64, f64)> = traj.coord(Coord::Y).into_iter().map(|v| (r, v)).collect();
    if data.points != want {
        return Err(format!("{preset}: scan at r = {r} differs from the trajectory"));
    }
    Ok(())
}

/// The decoupled logistic system at r = 0.7 follows the plain logistic
/// recurrence in every coordinate.
pub fn decoupled_logistic_matches_recurrence() -> Check {
    let r = 0.7;
    let cfg = decoupled("logistic", r);
    let data = bifurcation_scan(&cfg, 0.0, r, 1, 200, Coord::X).map_err(|e| e.to_string())?;
    let want = logistic_orbit(r, cfg.initial().x(), cfg.burn_in(), 200);
    let got: Vec<f64> = data.points.iter().map(|p| p.1).collect();
    let worst = got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if got.len() != want.len() || worst > 1e-12 {
        return Err(format!("logistic column differs from the recurrence by {worst:e}"));
    }
    Ok(())
}

fn cot(v: f64) -> f64 {
    v.cos() / v.sin()
}

/// Parsed slot expressions agree with hand-written closures to 1e-12
/// relative on 1000 random environments each.
pub fn slot_expressions_match_closures() -> Check {
    type Closure = fn(&[f64; 9]) -> f64;
    // [r, x, y, z, w, xn, yn, zn, p]
    let cases: &[(&str, Closure)] = &[
        ("15*tanh(r*x+z)+sin(w)+12*cos(r*x)", |v| {
            15.0 * (v[0] * v[1] + v[3]).tanh() + v[4].sin() + 12.0 * (v[0] * v[1]).cos()
        }),
        ("-7*r*y+exp(1+2*w)+z+7*log(pi*r*x)", |v| {
            -7.0 * v[0] * v[2] + (1.0 + 2.0 * v[4]).exp() + v[3] + 7.0 * (PI * v[0] * v[1]).ln()
        }),
        ("2*tan(r*x+y+2*z+w)", |v| 2.0 * (v[0] * v[1] + v[2] + 2.0 * v[3] + v[4]).tan()),
        ("z+w+14*exp(20*r*x)", |v| v[3] + v[4] + 14.0 * (20.0 * v[0] * v[1]).exp()),
        ("14*exp(20*r*x+w)+sin(z)", |v| 14.0 * (20.0 * v[0] * v[1] + v[4]).exp() + v[3].sin()),
        ("sin(r*y+x)+log(7+w+z)", |v| (v[0] * v[2] + v[1]).sin() + (7.0 + v[4] + v[3]).ln()),
        ("r*x+y+exp(r*xn)+cos(z+w)", |v| v[0] * v[1] + v[2] + (v[0] * v[5]).exp() + (v[3] + v[4]).cos()),
        ("z-w+log(20*r*xn+x)", |v| v[3] - v[4] + (20.0 * v[0] * v[5] + v[1]).ln()),
        ("cot(r*xn+yn)+sin(x+w*z)", |v| cot(v[0] * v[5] + v[6]) + (v[1] + v[4] * v[3]).sin()),
        ("2*cot(r*xn+yn+zn)+log(x+w)", |v| 2.0 * cot(v[0] * v[5] + v[6] + v[7]) + (v[1] + v[4]).ln()),
        ("exp(r*yn+xn+2*w)+y+z", |v| (v[0] * v[6] + v[5] + 2.0 * v[4]).exp() + v[2] + v[3]),
        ("cosh(p)", |v| v[8].cosh()),
        ("sin(pi*p)", |v| (PI * v[8]).sin()),
        ("cot(4*p)", |v| cot(4.0 * v[8])),
        ("sqrt(abs(p-x))^3/sinh(1+p)", |v| (v[8] - v[1]).abs().sqrt().powf(3.0) / (1.0 + v[8]).sinh()),
        ("2^-p^2-e", |v| 2f64.powf(-(v[8].powf(2.0))) - std::f64::consts::E),
    ];
    let vars = [Var::R, Var::X, Var::Y, Var::Z, Var::W, Var::Xn, Var::Yn, Var::Zn, Var::P];
    let mut rng = SplitMix(99);
    for (src, closure) in cases {
        let expr = parse(src).map_err(|e| format!("{src}: {e}"))?;
        for _ in 0..1000 {
            let mut v = [0.0; 9];
            v[0] = rng.uniform(0.1, 1.0);
            for slot in &mut v[1..] {
                *slot = rng.uniform(0.05, 0.95);
            }
            let env = vars.iter().zip(v).fold(EvalEnv::new(), |env, (&var, val)| env.with(var, val));
            let got = expr.eval(&env).map_err(|e| format!("{src}: {e}"))?;
            let want = closure(&v);
            let rel = (got - want).abs() / want.abs().max(1.0);
            if rel.is_nan() || rel >= 1e-12 {
                return Err(format!("{src} at {v:?}: {got} vs {want}"));
            }
        }
    }
    Ok(())
}
