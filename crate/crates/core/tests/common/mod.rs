//! Test-only reference code, independent of the configurable engine.
#![allow(dead_code)]

use std::f64::consts::PI;

use hybrid_chaos::{load_preset, step, Preset, State4, SystemConfig};

pub mod invariants;

/// Distance on the circle R/Z.
pub fn circ_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(1.0 - d)
}

pub fn max_circ(a: [f64; 4], b: [f64; 4]) -> f64 {
    (0..4).map(|i| circ_dist(a[i], b[i])).fold(0.0, f64::max)
}

fn frac(v: f64) -> Option<f64> {
    v.is_finite().then(|| v.rem_euclid(1.0))
}

fn cot(v: f64) -> f64 {
    v.cos() / v.sin()
}

/// Case i written out by hand: every slot substituted, branch variables
/// taken from the current state. `None` when a sum is not finite.
pub fn case_i_step(r: f64, s: [f64; 4]) -> Option<[f64; 4]> {
    let [x, y, z, w] = s;
    let tent = |v: f64| if v < 0.5 { 2.0 * r * v } else { 2.0 * r * (1.0 - v) };
    let sin_map = |v: f64| r * (PI * v).sin();
    let logistic = |v: f64| 4.0 * r * v * (1.0 - v);

    let x1 = if z < 0.5 {
        1.0 * tent(x).cosh()
            + (15.0 * (r * x + z).tanh() + w.sin() + 12.0 * (r * x).cos())
            + (2.0 * ((6.0 - r) * z / 2.0)).sin()
    } else {
        16.0 * cot(sin_map(x))
            + (-7.0 * r * y + (1.0 + 2.0 * w).exp() + z + 7.0 * (PI * r * x).ln())
            + 4.0 * ((2.0 - r) * (1.0 - z) / 2.0)
    };
    let y1 = if x < 0.5 {
        10.0 * sin_map(y) + 2.0 * (r * x + y + 2.0 * z + w).tan() + cot((50.0 - r) * x / 2.0)
    } else {
        20.0 * (PI * sin_map(y)).sin()
            + (z + w + 14.0 * (20.0 * r * x).exp())
            + (2.0 * ((30.0 - r) * (1.0 - x) / 2.0)).exp()
    };
    let z1 = if y < 0.5 {
        10.0 * tent(z) + (2.0 * (r * x + y).tan() + w + z) + (2.0 * ((50.0 - r) * y / 2.0)).exp()
    } else {
        20.0 * (PI * tent(z)).sin()
            + (14.0 * (20.0 * r * x + w).exp() + z.sin())
            + cot(4.0 * ((30.0 - r) * (1.0 - y) / 2.0))
    };
    let w1 = if z < 0.5 {
        10.0 * logistic(w) + (2.0 * (r * x + y + z).tan() + w) + (2.0 * ((50.0 - r) * z / 2.0)).exp()
    } else {
        20.0 * (PI * logistic(w)).exp()
            + (14.0 * (20.0 * r * x + w).exp() + z)
            + cot(4.0 * ((30.0 - r) * (1.0 - z) / 2.0))
    };
    Some([frac(x1)?, frac(y1)?, frac(z1)?, frac(w1)?])
}

/// Case ii written out by hand; branch variables are the freshly computed
/// next-step values.
pub fn case_ii_step(r: f64, s: [f64; 4]) -> Option<[f64; 4]> {
    let [x, y, z, w] = s;
    let tent = |v: f64| if v < 0.5 { 2.0 * r * v } else { 2.0 * r * (1.0 - v) };
    let sin_map = |v: f64| r * (PI * v).sin();
    let logistic = |v: f64| 4.0 * r * v * (1.0 - v);

    let xn = frac(if z < 0.5 {
        7.0 * tent(x).cos() + ((w + z).sin() + r * x * y) + (20.0 * ((1.0 - r) * z / 2.0)).cos()
    } else {
        2.0 * sin_map(x) + ((r * y + x).sin() + (7.0 + w + z).ln()) + 5.0 * ((2.0 - r) * (1.0 - z) / 2.0)
    })?;
    let yn = frac(if xn < 0.5 {
        4.0 * sin_map(y) + (r * x + y + (r * xn).exp() + (z + w).cos()) + (4.0 * ((3.0 - r) * xn / 2.0)).ln()
    } else {
        4.0 * sin_map(y) + (z - w + (20.0 * r * xn + x).ln()) + (6.0 * ((3.0 - r) * (1.0 - xn) / 2.0)).cos()
    })?;
    let zn = frac(if yn < 0.5 {
        3.0 * tent(z).exp() + (cot(r * xn + yn) + (x + w * z).sin()) + (4.0 * ((1.0 - r) * yn / 2.0)).exp()
    } else {
        5.0 * logistic(z) + ((x + w + z).exp() + (xn + yn).sin()) + ((2.0 - r) * (1.0 - yn) / 2.0).cos()
    })?;
    let wn = frac(if zn < 0.5 {
        5.0 * logistic(w)
            + (2.0 * cot(r * xn + yn + zn) + (x + w).ln())
            + (4.0 * ((2.0 - r) * zn / 2.0)).exp()
    } else {
        5.0 * logistic(w).cos()
            + ((r * yn + xn + 2.0 * w).exp() + y + z)
            + ((2.0 - r) * (1.0 - zn) / 2.0).cos()
    })?;
    Some([xn, yn, zn, wn])
}

/// Four uncoupled copies of one base map: `α = 1`, `f = p`, `g = h = 0`.
pub fn decoupled(base: &str, r: f64) -> SystemConfig {
    let part = format!(
        r#"{{"alpha": [1, 1], "beta": [0, 0], "base": ["{base}", "{base}"],
            "f": ["p", "p"], "g": ["0", "0"], "h": ["0", "0"]}}"#
    );
    let json = format!(
        r#"{{"r": {r}, "coupling": "current",
            "parts": {{"x": {part}, "y": {part}, "z": {part}, "w": {part}}}}}"#
    );
    SystemConfig::from_json(&json).expect("decoupled config")
}

/// Plain logistic orbit `v ← 4r·v(1−v)`, reduced mod 1.
pub fn logistic_orbit(r: f64, v0: f64, burn_in: usize, n: usize) -> Vec<f64> {
    let mut v = v0;
    let mut out = Vec::with_capacity(n);
    for i in 0..burn_in + n {
        v = (4.0 * r * v * (1.0 - v)).rem_euclid(1.0);
        if i >= burn_in {
            out.push(v);
        }
    }
    out
}

/// Small deterministic generator (SplitMix64) for reproducible samples.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }
}

pub type Oracle = fn(f64, [f64; 4]) -> Option<[f64; 4]>;

/// Engine vs. hand transcription on random states, for r = 0.1, 0.2, ..., 1.0.
/// Returns (compared, worst error, failure-set mismatches).
pub fn compare(preset: Preset, oracle: Oracle, seed: u64, states: usize) -> (usize, f64, usize) {
    let base = load_preset(preset);
    let mut rng = SplitMix(seed);
    let (mut compared, mut worst, mut mismatched) = (0, 0.0f64, 0);
    for k in 1..=10 {
        let r = k as f64 / 10.0;
        let cfg = base.clone().with_r(r).unwrap();
        for _ in 0..states {
            let s = [0; 4].map(|_| rng.uniform(0.0, 1.0));
            match (step(&cfg, &State4::from_array(s).unwrap()), oracle(r, s)) {
                (Ok(a), Some(b)) => {
                    compared += 1;
                    worst = worst.max(max_circ(a.to_array(), b));
                }
                (Err(_), None) => {}
                _ => mismatched += 1,
            }
        }
    }
    (compared, worst, mismatched)
}
