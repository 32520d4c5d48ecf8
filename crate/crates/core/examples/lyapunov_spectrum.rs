//! Lyapunov spectrum of Case i at a few values of r, and of a decoupled
//! logistic system where every exponent should be ln 2.
//!
//!     cargo run --release --example lyapunov_spectrum

use hybrid_chaos::analysis::{classify, lyapunov_spectrum, lyapunov_sweep, DEFAULT_DELTA, DEFAULT_TOL};
use hybrid_chaos::{load_preset, Preset, SystemConfig};

fn main() {
    let cfg = load_preset(Preset::CaseI);
    for (r, res) in lyapunov_sweep(&cfg, &[0.2, 0.5, 0.8, 1.1], 20_000, DEFAULT_DELTA) {
        match res {
            Ok(res) => {
                let l = res.lambdas.map(|v| format!("{v:7.3}"));
                println!("r = {r:.1}: [{}] {}", l.join(" "), classify(&res, DEFAULT_TOL));
            }
            Err(e) => println!("r = {r:.1}: {e}"),
        }
    }

    let part = r#"{"alpha": [1, 1], "beta": [0, 0], "base": ["logistic", "logistic"],
                   "f": ["p", "p"], "g": ["0", "0"], "h": ["0", "0"]}"#;
    let json = format!(
        r#"{{"r": 1.0, "coupling": "current", "parts": {{"x": {part}, "y": {part}, "z": {part}, "w": {part}}}}}"#
    );
    let logistic = SystemConfig::from_json(&json).unwrap();
    let res = lyapunov_spectrum(&logistic, 100_000, DEFAULT_DELTA).unwrap();
    println!("decoupled logistic: {:?} (ln 2 = {:.6})", res.lambdas, std::f64::consts::LN_2);
}
