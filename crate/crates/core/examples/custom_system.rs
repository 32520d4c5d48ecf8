//! Build a system from JSON, see how config errors are reported, and step
//! it by hand.
//!
//!     cargo run --example custom_system

use hybrid_chaos::{step, State4, SystemConfig};

const CONFIG: &str = r#"{
  "r": 0.9,
  "initial": [0.11, 0.37, 0.52, 0.84],
  "burn_in": 100,
  "coupling": "next",
  "parts": {
    "x": {"alpha": [3, 2], "beta": [1, 4], "base": ["tent", "sin"],
          "f": ["sin(pi*p)", "p^2"], "g": ["r*w", "cos(y+z)"], "h": ["p", "2*p"]},
    "y": {"alpha": [2, 2], "beta": [2, 2], "base": ["logistic", "tent"],
          "f": ["p", "exp(p)"], "g": ["xn+0.5*z", "x*xn"], "h": ["sin(p)", "p"]},
    "z": {"alpha": [5, 1], "beta": [3, 1], "base": ["sin", "sin"],
          "f": ["cosh(p)", "p"], "g": ["yn-w", "abs(xn-yn)"], "h": ["p", "p"]},
    "w": {"alpha": [1, 7], "beta": [1, 1], "base": ["tent", "logistic"],
          "f": ["p", "p"], "g": ["zn*x", "sqrt(zn+w)"], "h": ["3*p", "p"]}
  }
}"#;

fn main() {
    let cfg = SystemConfig::from_json(CONFIG).unwrap();
    println!("config hash {}", cfg.hash());

    let mut s = *cfg.initial();
    for i in 0..5 {
        s = step(&cfg, &s).unwrap();
        println!("{i}: {s}");
    }
    let start = State4::new(0.5, 0.5, 0.5, 0.5).unwrap();
    println!("from the centre: {}", step(&cfg, &start).unwrap());

    // a slot may only read the variables its position allows
    let bad = CONFIG.replace(r#""g": ["xn+0.5*z""#, r#""g": ["zn+0.5*z""#);
    println!("error: {}", SystemConfig::from_json(&bad).unwrap_err());
    let bad = CONFIG.replace(r#""sin(pi*p)""#, r#""sin(pi*p""#);
    println!("error: {}", SystemConfig::from_json(&bad).unwrap_err());
}
