//! Iterate both shipped parameter sets and print the first few states.
//!
//!     cargo run --example trajectory

use hybrid_chaos::hybrid::step_with_branches;
use hybrid_chaos::{generate, load_preset, Preset};

fn main() {
    for preset in [Preset::CaseI, Preset::CaseII] {
        let cfg = load_preset(preset);
        println!("{preset}: r = {}, burn-in {}, coupling {:?}", cfg.r(), cfg.burn_in(), cfg.coupling());

        let traj = generate(&cfg, 5).expect("preset orbit stays finite");
        for (i, s) in traj.states.iter().enumerate() {
            let (_, branches) = step_with_branches(&cfg, s).unwrap();
            let taken: Vec<u8> = branches.iter().map(|b| b.number()).collect();
            println!("  {i}: {s}  next branches {taken:?}");
        }
        println!("  config hash {}", &traj.config_hash[..16]);
    }
}
