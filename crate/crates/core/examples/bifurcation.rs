//! Bifurcation scan of Case ii over (0, 1.2] and how densely each column
//! fills the unit interval.
//!
//!     cargo run --release --example bifurcation

use hybrid_chaos::analysis::{bifurcation_scan, distinct_at_resolution};
use hybrid_chaos::{load_preset, Coord, Preset};

fn main() {
    let cfg = load_preset(Preset::CaseII);
    let data = bifurcation_scan(&cfg, 0.0, 1.2, 120, 200, Coord::X).unwrap();
    println!("{} points, {} r values skipped", data.points.len(), data.skipped.len());

    for (r, col) in data.columns().iter().step_by(12) {
        let lo = col.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let distinct = distinct_at_resolution(col, 1e-6);
        println!("r = {r:.2}: x in [{lo:.3}, {hi:.3}], {distinct} distinct of {}", col.len());
    }
}
