//! Cobweb staircase for one coordinate of Case i, printed as CSV rows.
//!
//!     cargo run --example cobweb

use hybrid_chaos::analysis::cobweb;
use hybrid_chaos::io::write_cobweb;
use hybrid_chaos::{load_preset, Coord, Preset};

fn main() {
    let cfg = load_preset(Preset::CaseI);
    let data = cobweb(&cfg, Coord::X, 6).unwrap();
    write_cobweb(&mut std::io::stdout().lock(), &data).unwrap();

    let long = cobweb(&cfg, Coord::X, 500).unwrap();
    let low = long.points.iter().filter(|(u, _)| *u < 0.5).count();
    println!("500 steps: {low} vertices left of 0.5, {} right", long.points.len() - low);
}
