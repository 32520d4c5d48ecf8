//! Coordinate-pair scatter of Case ii and its coverage of the unit square.
//!
//!     cargo run --example scatter

use hybrid_chaos::analysis::{occupied_fraction, scatter_pairs};
use hybrid_chaos::{generate, load_preset, Coord, Preset};

fn main() {
    let cfg = load_preset(Preset::CaseII);
    let traj = generate(&cfg, 10_000).unwrap();
    for (a, b) in [(Coord::X, Coord::Y), (Coord::Z, Coord::W), (Coord::X, Coord::W)] {
        let pairs = scatter_pairs(&traj, a, b).unwrap();
        for grid in [8, 32, 100] {
            print!("{a}{b} {grid}x{grid}: {:.3}  ", occupied_fraction(&pairs, grid));
        }
        println!();
    }
}
