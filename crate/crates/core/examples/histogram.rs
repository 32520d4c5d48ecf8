//! Histograms of each coordinate of Case i with the chi-square statistic
//! against a uniform distribution.
//!
//!     cargo run --release --example histogram

use hybrid_chaos::analysis::{chi_square_uniformity, histogram, DEFAULT_BINS};
use hybrid_chaos::{generate, load_preset, Coord, Preset};

fn main() {
    let cfg = load_preset(Preset::CaseI);
    let traj = generate(&cfg, 100_000).unwrap();
    for c in Coord::ALL {
        let h = histogram(&traj.coord(c), DEFAULT_BINS).unwrap();
        let chi = chi_square_uniformity(&h).unwrap();
        let (min, max) = (h.counts.iter().min().unwrap(), h.counts.iter().max().unwrap());
        println!("{c}: chi2 = {:7.2} (dof {}), bin counts {min}..{max}", chi.statistic, chi.dof);
    }
}
