//! Run a task the way the command-line tool does, then replay its manifest
//! and check the output is byte-identical.
//!
//!     cargo run --example manifest_replay

use hybrid_chaos::io::{execute, manifest_path, replay, Task};
use hybrid_chaos::{load_preset, Coord, Preset};

fn main() {
    let dir = std::env::temp_dir().join(format!("hybrid-chaos-example-{}", std::process::id()));
    let out = dir.join("scan.csv");
    let task = Task::Bifurcation { r_lo: 0.2, r_hi: 1.0, steps: 8, keep: 25, coord: Coord::Y };

    let summary = execute(&task, &load_preset(Preset::CaseII), &out).unwrap();
    println!("wrote {} rows to {:?}", summary.rows, summary.outputs);

    let again = dir.join("replayed.csv");
    replay(&manifest_path(&out), Some(&again)).unwrap();
    let same = std::fs::read(&out).unwrap() == std::fs::read(&again).unwrap();
    println!("replay identical: {same}");

    std::fs::remove_dir_all(&dir).unwrap();
}
