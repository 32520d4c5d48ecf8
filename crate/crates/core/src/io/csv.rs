use std::io::{self, Write};

use crate::analysis::{BifurcationData, CobwebData, Histogram, LyapunovResult, SkippedR};
use crate::hybrid::{Coord, NonFiniteState, Trajectory};

/// 17 significant digits in scientific notation: round-trips binary64 and
/// never depends on locale.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_trajectory<W: Write>(w: &mut W, traj: &Trajectory) -> io::Result<()> {
    writeln!(w, "i,x,y,z,w")?;
    for (i, s) in traj.states.iter().enumerate() {
        let [x, y, z, ww] = s.to_array();
        writeln!(w, "{i},{},{},{},{}", fmt_real(x), fmt_real(y), fmt_real(z), fmt_real(ww))?;
    }
    Ok(())
}

pub fn write_lyapunov<W: Write>(w: &mut W, rows: &[(LyapunovResult, &str)]) -> io::Result<()> {
    writeln!(w, "r,lambda1,lambda2,lambda3,lambda4,class")?;
    for (res, class) in rows {
        let l = res.lambdas;
        writeln!(
            w,
            "{},{},{},{},{},{class}",
            fmt_real(res.r),
            fmt_real(l[0]),
            fmt_real(l[1]),
            fmt_real(l[2]),
            fmt_real(l[3])
        )?;
    }
    Ok(())
}

fn write_failure<W: Write>(w: &mut W, r: f64, e: &NonFiniteState) -> io::Result<()> {
    let iteration = e.iteration.map(|i| i.to_string()).unwrap_or_default();
    writeln!(w, "{},{iteration},{},{},{}", fmt_real(r), e.coord, e.branch.number(), e.value)
}

/// Sidecar listing sweep points that failed, with the reason.
pub fn write_lyapunov_skips<W: Write>(w: &mut W, skips: &[(f64, String)]) -> io::Result<()> {
    writeln!(w, "r,reason")?;
    for (r, reason) in skips {
        writeln!(w, "{},\"{}\"", fmt_real(*r), reason.replace('"', "'"))?;
    }
    Ok(())
}

pub fn write_bifurcation<W: Write>(w: &mut W, data: &BifurcationData) -> io::Result<()> {
    writeln!(w, "r,value")?;
    for &(r, v) in &data.points {
        writeln!(w, "{},{}", fmt_real(r), fmt_real(v))?;
    }
    Ok(())
}

pub fn write_bifurcation_skips<W: Write>(w: &mut W, skipped: &[SkippedR]) -> io::Result<()> {
    writeln!(w, "r,iteration,coord,branch,value")?;
    for s in skipped {
        write_failure(w, s.r, &s.error)?;
    }
    Ok(())
}

pub fn write_cobweb<W: Write>(w: &mut W, data: &CobwebData) -> io::Result<()> {
    writeln!(w, "u,v")?;
    for &(u, v) in &data.points {
        writeln!(w, "{},{}", fmt_real(u), fmt_real(v))?;
    }
    Ok(())
}

pub fn write_histogram<W: Write>(w: &mut W, h: &Histogram) -> io::Result<()> {
    writeln!(w, "bin_lo,bin_hi,count")?;
    for (k, c) in h.counts.iter().enumerate() {
        let (lo, hi) = h.edges(k);
        writeln!(w, "{},{},{c}", fmt_real(lo), fmt_real(hi))?;
    }
    Ok(())
}

pub fn write_scatter<W: Write>(w: &mut W, a: Coord, b: Coord, pairs: &[(f64, f64)]) -> io::Result<()> {
    writeln!(w, "{a},{b}")?;
    for &(u, v) in pairs {
        writeln!(w, "{},{}", fmt_real(u), fmt_real(v))?;
    }
    Ok(())
}
