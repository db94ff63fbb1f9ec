//! The shift `S^{α,r} f = Σ_I ⟨f,h_I⟩ (h_{I^+} − h_{I^-})` over the
//! intervals of one grid with levels `−K_coarse ≤ |I| level < K_fine`.

use super::grid::{GridInterval, RandomDyadicGrid};
use super::step::StepFunction1D;
use crate::error::{Error, Result};

fn haar_coefficient(f: &StepFunction1D, i: &GridInterval) -> f64 {
    if !f.jumps_inside(i.start, i.end()) {
        return 0.0;
    }
    let mid = i.mid();
    (f.integral(mid, i.end()) - f.integral(i.start, mid)) / i.len.sqrt()
}

fn check_window(f: &StepFunction1D, g: &RandomDyadicGrid) -> Result<()> {
    if let Some((a, b)) = f.support() {
        let l = g.window();
        if a < -l || b > l {
            return Err(Error::WindowOverflow(if a < -l { a } else { b }));
        }
    }
    Ok(())
}

/// `(S^{α,r} f)(x)` using only the intervals that contain `x`.
pub fn grid_shift_eval(f: &StepFunction1D, g: &RandomDyadicGrid, x: f64) -> f64 {
    let mut acc = 0.0;
    for level in -g.k_coarse()..g.k_fine() {
        let i = g.interval_at(level, x);
        let c = haar_coefficient(f, &i);
        if c == 0.0 {
            continue;
        }
        let mid = i.mid();
        let (child, sign) = if x < mid {
            (GridInterval { level: level + 1, start: i.start, len: 0.5 * i.len }, -1.0)
        } else {
            (GridInterval { level: level + 1, start: mid, len: 0.5 * i.len }, 1.0)
        };
        let h = if x < child.mid() { -1.0 } else { 1.0 } / child.len.sqrt();
        acc += c * sign * h;
    }
    acc
}

/// `S^{α,r} f` as a step function. Coefficients at levels below `K_fine`
/// see only `E_{K_fine} f`, so `f` is effectively projected first; see
/// [`projection_error`].
pub fn grid_shift_apply(f: &StepFunction1D, g: &RandomDyadicGrid) -> Result<StepFunction1D> {
    check_window(f, g)?;
    let Some((a, b)) = f.support() else {
        return Ok(StepFunction1D::zero());
    };
    let mut jumps = Vec::new();
    for level in -g.k_coarse()..g.k_fine() {
        for i in g.intervals_meeting(level, a, b) {
            let c = haar_coefficient(f, &i);
            if c == 0.0 {
                continue;
            }
            let half = 0.5 * i.len;
            for (start, sign) in [(i.start, -1.0), (i.mid(), 1.0)] {
                // c·sign·h_C with C = [start, start + half)
                let v = c * sign / half.sqrt();
                jumps.push((start, -v));
                jumps.push((start + 0.5 * half, 2.0 * v));
                jumps.push((start + half, -v));
            }
        }
    }
    Ok(StepFunction1D::from_jumps(jumps))
}

/// `‖f − E_{K_fine} f‖₂`, the part of `f` not resolved by the finest level.
pub fn projection_error(f: &StepFunction1D, g: &RandomDyadicGrid) -> Result<f64> {
    check_window(f, g)?;
    let Some((a, b)) = f.support() else {
        return Ok(0.0);
    };
    let mut err = 0.0;
    for cell in g.intervals_meeting(g.k_fine(), a, b) {
        if !f.jumps_inside(cell.start, cell.end()) {
            continue;
        }
        let mean = f.integral(cell.start, cell.end()) / cell.len;
        let bps: Vec<f64> = std::iter::once(cell.start)
            .chain(f.breakpoints().iter().copied().filter(|&p| p > cell.start && p < cell.end()))
            .chain(std::iter::once(cell.end()))
            .collect();
        for w in bps.windows(2) {
            let v = f.eval(0.5 * (w[0] + w[1])) - mean;
            err += v * v * (w[1] - w[0]);
        }
    }
    Ok(err.sqrt())
}
