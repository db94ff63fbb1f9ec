//! Averaged shifts compressed to `[0,1)`, the double commutator built from
//! them, and BMO norms over sampled product grids.

use ndarray::Array2;
use rayon::prelude::*;

use super::grid::RandomDyadicGrid;
use super::mc::{stream_grid, HILBERT_CONSTANT};
use super::shift::grid_shift_apply;
use super::step::StepFunction1D;
use crate::dyadic::{haar_forward_2d, Depth, GridFunction2D, MAX_TOTAL_DEPTH};
use crate::error::{Error, Result};
use crate::norms::bmo_d_norm_sq;

/// `A[i][c]` = mean over cell `i` of `c·ln2·E[S^{α,r} χ_c]`, cells of length
/// `2^{-m}` in `[0,1)`. An approximation of the compressed Hilbert transform.
pub fn averaged_shift_matrix(m: usize, n_samples: usize, seed: u64, k_coarse: u32, k_fine: u32) -> Result<Array2<f64>> {
    if m == 0 || m > 10 {
        return Err(Error::OutOfRange(format!("resolution {m}")));
    }
    if n_samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let n = 1usize << m;
    let w = 1.0 / n as f64;
    let per_sample: Vec<Array2<f64>> = (0..n_samples as u64)
        .into_par_iter()
        .map(|idx| {
            let g = stream_grid(seed, idx, k_coarse, k_fine)?;
            let mut a = Array2::zeros((n, n));
            for c in 0..n {
                let chi = StepFunction1D::indicator(c as f64 * w, (c + 1) as f64 * w, 1.0)?;
                let s = grid_shift_apply(&chi, &g)?;
                for i in 0..n {
                    a[[i, c]] = s.integral(i as f64 * w, (i + 1) as f64 * w) / w;
                }
            }
            Ok(a)
        })
        .collect::<Result<_>>()?;
    let mut acc = Array2::zeros((n, n));
    for a in &per_sample {
        acc += a;
    }
    Ok(acc * (HILBERT_CONSTANT * std::f64::consts::LN_2 / n_samples as f64))
}

/// `H1 H2(φb) − H1(φ·H2 b) − H2(φ·H1 b) + φ·H1 H2 b` with `H1 X = A1 X` and
/// `H2 X = X A2ᵀ`; `φ` and `b` are refined to the matrix resolution.
pub fn continuous_commutator(
    phi: &GridFunction2D,
    b: &GridFunction2D,
    a1: &Array2<f64>,
    a2: &Array2<f64>,
) -> Result<GridFunction2D> {
    let res = |a: &Array2<f64>| -> Result<usize> {
        let n = a.nrows();
        if !n.is_power_of_two() || a.ncols() != n || n < 2 {
            return Err(Error::InvalidInput("shift matrix must be square of size 2^m".into()));
        }
        Ok(n.trailing_zeros() as usize)
    };
    let depth = Depth::new(res(a1)?, res(a2)?)?;
    if phi.depth() != b.depth() {
        let (p, q) = (phi.depth().as_tuple(), b.depth().as_tuple());
        return Err(Error::DepthMismatch(p, q));
    }
    let phi = phi.refine(depth)?.into_values();
    let b = b.refine(depth)?.into_values();
    let h1 = |x: &Array2<f64>| a1.dot(x);
    let h2 = |x: &Array2<f64>| x.dot(&a2.t());
    let t1 = h1(&h2(&(&phi * &b)));
    let t2 = h1(&(&phi * &h2(&b)));
    let t3 = h2(&(&phi * &h1(&b)));
    let t4 = &phi * &h1(&h2(&b));
    GridFunction2D::new(depth, t1 - t2 - t3 + t4)
}

/// Smallest grid interval containing `[0,1)` as `(start, len)`.
fn enclosing_interval(g: &RandomDyadicGrid) -> Option<(f64, f64)> {
    (-g.k_coarse()..=g.k_fine()).rev().map(|l| g.interval_at(l, 0.0)).find(|i| i.end() >= 1.0).map(|i| (i.start, i.len))
}

/// `O[m][c] = |T_m ∩ [c,c+1)/2^j| / |T_m|` for the `2^res` equal cells `T_m` of `[a, a+len)`.
fn overlap_matrix(a: f64, len: f64, res: usize, j: usize) -> Array2<f64> {
    let (nt, ns) = (1usize << res, 1usize << j);
    let (wt, ws) = (len / nt as f64, 1.0 / ns as f64);
    Array2::from_shape_fn((nt, ns), |(m, c)| {
        let lo = (a + m as f64 * wt).max(c as f64 * ws);
        let hi = (a + (m + 1) as f64 * wt).min((c + 1) as f64 * ws);
        (hi - lo).max(0.0) / wt
    })
}

const GRID_LEVELS: u32 = 8;

/// Max over `n_grids` product grids of the dyadic BMO norm² of `b` (zero
/// outside `[0,1)²`) in that grid. Grid 0 is the standard grid; grid `i` uses
/// streams `2i−1`, `2i` of `seed`, so samples are nested in `n_grids`. The
/// grid interval enclosing `[0,1)` on each axis is mapped onto `[0,1)` and
/// resolved two levels finer than `b`, capped by the total depth limit.
pub fn sampled_continuous_bmo(b: &GridFunction2D, n_grids: usize, seed: u64) -> Result<f64> {
    let (j1, j2) = b.depth().as_tuple();
    let mut m1 = j1 + 2;
    let mut m2 = j2 + 2;
    while m1 + m2 > MAX_TOTAL_DEPTH.min(12) && m1 + m2 > j1 + j2 {
        if m1 - j1 >= m2 - j2 {
            m1 -= 1;
        } else {
            m2 -= 1;
        }
    }
    let depth = Depth::new(m1, m2)?;
    let values = b.values();
    let norms: Vec<f64> = (0..n_grids as u64)
        .into_par_iter()
        .map(|i| {
            let (s_iv, t_iv) = if i == 0 {
                (Some((0.0, 1.0)), Some((0.0, 1.0)))
            } else {
                let gs = stream_grid(seed, 2 * i - 1, GRID_LEVELS, GRID_LEVELS)?;
                let gt = stream_grid(seed, 2 * i, GRID_LEVELS, GRID_LEVELS)?;
                (enclosing_interval(&gs), enclosing_interval(&gt))
            };
            let (Some((sa, sl)), Some((ta, tl))) = (s_iv, t_iv) else {
                return Ok(0.0);
            };
            let os = overlap_matrix(sa, sl, m1, j1);
            let ot = overlap_matrix(ta, tl, m2, j2);
            let projected = GridFunction2D::new(depth, os.dot(values).dot(&ot.t()))?;
            let hh = haar_forward_2d(&projected).hh_part();
            Ok(bmo_d_norm_sq(&hh, None)?.norm_sq)
        })
        .collect::<Result<_>>()?;
    Ok(norms.into_iter().fold(0.0, f64::max))
}
