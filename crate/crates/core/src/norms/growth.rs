//! Extremal test functions with prescribed mean on a rectangle and the
//! local growth table `|m_R b|` versus `s(R)‖b‖_{BMO}`.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::closure::bmo_d_norm_sq;
use crate::dyadic::{forward_1d, haar_forward_2d, Depth, DyadicInterval, DyadicRect, GridFunction2D};
use crate::error::{Error, Result};

/// `s(ℓ) = ln(1/ℓ) + 1` for `ℓ ≤ 1`, else 1; `s(I×J) = s(|I|)·s(|J|)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct LocalGrowthFactor;

impl LocalGrowthFactor {
    pub fn interval(len: f64) -> f64 {
        if len <= 1.0 {
            (1.0 / len).ln() + 1.0
        } else {
            1.0
        }
    }

    pub fn rect(len_s: f64, len_t: f64) -> f64 {
        Self::interval(len_s) * Self::interval(len_t)
    }
}

/// `b₁(x) = #{ℓ ≤ k : x ∈ I^{(ℓ)}}` on `2^resolution` cells, `I^{(ℓ)}` the
/// level-ℓ ancestor of `I`.
fn staircase(i: &DyadicInterval, resolution: usize) -> Vec<f64> {
    let mut out = vec![0.0; 1 << resolution];
    for l in 0..=i.level() {
        let anc = i.ancestor(l).expect("ancestor at coarser level");
        for x in anc.cell_range(resolution) {
            out[x] += 1.0;
        }
    }
    out
}

/// `b = b₁ ⊗ b₂` with `b ≡ (k+1)(l+1)` on `R ∈ R_{(k,l)}` and uniformly
/// bounded product BMO norm.
pub fn extremal_bmo_function(rect: DyadicRect, depth: Depth) -> Result<GridFunction2D> {
    if rect.s.level() > depth.s || rect.t.level() > depth.t {
        return Err(Error::OutOfRange(format!("rectangle {rect:?} finer than depth {depth:?}")));
    }
    let b1 = staircase(&rect.s, depth.s);
    let b2 = staircase(&rect.t, depth.t);
    GridFunction2D::from_fn(depth, |i, j| b1[i] * b2[j])
}

/// Axis-parallel rectangle in cell units; may leave the unit square, where
/// functions are extended by zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRect {
    pub s: Range<i64>,
    pub t: Range<i64>,
}

impl CellRect {
    pub fn new(s: Range<i64>, t: Range<i64>) -> Result<Self> {
        if s.is_empty() || t.is_empty() {
            return Err(Error::DegenerateRectangle);
        }
        Ok(Self { s, t })
    }

    pub fn from_dyadic(r: &DyadicRect, depth: Depth) -> Self {
        let (s, t) = (r.s.cell_range(depth.s), r.t.cell_range(depth.t));
        Self { s: s.start as i64..s.end as i64, t: t.start as i64..t.end as i64 }
    }
}

/// One row of [`local_growth_report`]. Each ratio divides the left side of
/// a growth estimate by its right side without the implicit constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub rect: CellRect,
    pub s_factor: f64,
    /// `|m_R b| / (s(R)‖b‖)`
    pub mean: f64,
    /// `‖m_I b‖_{BMO(t)} / (s(I)‖b‖)`
    pub slice_mean_bmo: f64,
    /// `‖χ_R b‖₂ / (s(R)|R|^{1/2}‖b‖)`
    pub local_l2: f64,
    /// `‖χ_I P_J b‖₂ / (s(I)(|I||J|)^{1/2}‖b‖)`
    pub local_oscillation: f64,
    /// `‖χ_I m_J b‖₂ / (s(I)s(J)|I|^{1/2}‖b‖)`
    pub slice_mean_l2: f64,
}

fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// One-variable dyadic BMO norm on `[0,1)` of cell values.
fn bmo_1d(values: &[f64]) -> f64 {
    let mut c = values.to_vec();
    forward_1d(&mut c, &mut Vec::new());
    let n = c.len();
    let mut energy: Vec<f64> = c.iter().map(|v| v * v).collect();
    for a in (1..n / 2).rev() {
        energy[a] += energy[2 * a] + energy[2 * a + 1];
    }
    (1..n).map(|a| energy[a] * (a.ilog2() as f64).exp2()).fold(0.0, f64::max).sqrt()
}

/// Growth ratios of `b` (extended by zero) over each rectangle.
pub fn local_growth_report(b: &GridFunction2D, rects: &[CellRect]) -> Result<Vec<GrowthRow>> {
    let depth = b.depth();
    let norm = bmo_d_norm_sq(&haar_forward_2d(b).hh_part(), None)?.norm_sq.sqrt();
    let (hs, ht) = ((-(depth.s as f64)).exp2(), (-(depth.t as f64)).exp2());
    let (n1, n2) = (depth.cells_s() as i64, depth.cells_t() as i64);
    let at =
        |i: i64, j: i64| if (0..n1).contains(&i) && (0..n2).contains(&j) { b.get(i as usize, j as usize) } else { 0.0 };
    let clip = |r: &Range<i64>, n: i64| r.start.max(0)..r.end.min(n).max(r.start.max(0));

    rects
        .iter()
        .map(|r| {
            if r.s.is_empty() || r.t.is_empty() {
                return Err(Error::DegenerateRectangle);
            }
            let (cs, ct) = ((r.s.end - r.s.start) as f64, (r.t.end - r.t.start) as f64);
            let (len_s, len_t) = (cs * hs, ct * ht);
            let (s_i, s_j) = (LocalGrowthFactor::interval(len_s), LocalGrowthFactor::interval(len_t));
            let (is, it) = (clip(&r.s, n1), clip(&r.t, n2));

            let mut sum = 0.0;
            let mut sq = 0.0;
            let mut osc = 0.0;
            let mut slice_sq = 0.0;
            for i in is.clone() {
                let row: Vec<f64> = it.clone().map(|j| at(i, j)).collect();
                let row_sum: f64 = row.iter().sum();
                let row_sq: f64 = row.iter().map(|v| v * v).sum();
                let m_j = row_sum / ct;
                sum += row_sum;
                sq += row_sq;
                osc += row_sq - ct * m_j * m_j;
                slice_sq += m_j * m_j;
            }
            let mean = sum / (cs * ct);
            let local_l2 = (sq * hs * ht).sqrt();
            let local_osc = (osc.max(0.0) * hs * ht).sqrt();
            let slice_l2 = (slice_sq * hs).sqrt();

            let slice: Vec<f64> = (0..n2).map(|j| is.clone().map(|i| at(i, j)).sum::<f64>() / cs).collect();
            let slice_bmo = bmo_1d(&slice);

            Ok(GrowthRow {
                rect: r.clone(),
                s_factor: s_i * s_j,
                mean: ratio(mean.abs(), s_i * s_j * norm),
                slice_mean_bmo: ratio(slice_bmo, s_i * norm),
                local_l2: ratio(local_l2, s_i * s_j * (len_s * len_t).sqrt() * norm),
                local_oscillation: ratio(local_osc, s_i * (len_s * len_t).sqrt() * norm),
                slice_mean_l2: ratio(slice_l2, s_i * s_j * len_s.sqrt() * norm),
            })
        })
        .collect()
}
