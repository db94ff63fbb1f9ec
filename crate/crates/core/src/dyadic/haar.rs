//! Orthonormal Haar analysis on `[0,1)` and `[0,1)²`.
//!
//! One-variable coefficients are stored in heap order: slot 0 holds the
//! coefficient of the constant function, slot `2^l + k` the coefficient of
//! `h_I` for `I = [k·2^-l, (k+1)·2^-l)`. With `I^+` the right half,
//! `h_I = |I|^{-1/2}(χ_{I^+} − χ_{I^-})`.

use ndarray::{Array2, Axis};

use super::grid::{Depth, GridFunction2D};
use super::interval::{DyadicInterval, DyadicRect};
use crate::error::{Error, Result};

/// Forward transform of cell values (length `2^J`) into heap-ordered
/// coefficients, in place.
pub(crate) fn forward_1d(v: &mut [f64], scratch: &mut Vec<f64>) {
    let n = v.len();
    debug_assert!(n.is_power_of_two());
    scratch.clear();
    scratch.extend_from_slice(v);
    let mut len = n;
    while len > 1 {
        let half = len / 2;
        let level = half.trailing_zeros() as i32;
        let scale = (-(level as f64) / 2.0 - 1.0).exp2();
        for k in 0..half {
            let left = scratch[2 * k];
            let right = scratch[2 * k + 1];
            v[half + k] = scale * (right - left);
            scratch[k] = 0.5 * (left + right);
        }
        len = half;
    }
    v[0] = scratch[0];
}

/// Inverse of [`forward_1d`], in place.
pub(crate) fn inverse_1d(c: &mut [f64], scratch: &mut Vec<f64>) {
    let n = c.len();
    debug_assert!(n.is_power_of_two());
    scratch.clear();
    scratch.resize(n, 0.0);
    scratch[0] = c[0];
    let mut len = 1;
    while len < n {
        let level = len.trailing_zeros() as i32;
        let scale = (level as f64 / 2.0).exp2();
        for k in (0..len).rev() {
            let mean = scratch[k];
            let d = c[len + k] * scale;
            scratch[2 * k] = mean - d;
            scratch[2 * k + 1] = mean + d;
        }
        len *= 2;
    }
    c.copy_from_slice(scratch);
}

fn apply_along(values: &mut Array2<f64>, axis: usize, f: fn(&mut [f64], &mut Vec<f64>)) {
    let mut scratch = Vec::new();
    let mut buf = Vec::new();
    for mut lane in values.lanes_mut(Axis(axis)) {
        buf.clear();
        buf.extend(lane.iter().copied());
        f(&mut buf, &mut scratch);
        for (dst, src) in lane.iter_mut().zip(&buf) {
            *dst = *src;
        }
    }
}

/// Transform along one axis only (0 = s, 1 = t).
pub(crate) fn forward_axis(values: &mut Array2<f64>, axis: usize) {
    apply_along(values, axis, forward_1d);
}

pub(crate) fn inverse_axis(values: &mut Array2<f64>, axis: usize) {
    apply_along(values, axis, inverse_1d);
}

/// Coefficients over the full tensor Haar basis at fixed depth.
///
/// `coeffs[[a, b]]` is the coefficient of `e_a ⊗ e_b` where `e_0 = 𝟙` and
/// `e_a = h_I` for `a = I.heap_index()`. The blocks are
/// `cc = [0,0]`, `hc = [a≥1, 0]`, `ch = [0, b≥1]`, `hh = [a≥1, b≥1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HaarSpectrum2D {
    depth: Depth,
    coeffs: Array2<f64>,
}

impl HaarSpectrum2D {
    pub fn zeros(depth: Depth) -> Self {
        Self { depth, coeffs: Array2::zeros(depth.shape()) }
    }

    pub fn from_coeffs(depth: Depth, coeffs: Array2<f64>) -> Result<Self> {
        if coeffs.dim() != depth.shape() {
            return Err(Error::InvalidInput("coefficient array does not match depth".into()));
        }
        if coeffs.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("spectrum contains non-finite values".into()));
        }
        Ok(Self { depth, coeffs })
    }

    pub(crate) fn from_coeffs_unchecked(depth: Depth, coeffs: Array2<f64>) -> Self {
        Self { depth, coeffs }
    }

    /// Spectrum with a single unit coefficient on `h_R`.
    pub fn haar_atom(depth: Depth, rect: DyadicRect) -> Result<Self> {
        let mut c = Self::zeros(depth);
        c.set_hh(rect, 1.0)?;
        Ok(c)
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    pub fn coeffs(&self) -> &Array2<f64> {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut Array2<f64> {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Array2<f64> {
        self.coeffs
    }

    pub fn cc(&self) -> f64 {
        self.coeffs[[0, 0]]
    }

    pub fn set_cc(&mut self, v: f64) {
        self.coeffs[[0, 0]] = v;
    }

    fn check_s(&self, i: &DyadicInterval) -> Result<()> {
        if i.level() >= self.depth.s {
            return Err(Error::OutOfRange(format!("s-interval at level {}", i.level())));
        }
        Ok(())
    }

    fn check_t(&self, j: &DyadicInterval) -> Result<()> {
        if j.level() >= self.depth.t {
            return Err(Error::OutOfRange(format!("t-interval at level {}", j.level())));
        }
        Ok(())
    }

    pub fn hc(&self, i: DyadicInterval) -> Result<f64> {
        self.check_s(&i)?;
        Ok(self.coeffs[[i.heap_index(), 0]])
    }

    pub fn set_hc(&mut self, i: DyadicInterval, v: f64) -> Result<()> {
        self.check_s(&i)?;
        self.coeffs[[i.heap_index(), 0]] = v;
        Ok(())
    }

    pub fn ch(&self, j: DyadicInterval) -> Result<f64> {
        self.check_t(&j)?;
        Ok(self.coeffs[[0, j.heap_index()]])
    }

    pub fn set_ch(&mut self, j: DyadicInterval, v: f64) -> Result<()> {
        self.check_t(&j)?;
        self.coeffs[[0, j.heap_index()]] = v;
        Ok(())
    }

    pub fn hh(&self, r: DyadicRect) -> Result<f64> {
        self.check_s(&r.s)?;
        self.check_t(&r.t)?;
        Ok(self.coeffs[[r.s.heap_index(), r.t.heap_index()]])
    }

    pub fn set_hh(&mut self, r: DyadicRect, v: f64) -> Result<()> {
        self.check_s(&r.s)?;
        self.check_t(&r.t)?;
        self.coeffs[[r.s.heap_index(), r.t.heap_index()]] = v;
        Ok(())
    }

    /// `(R, f_R)` over all hh rectangles, in heap order.
    pub fn hh_iter(&self) -> impl Iterator<Item = (DyadicRect, f64)> + '_ {
        let (n1, n2) = self.depth.shape();
        (1..n1).flat_map(move |a| {
            (1..n2).map(move |b| {
                let rect = DyadicRect::new(
                    DyadicInterval::from_heap_index(a).unwrap(),
                    DyadicInterval::from_heap_index(b).unwrap(),
                );
                (rect, self.coeffs[[a, b]])
            })
        })
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|v| v * v).sum()
    }

    pub fn hh_norm_sq(&self) -> f64 {
        self.hh_iter().map(|(_, v)| v * v).sum()
    }

    /// Copy with the cc/hc/ch blocks zeroed (the `L²_0` component).
    pub fn hh_part(&self) -> Self {
        let mut out = self.clone();
        out.coeffs.row_mut(0).fill(0.0);
        out.coeffs.column_mut(0).fill(0.0);
        out
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { depth: self.depth, coeffs: &self.coeffs * c }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.depth.ensure_same(&other.depth)?;
        Ok(Self { depth: self.depth, coeffs: &self.coeffs + &other.coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.depth.ensure_same(&other.depth)?;
        Ok(Self { depth: self.depth, coeffs: &self.coeffs - &other.coeffs })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.depth.ensure_same(&other.depth)?;
        Ok(self.coeffs.iter().zip(other.coeffs.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    /// Same coefficients viewed at a finer depth (new finer slots are zero).
    pub fn embed(&self, target: Depth) -> Result<Self> {
        if target.s < self.depth.s || target.t < self.depth.t {
            return Err(Error::InvalidInput("embedding target is coarser".into()));
        }
        let mut coeffs = Array2::zeros(target.shape());
        let (n1, n2) = self.depth.shape();
        coeffs.slice_mut(ndarray::s![..n1, ..n2]).assign(&self.coeffs);
        Ok(Self { depth: target, coeffs })
    }
}

pub fn haar_forward_2d(f: &GridFunction2D) -> HaarSpectrum2D {
    let mut coeffs = f.values().clone();
    forward_axis(&mut coeffs, 0);
    forward_axis(&mut coeffs, 1);
    HaarSpectrum2D { depth: f.depth(), coeffs }
}

pub fn haar_inverse_2d(c: &HaarSpectrum2D) -> GridFunction2D {
    let mut values = c.coeffs.clone();
    inverse_axis(&mut values, 0);
    inverse_axis(&mut values, 1);
    GridFunction2D::from_array_unchecked(c.depth, values)
}
