//! Separable evaluation of `B_{ε,δ,β}(φ, f) = Σ_R ⟨φ,h^ε_R⟩⟨f,h^δ_R⟩ h^β_R`.
//!
//! Each pairing factors over the two axes: a `0` entry pairs with `h_I`
//! (Haar coefficient), a `1` entry with `χ_I/|I|` (interval mean). Output
//! synthesis is likewise per axis.

use ndarray::{Array2, Axis};

use crate::dyadic::{forward_axis, inverse_axis, Depth};

/// Replace each lane along `axis` by its heap-ordered interval means
/// (slot 0 holds the mean over `[0,1)`), computed from prefix sums.
fn means_axis(values: &mut Array2<f64>, axis: usize) {
    let mut prefix = Vec::new();
    for mut lane in values.lanes_mut(Axis(axis)) {
        let n = lane.len();
        prefix.clear();
        prefix.push(0.0);
        let mut acc = 0.0;
        for &v in lane.iter() {
            acc += v;
            prefix.push(acc);
        }
        let depth = n.trailing_zeros() as usize;
        lane[0] = acc / n as f64;
        for l in 0..depth {
            let width = n >> l;
            for k in 0..(1usize << l) {
                lane[(1 << l) + k] = (prefix[(k + 1) * width] - prefix[k * width]) / width as f64;
            }
        }
    }
}

/// Synthesize `Σ_I c_I χ_I/|I|` along `axis` from heap-ordered `c`.
fn box_synth_axis(values: &mut Array2<f64>, axis: usize) {
    let mut buf = Vec::new();
    for mut lane in values.lanes_mut(Axis(axis)) {
        let n = lane.len();
        let depth = n.trailing_zeros() as usize;
        buf.clear();
        buf.resize(n, lane[0]);
        for (x, out) in buf.iter_mut().enumerate() {
            for l in 0..depth {
                *out += lane[(1 << l) + (x >> (depth - l))] * (l as f64).exp2();
            }
        }
        for (dst, src) in lane.iter_mut().zip(&buf) {
            *dst = *src;
        }
    }
}

/// Pairings `⟨g, h^{e0}_I ⊗ h^{e1}_J⟩` for all heap slots.
pub(crate) fn pairings(grid: &Array2<f64>, e: [u8; 2]) -> Array2<f64> {
    let mut out = grid.clone();
    for (axis, &kind) in e.iter().enumerate() {
        if kind == 0 {
            forward_axis(&mut out, axis);
        } else {
            means_axis(&mut out, axis);
        }
    }
    out
}

/// Grid values of `Σ_{a,b} c[a,b] h^{β0}_a ⊗ h^{β1}_b`.
pub(crate) fn synthesize(mut coeffs: Array2<f64>, beta: [u8; 2]) -> Array2<f64> {
    for (axis, &kind) in beta.iter().enumerate() {
        if kind == 0 {
            inverse_axis(&mut coeffs, axis);
        } else {
            box_synth_axis(&mut coeffs, axis);
        }
    }
    coeffs
}

/// The bilinear form on grid values, summed over hh rectangles only.
pub(crate) fn bilinear(
    depth: Depth,
    phi: &Array2<f64>,
    f: &Array2<f64>,
    eps: [u8; 2],
    delta: [u8; 2],
    beta: [u8; 2],
) -> Array2<f64> {
    debug_assert_eq!(phi.dim(), depth.shape());
    let a = pairings(phi, eps);
    let b = pairings(f, delta);
    let mut c = a * b;
    c.row_mut(0).fill(0.0);
    c.column_mut(0).fill(0.0);
    synthesize(c, beta)
}
