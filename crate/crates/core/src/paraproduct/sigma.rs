//! `σ_k` and `σ¹_k`: truncation at generation `k` with ℓ² aggregation of
//! the finer half-trees onto the boundary generation.

use ndarray::Array2;

use crate::dyadic::{subtree_energy, GenerationIndex, HaarSpectrum2D};
use crate::error::{Error, Result};

fn level_of(slot: usize) -> usize {
    slot.ilog2() as usize
}

/// The two-parameter `σ_k`. Requires `k.j1 ≤ J1` and `k.j2 ≤ J2`; `k = J`
/// keeps every hh coefficient.
pub fn sigma_k(b: &HaarSpectrum2D, k: GenerationIndex) -> Result<HaarSpectrum2D> {
    let depth = b.depth();
    if k.j1 > depth.s || k.j2 > depth.t {
        return Err(Error::OutOfRange(format!(
            "generation ({}, {}) beyond depth ({}, {})",
            k.j1, k.j2, depth.s, depth.t
        )));
    }
    let c = b.coeffs();
    let e_s = subtree_energy(c, true, false);
    let e_t = subtree_energy(c, false, true);
    let e_st = subtree_energy(c, true, true);
    let (n1, n2) = depth.shape();
    let mut out = Array2::zeros(depth.shape());
    for a in 1..n1 {
        let l1 = level_of(a);
        for bb in 1..n2 {
            let l2 = level_of(bb);
            out[[a, bb]] = match (l1.cmp(&k.j1), l2.cmp(&k.j2)) {
                (std::cmp::Ordering::Less, std::cmp::Ordering::Less) => c[[a, bb]],
                (std::cmp::Ordering::Less, std::cmp::Ordering::Equal) => e_t[[a, bb]].sqrt(),
                (std::cmp::Ordering::Equal, std::cmp::Ordering::Less) => e_s[[a, bb]].sqrt(),
                (std::cmp::Ordering::Equal, std::cmp::Ordering::Equal) => e_st[[a, bb]].sqrt(),
                _ => 0.0,
            };
        }
    }
    Ok(HaarSpectrum2D::from_coeffs_unchecked(depth, out))
}

/// The one-parameter `σ¹_k`, aggregating in `s` only. `k ≥ J1` is the
/// identity on the hh block.
pub fn sigma1_k(b: &HaarSpectrum2D, k: usize) -> HaarSpectrum2D {
    let depth = b.depth();
    let c = b.coeffs();
    let e_s = subtree_energy(c, true, false);
    let (n1, n2) = depth.shape();
    let mut out = Array2::zeros(depth.shape());
    for a in 1..n1 {
        let l1 = level_of(a);
        if l1 > k {
            continue;
        }
        for bb in 1..n2 {
            out[[a, bb]] = if l1 < k { c[[a, bb]] } else { e_s[[a, bb]].sqrt() };
        }
    }
    HaarSpectrum2D::from_coeffs_unchecked(depth, out)
}
