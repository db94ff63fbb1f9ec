//! Rectangular BMO, the LMO family and the square-function `H¹` norm.

use rayon::prelude::*;

use super::closure::bmo_d_norm_sq;
use crate::dyadic::{
    apply_projection, haar_forward_2d, square_function, subtree_energy, DyadicInterval, DyadicRect, GenerationIndex,
    GridFunction2D, HaarSpectrum2D, ProjectionSelector,
};
use crate::error::Result;

/// `max_R |R|^{-1} Σ_{Q⊆R} |φ_Q|²` over dyadic rectangles.
pub fn bmo_rect_norm_sq(phi: &HaarSpectrum2D) -> f64 {
    let depth = phi.depth();
    let e = subtree_energy(phi.coeffs(), true, true);
    let (n1, n2) = depth.shape();
    let mut best = 0.0f64;
    for a in 1..n1 {
        let area_s = (-(a.ilog2() as f64)).exp2();
        for b in 1..n2 {
            let area_t = (-(b.ilog2() as f64)).exp2();
            best = best.max(e[[a, b]] / (area_s * area_t));
        }
    }
    best
}

/// `max_j (j1+1)(j2+1)·‖Q_j φ‖_{BMO^d}`.
pub fn lmo_d_norm(phi: &HaarSpectrum2D) -> Result<f64> {
    let depth = phi.depth();
    let gens: Vec<GenerationIndex> =
        (0..depth.s).flat_map(|j1| (0..depth.t).map(move |j2| GenerationIndex::new(j1, j2))).collect();
    let values = gens
        .par_iter()
        .map(|&j| {
            let q = apply_projection(phi, &ProjectionSelector::Q(j))?;
            let norm = bmo_d_norm_sq(&q, None)?.norm_sq.sqrt();
            Ok(((j.j1 + 1) * (j.j2 + 1)) as f64 * norm)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(values.into_iter().fold(0.0, f64::max))
}

/// `max_i (i+1)·‖Q^{(axis)}_i φ‖_{BMO^d}`, `axis ∈ {1, 2}`.
pub fn lmo_directional_norm(phi: &HaarSpectrum2D, axis: u8) -> Result<f64> {
    let depth = phi.depth();
    let (levels, make): (usize, fn(usize) -> ProjectionSelector) = match axis {
        1 => (depth.s, ProjectionSelector::Q1),
        2 => (depth.t, ProjectionSelector::Q2),
        _ => return Err(crate::Error::InvalidInput(format!("axis must be 1 or 2, got {axis}"))),
    };
    let values = (0..levels)
        .into_par_iter()
        .map(|i| {
            let q = apply_projection(phi, &make(i))?;
            Ok((i + 1) as f64 * bmo_d_norm_sq(&q, None)?.norm_sq.sqrt())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(values.into_iter().fold(0.0, f64::max))
}

/// `ln(4/|I|)` for a dyadic interval.
pub fn log_weight(i: &DyadicInterval) -> f64 {
    std::f64::consts::LN_2 * (i.level() as f64 + 2.0)
}

/// Log-weighted local Carleson norm. An axis with `beta = 1` is taken to be
/// the whole circle with weight 1; `beta = (0,0)` is the LMO characterization
/// and `beta = (1,1)` recovers `‖φ‖²_{BMO^d}`.
pub fn lmo_beta_char_norm(phi: &HaarSpectrum2D, beta: [u8; 2]) -> Result<f64> {
    if beta.iter().any(|&b| b > 1) {
        return Err(crate::Error::InvalidInput("beta entries must be 0 or 1".into()));
    }
    let depth = phi.depth();
    let intervals = |fixed: bool, levels: usize| -> Vec<DyadicInterval> {
        if fixed {
            vec![DyadicInterval::unit()]
        } else {
            (0..levels).flat_map(DyadicInterval::generation).collect()
        }
    };
    let is = intervals(beta[0] == 1, depth.s);
    let js = intervals(beta[1] == 1, depth.t);
    let rects: Vec<DyadicRect> = is.iter().flat_map(|&i| js.iter().map(move |&j| DyadicRect::new(i, j))).collect();
    let values = rects
        .par_iter()
        .map(|r| {
            let w_s = if beta[0] == 1 { 1.0 } else { log_weight(&r.s).powi(2) };
            let w_t = if beta[1] == 1 { 1.0 } else { log_weight(&r.t).powi(2) };
            Ok(w_s * w_t * bmo_d_norm_sq(phi, Some(*r))?.norm_sq)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(values.into_iter().fold(0.0, f64::max))
}

/// `max_{R, Ω⊆R} (ln 4/|I|)²(ln 4/|J|)² |Ω|^{-1} Σ_{Q⊆Ω} |φ_Q|²`.
pub fn lmo_char_norm(phi: &HaarSpectrum2D) -> Result<f64> {
    lmo_beta_char_norm(phi, [0, 0])
}

/// `‖S[f]‖_{L¹}`.
pub fn h1_norm(f: &GridFunction2D) -> f64 {
    square_function(&haar_forward_2d(f)).l1_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Depth;
    use crate::norms::bmo_d_norm_sq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const LN4: f64 = 2.0 * std::f64::consts::LN_2;

    fn r0() -> DyadicRect {
        DyadicRect::new(DyadicInterval::new(1, 0).unwrap(), DyadicInterval::new(1, 0).unwrap())
    }

    fn random(d: Depth, seed: u64) -> HaarSpectrum2D {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        haar_forward_2d(&GridFunction2D::from_fn(d, |_, _| rng.random_range(-1.0..1.0)).unwrap())
    }

    #[test]
    fn examples_on_atoms() {
        let d = Depth::new(2, 2).unwrap();
        let unit = HaarSpectrum2D::haar_atom(d, DyadicRect::unit()).unwrap();
        let quarter = HaarSpectrum2D::haar_atom(d, r0()).unwrap();
        assert!((bmo_rect_norm_sq(&unit) - 1.0).abs() < 1e-15);
        assert!((bmo_rect_norm_sq(&quarter) - 4.0).abs() < 1e-12);
        assert!((lmo_d_norm(&unit).unwrap() - 1.0).abs() < 1e-12);
        assert!((lmo_d_norm(&quarter).unwrap() - 8.0).abs() < 1e-12);
        assert!((lmo_directional_norm(&unit, 1).unwrap() - 1.0).abs() < 1e-12);
        assert!((lmo_directional_norm(&quarter, 1).unwrap() - 4.0).abs() < 1e-12);
        assert!((lmo_char_norm(&unit).unwrap() - LN4.powi(4)).abs() < 1e-12);
        assert!((lmo_beta_char_norm(&unit, [0, 1]).unwrap() - LN4.powi(2)).abs() < 1e-12);
        let zero = HaarSpectrum2D::zeros(d);
        assert_eq!(lmo_d_norm(&zero).unwrap(), 0.0);
        assert_eq!(lmo_char_norm(&zero).unwrap(), 0.0);
        assert_eq!(lmo_directional_norm(&zero, 2).unwrap(), 0.0);
        assert!(lmo_directional_norm(&zero, 3).is_err());
    }

    #[test]
    fn beta_one_one_is_bmo_and_rect_below_open() {
        let d = Depth::new(3, 2).unwrap();
        for seed in 0..10 {
            let phi = random(d, seed);
            let bmo = bmo_d_norm_sq(&phi, None).unwrap().norm_sq;
            assert!((lmo_beta_char_norm(&phi, [1, 1]).unwrap() - bmo).abs() < 1e-14 * bmo.max(1.0));
            assert!(bmo_rect_norm_sq(&phi) <= bmo * (1.0 + 1e-12));
        }
    }

    #[test]
    fn h1_examples() {
        let d = Depth::new(1, 1).unwrap();
        let atom = crate::dyadic::haar_inverse_2d(&HaarSpectrum2D::haar_atom(d, DyadicRect::unit()).unwrap());
        assert!((h1_norm(&atom) - 1.0).abs() < 1e-15);
        assert_eq!(h1_norm(&GridFunction2D::zeros(d)), 0.0);
        // χ_{[0,½)²} with both one-variable means removed is ¼ h⊗h
        let chi = GridFunction2D::from_rows(d, &[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let centered = crate::dyadic::haar_inverse_2d(&haar_forward_2d(&chi).hh_part());
        assert!((h1_norm(&centered) - 0.25).abs() < 1e-15);
    }
}
