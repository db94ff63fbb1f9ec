//! Monte-Carlo evaluation of `Hf(x) = c ∫_1^2 ∫ S^{α,r} f(x) dμ(α) dr/r`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{sample_grid_with, RSampling, RandomDyadicGrid};
use super::shift::grid_shift_eval;
use super::step::StepFunction1D;
use crate::error::{Error, Result};

/// The constant `c` in front of the averaged shifts for `S h_I = h_{I^+} − h_{I^-}`
/// with right-positive `h_I`: `4√2/π`. The normalized shift
/// `Ш h_I = 2^{-1/2}(h_{I^-} − h_{I^+})` with left-positive `h_I` equals `−S/√2`,
/// which turns `−8/π` into this value.
pub const HILBERT_CONSTANT: f64 = 4.0 * std::f64::consts::SQRT_2 / std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub n_samples: usize,
    pub seed: u64,
    pub k_coarse: u32,
    pub k_fine: u32,
}

impl McConfig {
    pub fn new(n_samples: usize, seed: u64) -> Self {
        Self { n_samples, seed, k_coarse: 12, k_fine: 12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
}

/// Grid number `index` of the stream defined by `seed`.
pub fn stream_grid(seed: u64, index: u64, k_coarse: u32, k_fine: u32) -> Result<RandomDyadicGrid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    sample_grid_with(&mut rng, k_coarse, k_fine, RSampling::LogUniform)
}

pub(crate) fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Estimates of `Hf(x_i)` with standard errors, one per point.
pub fn mc_hilbert(f: &StepFunction1D, xs: &[f64], cfg: &McConfig) -> Result<Vec<McEstimate>> {
    if let Some(&x) = xs.iter().find(|&&x| f.is_breakpoint(x)) {
        return Err(Error::EvaluationAtJump(x));
    }
    if cfg.n_samples < 2 {
        return Err(Error::InvalidInput("need at least two samples".into()));
    }
    let n = cfg.n_samples;
    let samples: Vec<Vec<f64>> = (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let g = stream_grid(cfg.seed, i, cfg.k_coarse, cfg.k_fine)?;
            Ok(xs.iter().map(|&x| grid_shift_eval(f, &g, x)).collect())
        })
        .collect::<Result<_>>()?;
    let scale = HILBERT_CONSTANT * std::f64::consts::LN_2;
    Ok((0..xs.len())
        .map(|k| {
            let col: Vec<f64> = samples.iter().map(|s| s[k]).collect();
            let mean = pairwise_sum(&col) / n as f64;
            let dev: Vec<f64> = col.iter().map(|v| (v - mean).powi(2)).collect();
            let var = pairwise_sum(&dev) / (n - 1) as f64;
            McEstimate { estimate: scale * mean, stderr: scale.abs() * (var / n as f64).sqrt() }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_function_gives_zero() {
        let est = mc_hilbert(&StepFunction1D::zero(), &[0.3, 2.0], &McConfig::new(10, 1)).unwrap();
        assert!(est.iter().all(|e| e.estimate == 0.0 && e.stderr == 0.0));
    }

    #[test]
    fn rejects_jump_points() {
        let f = StepFunction1D::indicator(0.0, 1.0, 1.0).unwrap();
        assert_eq!(mc_hilbert(&f, &[1.0], &McConfig::new(10, 1)), Err(Error::EvaluationAtJump(1.0)));
    }

    #[test]
    fn reproducible() {
        let f = StepFunction1D::indicator(0.0, 1.0, 1.0).unwrap();
        let cfg = McConfig { n_samples: 64, seed: 5, k_coarse: 8, k_fine: 8 };
        assert_eq!(mc_hilbert(&f, &[2.0], &cfg).unwrap(), mc_hilbert(&f, &[2.0], &cfg).unwrap());
    }

    #[test]
    fn agrees_with_the_analytic_oracle() {
        let f = StepFunction1D::indicator(0.0, 1.0, 1.0).unwrap();
        let xs = [-0.5, 0.25, 1.5, 2.0];
        let est = mc_hilbert(&f, &xs, &McConfig::new(500, 17)).unwrap();
        for (x, e) in xs.iter().zip(&est) {
            let exact = crate::hilbert::analytic_hilbert_step(&f, *x).unwrap();
            assert!((e.estimate - exact).abs() <= 3.0 * e.stderr + 0.01, "x = {x}: {e:?} vs {exact}");
        }
    }
}
