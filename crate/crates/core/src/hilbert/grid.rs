//! Translated and dilated dyadic systems `D^{α,r}` on ℝ.
//!
//! Level-`j` intervals are `r·(2^{-j}([0,1) + k) + x_j) + origin` with
//! `x_j = Σ_{j<i≤K_fine} 2^{-i} α_i`, for `j ∈ [−K_coarse, K_fine]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the dilation `r ∈ [1,2)` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RSampling {
    /// Density `1/(r ln 2)`: `r = 2^u`, `u` uniform on `[0,1)`.
    LogUniform,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomDyadicGrid {
    k_coarse: i32,
    k_fine: i32,
    /// `α_i` for `i ∈ [−K_coarse, K_fine]`
    bits: Vec<u8>,
    r: f64,
    origin: f64,
    /// `x_j` for `j ∈ [−K_coarse, K_fine]`
    offsets: Vec<f64>,
}

/// A grid interval in real coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridInterval {
    pub level: i32,
    pub start: f64,
    pub len: f64,
}

impl GridInterval {
    pub fn end(&self) -> f64 {
        self.start + self.len
    }

    pub fn mid(&self) -> f64 {
        self.start + 0.5 * self.len
    }

    pub fn contains(&self, x: f64) -> bool {
        self.start <= x && x < self.end()
    }
}

impl RandomDyadicGrid {
    pub fn new(k_coarse: u32, k_fine: u32, bits: Vec<u8>, r: f64, origin: f64) -> Result<Self> {
        let (kc, kf) = (k_coarse as i32, k_fine as i32);
        if k_coarse < 1 || k_fine < 1 || k_coarse > 40 || k_fine > 40 {
            return Err(Error::InvalidInput("K_coarse and K_fine must lie in 1..=40".into()));
        }
        if bits.len() != (kc + kf + 1) as usize || bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidInput("need one 0/1 bit per level".into()));
        }
        if !(1.0..2.0).contains(&r) || !origin.is_finite() {
            return Err(Error::InvalidInput(format!("dilation r = {r} outside [1,2)")));
        }
        let mut offsets = vec![0.0; bits.len()];
        for j in (-kc..kf).rev() {
            let idx = (j + kc) as usize;
            offsets[idx] = offsets[idx + 1] + (-(j + 1) as f64).exp2() * bits[idx + 1] as f64;
        }
        Ok(Self { k_coarse: kc, k_fine: kf, bits, r, origin, offsets })
    }

    /// The standard dyadic grid with the given level range.
    pub fn standard(k_coarse: u32, k_fine: u32) -> Result<Self> {
        Self::new(k_coarse, k_fine, vec![0; (k_coarse + k_fine + 1) as usize], 1.0, 0.0)
    }

    pub fn k_coarse(&self) -> i32 {
        self.k_coarse
    }

    pub fn k_fine(&self) -> i32 {
        self.k_fine
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    /// Half-width `L = 2^{K_coarse}` of the working window `[−L, L]`.
    pub fn window(&self) -> f64 {
        (self.k_coarse as f64).exp2()
    }

    /// Same grid translated by `h`.
    pub fn translated(&self, h: f64) -> Self {
        Self { origin: self.origin + h, ..self.clone() }
    }

    fn index_at(&self, level: i32, x: f64) -> f64 {
        let off = self.offsets[(level + self.k_coarse) as usize];
        let w = (-level as f64).exp2();
        (((x - self.origin) / self.r - off) / w).floor()
    }

    /// The `k`-th interval of level `j`.
    pub fn interval(&self, level: i32, k: f64) -> GridInterval {
        debug_assert!((-self.k_coarse..=self.k_fine).contains(&level));
        let off = self.offsets[(level + self.k_coarse) as usize];
        let w = (-level as f64).exp2();
        GridInterval { level, start: self.r * (k * w + off) + self.origin, len: self.r * w }
    }

    /// The level-`j` interval containing `x`.
    pub fn interval_at(&self, level: i32, x: f64) -> GridInterval {
        let k = self.index_at(level, x);
        let i = self.interval(level, k);
        // guard against rounding at the boundary
        if x < i.start {
            self.interval(level, k - 1.0)
        } else if x >= i.end() {
            self.interval(level, k + 1.0)
        } else {
            i
        }
    }

    /// All level-`j` intervals meeting `[a, b)`.
    pub fn intervals_meeting(&self, level: i32, a: f64, b: f64) -> Vec<GridInterval> {
        let mut out = Vec::new();
        let mut k = self.index_at(level, self.interval_at(level, a).mid());
        loop {
            let i = self.interval(level, k);
            if i.start >= b {
                break;
            }
            out.push(i);
            k += 1.0;
        }
        out
    }
}

/// Fair independent bits per level and `r` per `r_sampling`; deterministic
/// in `seed`.
pub fn sample_grid(seed: u64, k_coarse: u32, k_fine: u32, r_sampling: RSampling) -> Result<RandomDyadicGrid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_grid_with(&mut rng, k_coarse, k_fine, r_sampling)
}

pub(crate) fn sample_grid_with<R: Rng>(
    rng: &mut R,
    k_coarse: u32,
    k_fine: u32,
    r_sampling: RSampling,
) -> Result<RandomDyadicGrid> {
    let bits = (0..k_coarse + k_fine + 1).map(|_| rng.random_range(0..2u8)).collect();
    let r = match r_sampling {
        RSampling::LogUniform => rng.random::<f64>().exp2(),
        RSampling::Fixed(r) => r,
    };
    RandomDyadicGrid::new(k_coarse, k_fine, bits, r, 0.0)
}
