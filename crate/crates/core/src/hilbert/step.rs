//! Compactly supported step functions on ℝ and their Hilbert transform.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `f = Σ values[i]·χ_{[breakpoints[i], breakpoints[i+1])}`, zero elsewhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunction1D {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction1D {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            if !breakpoints.is_empty() {
                return Err(Error::InvalidInput("breakpoints given without values".into()));
            }
            return Ok(Self::zero());
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::InvalidInput("need exactly one more breakpoint than values".into()));
        }
        if breakpoints.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite step function data".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("breakpoints must be strictly increasing".into()));
        }
        Ok(Self { breakpoints, values })
    }

    pub fn zero() -> Self {
        Self { breakpoints: Vec::new(), values: Vec::new() }
    }

    /// `c·χ_{[a,b)}`.
    pub fn indicator(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(vec![a, b], vec![c])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Closed hull of the support, `None` for the zero function.
    pub fn support(&self) -> Option<(f64, f64)> {
        if self.values.is_empty() {
            None
        } else {
            Some((self.breakpoints[0], *self.breakpoints.last().unwrap()))
        }
    }

    pub fn is_breakpoint(&self, x: f64) -> bool {
        self.breakpoints.binary_search_by(|b| b.total_cmp(&x)).is_ok()
    }

    /// True when some breakpoint lies strictly inside `(a, b)`.
    pub fn jumps_inside(&self, a: f64, b: f64) -> bool {
        let i = self.breakpoints.partition_point(|&p| p <= a);
        i < self.breakpoints.len() && self.breakpoints[i] < b
    }

    /// Right-continuous evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let i = self.breakpoints.partition_point(|&p| p <= x);
        if i == 0 || i > self.values.len() {
            0.0
        } else {
            self.values[i - 1]
        }
    }

    /// `∫_a^b f`.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        let mut acc = 0.0;
        for (w, &v) in self.breakpoints.windows(2).zip(&self.values) {
            let lo = w[0].max(a);
            let hi = w[1].min(b);
            if hi > lo {
                acc += v * (hi - lo);
            }
        }
        acc
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.breakpoints.windows(2).zip(&self.values).map(|(w, v)| v * v * (w[1] - w[0])).sum()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { breakpoints: self.breakpoints.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn translate(&self, h: f64) -> Self {
        Self { breakpoints: self.breakpoints.iter().map(|b| b + h).collect(), values: self.values.clone() }
    }

    /// Build from jump events `(position, Δvalue)`; equal positions are merged.
    pub(crate) fn from_jumps(mut jumps: Vec<(f64, f64)>) -> Self {
        if jumps.is_empty() {
            return Self::zero();
        }
        jumps.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut breakpoints = Vec::new();
        let mut values = Vec::new();
        let mut level = 0.0;
        let mut i = 0;
        while i < jumps.len() {
            let x = jumps[i].0;
            while i < jumps.len() && jumps[i].0 == x {
                level += jumps[i].1;
                i += 1;
            }
            breakpoints.push(x);
            values.push(level);
        }
        values.pop();
        Self { breakpoints, values }
    }

    fn jumps(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.breakpoints.len());
        let mut prev = 0.0;
        for (i, &b) in self.breakpoints.iter().enumerate() {
            let v = self.values.get(i).copied().unwrap_or(0.0);
            out.push((b, v - prev));
            prev = v;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut j = self.jumps();
        j.extend(other.jumps());
        Self::from_jumps(j)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// `sup |f − g|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let d = self.sub(other);
        d.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `Hf(x) = (1/π) p.v.∫ f(y)/(x−y) dy = Σ_i v_i·(1/π) ln|(x−a_i)/(x−b_i)|`.
pub fn analytic_hilbert_step(f: &StepFunction1D, x: f64) -> Result<f64> {
    if f.is_breakpoint(x) {
        return Err(Error::EvaluationAtJump(x));
    }
    Ok(f.breakpoints.windows(2).zip(&f.values).map(|(w, v)| v * ((x - w[0]) / (x - w[1])).abs().ln()).sum::<f64>() / PI)
}
