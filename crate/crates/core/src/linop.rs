//! Dense operators over the tensor Haar basis at fixed depth.
//!
//! Basis order: `cc`, then `hc` and `ch` in heap order, then `hh` sorted
//! lexicographically by `(l1, l2, k1, k2)` (generation, then index).

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dyadic::{haar_forward_2d, haar_inverse_2d, Depth, GridFunction2D, HaarSpectrum2D};
use crate::error::{Error, Result};

/// Largest supported matrix dimension (depth `J1 + J2 ≤ 8`).
pub const MAX_DIM: usize = 256;

const POWER_TOL: f64 = 1e-10;
const POWER_MAX_ITER: usize = 10_000;
const RESTART_SEED: u64 = 0x5eed_0001;

fn level(slot: usize) -> usize {
    if slot == 0 {
        0
    } else {
        slot.ilog2() as usize
    }
}

/// Heap slots `(a, b)` in basis order.
pub fn basis_order(depth: Depth) -> Vec<(usize, usize)> {
    let (n1, n2) = depth.shape();
    let mut order = vec![(0, 0)];
    order.extend((1..n1).map(|a| (a, 0)));
    order.extend((1..n2).map(|b| (0, b)));
    let mut hh: Vec<(usize, usize)> = (1..n1).flat_map(|a| (1..n2).map(move |b| (a, b))).collect();
    hh.sort_by_key(|&(a, b)| {
        let (l1, l2) = (level(a), level(b));
        (l1, l2, a - (1 << l1), b - (1 << l2))
    });
    order.extend(hh);
    order
}

fn check_dim(depth: Depth) -> Result<usize> {
    let dim = depth.cell_count();
    if dim > MAX_DIM {
        return Err(Error::OutOfRange(format!("operator dimension {dim} exceeds {MAX_DIM}")));
    }
    Ok(dim)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    depth: Depth,
    matrix: DMatrix<f64>,
}

/// Outcome of one power-iteration run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIterate {
    pub sigma: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl DenseOperator {
    pub fn from_matrix(depth: Depth, matrix: DMatrix<f64>) -> Result<Self> {
        let dim = check_dim(depth)?;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::InvalidInput(format!("matrix must be {dim}×{dim}")));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { depth, matrix })
    }

    pub fn identity(depth: Depth) -> Result<Self> {
        let dim = check_dim(depth)?;
        Ok(Self { depth, matrix: DMatrix::identity(dim, dim) })
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn to_vector(c: &HaarSpectrum2D) -> DVector<f64> {
        let coeffs = c.coeffs();
        DVector::from_iterator(coeffs.len(), basis_order(c.depth()).into_iter().map(|ab| coeffs[ab]))
    }

    pub fn from_vector(depth: Depth, v: &DVector<f64>) -> HaarSpectrum2D {
        let mut out = HaarSpectrum2D::zeros(depth);
        for (i, ab) in basis_order(depth).into_iter().enumerate() {
            out.coeffs_mut()[ab] = v[i];
        }
        out
    }

    pub fn apply(&self, c: &HaarSpectrum2D) -> Result<HaarSpectrum2D> {
        self.depth.ensure_same(&c.depth())?;
        Ok(Self::from_vector(self.depth, &(&self.matrix * Self::to_vector(c))))
    }

    pub fn apply_grid(&self, f: &GridFunction2D) -> Result<GridFunction2D> {
        Ok(haar_inverse_2d(&self.apply(&haar_forward_2d(f))?))
    }

    pub fn transpose(&self) -> Self {
        Self { depth: self.depth, matrix: self.matrix.transpose() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.depth.ensure_same(&other.depth)?;
        Ok(Self { depth: self.depth, matrix: &self.matrix * &other.matrix })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.depth.ensure_same(&other.depth)?;
        Ok(Self { depth: self.depth, matrix: &self.matrix + &other.matrix })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.depth.ensure_same(&other.depth)?;
        Ok(Self { depth: self.depth, matrix: &self.matrix - &other.matrix })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { depth: self.depth, matrix: &self.matrix * c }
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.depth.ensure_same(&other.depth)?;
        Ok((&self.matrix - &other.matrix).amax())
    }

    /// Largest singular value by power iteration on `AᵀA` from `start`.
    pub fn power_iteration(&self, start: &DVector<f64>) -> PowerIterate {
        let a = &self.matrix;
        let mut v = start.normalize();
        let mut mu = 0.0;
        for it in 1..=POWER_MAX_ITER {
            let w = a * &v;
            let u = a.tr_mul(&w);
            mu = w.norm_squared();
            if mu == 0.0 {
                return PowerIterate { sigma: 0.0, iterations: it, converged: true };
            }
            let residual = (&u - &v * mu).norm();
            if residual <= POWER_TOL * mu {
                return PowerIterate { sigma: mu.sqrt(), iterations: it, converged: true };
            }
            let norm = u.norm();
            if norm == 0.0 {
                return PowerIterate { sigma: 0.0, iterations: it, converged: true };
            }
            v = u / norm;
        }
        PowerIterate { sigma: mu.sqrt(), iterations: POWER_MAX_ITER, converged: false }
    }

    /// Deterministic start plus one seeded restart; larger Rayleigh quotient wins.
    pub fn power_norm(&self) -> PowerIterate {
        let n = self.dim();
        let start = DVector::from_fn(n, |i, _| 1.0 + (i as f64 + 1.0).sqrt().fract());
        let mut rng = ChaCha8Rng::seed_from_u64(RESTART_SEED);
        let restart = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let a = self.power_iteration(&start);
        let b = self.power_iteration(&restart);
        let best = if b.sigma > a.sigma { b } else { a };
        PowerIterate { converged: a.converged && b.converged, ..best }
    }

    /// Largest singular value from the full SVD.
    pub fn svd_norm(&self) -> f64 {
        self.matrix.singular_values().max()
    }
}

/// `‖A‖_{L²→L²}`. Power iteration, with the full SVD deciding whenever the
/// two disagree or the iteration stalls.
pub fn operator_norm(a: &DenseOperator) -> Result<f64> {
    let p = a.power_norm();
    if a.dim() <= MAX_DIM {
        let s = a.svd_norm();
        if !p.converged || (p.sigma - s).abs() > 1e-9 * s.max(1.0) {
            return Ok(s);
        }
        return Ok(p.sigma);
    }
    if !p.converged {
        return Err(Error::NonConvergence { iterations: p.iterations, bound: p.sigma });
    }
    Ok(p.sigma)
}

/// `AB − BA`.
pub fn commutator(a: &DenseOperator, b: &DenseOperator) -> Result<DenseOperator> {
    a.compose(b)?.sub(&b.compose(a)?)
}

fn assemble_columns<F>(depth: Depth, op: F) -> Result<DenseOperator>
where
    F: Fn(&HaarSpectrum2D) -> Result<HaarSpectrum2D> + Sync,
{
    let dim = check_dim(depth)?;
    let order = basis_order(depth);
    let columns: Vec<DVector<f64>> = order
        .par_iter()
        .map(|&ab| {
            let mut e = HaarSpectrum2D::zeros(depth);
            e.coeffs_mut()[ab] = 1.0;
            let out = op(&e)?;
            depth.ensure_same(&out.depth())?;
            let col = DenseOperator::to_vector(&out);
            if col.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite);
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let matrix = DMatrix::from_columns(&columns);
    let a = DenseOperator { depth, matrix };

    // linearity spot-check on a fixed random combination
    let mut rng = ChaCha8Rng::seed_from_u64(dim as u64);
    let x = DVector::from_fn(dim, |_, _| rng.random_range(-1.0..1.0));
    let direct = DenseOperator::to_vector(&op(&DenseOperator::from_vector(depth, &x))?);
    let via_matrix = &a.matrix * &x;
    let err = (&direct - &via_matrix).amax();
    if !err.is_finite() || err > 1e-9 * (1.0 + via_matrix.amax()) {
        return Err(Error::NotLinear(err));
    }
    Ok(a)
}

/// Matrix of a coefficient-level operator.
pub fn assemble<F>(depth: Depth, op: F) -> Result<DenseOperator>
where
    F: Fn(&HaarSpectrum2D) -> Result<HaarSpectrum2D> + Sync,
{
    assemble_columns(depth, op)
}

/// Matrix of a grid-level operator, in Haar coordinates.
pub fn assemble_grid<F>(depth: Depth, op: F) -> Result<DenseOperator>
where
    F: Fn(&GridFunction2D) -> Result<GridFunction2D> + Sync,
{
    assemble_columns(depth, |c| Ok(haar_forward_2d(&op(&haar_inverse_2d(c))?)))
}
