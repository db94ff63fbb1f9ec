use ndarray::Array2;

use crate::error::{Error, Result};

/// Dyadic depth `(J1, J2)`: the grid has `2^J1 × 2^J2` cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Depth {
    pub s: usize,
    pub t: usize,
}

/// Largest total depth `J1 + J2` accepted for grids.
pub const MAX_TOTAL_DEPTH: usize = 22;

impl Depth {
    pub fn new(s: usize, t: usize) -> Result<Self> {
        if s == 0 || t == 0 || s + t > MAX_TOTAL_DEPTH {
            return Err(Error::OutOfRange(format!("depth ({s}, {t})")));
        }
        Ok(Self { s, t })
    }

    pub fn square(j: usize) -> Result<Self> {
        Self::new(j, j)
    }

    pub fn cells_s(&self) -> usize {
        1 << self.s
    }

    pub fn cells_t(&self) -> usize {
        1 << self.t
    }

    pub fn cell_count(&self) -> usize {
        self.cells_s() * self.cells_t()
    }

    pub fn cell_area(&self) -> f64 {
        (-((self.s + self.t) as f64)).exp2()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.cells_s(), self.cells_t())
    }

    pub fn as_tuple(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    pub(crate) fn ensure_same(&self, other: &Depth) -> Result<()> {
        if self != other {
            return Err(Error::DepthMismatch(self.as_tuple(), other.as_tuple()));
        }
        Ok(())
    }
}

/// Piecewise-constant function on the `2^J1 × 2^J2` dyadic grid of `[0,1)²`.
/// Row index is the s-cell, column index the t-cell.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction2D {
    depth: Depth,
    values: Array2<f64>,
}

impl GridFunction2D {
    pub fn new(depth: Depth, values: Array2<f64>) -> Result<Self> {
        if values.dim() != depth.shape() {
            return Err(Error::InvalidInput(format!(
                "grid of shape {:?} does not match depth {:?}",
                values.dim(),
                depth.as_tuple()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("grid contains non-finite values".into()));
        }
        Ok(Self { depth, values })
    }

    pub fn from_rows(depth: Depth, rows: &[Vec<f64>]) -> Result<Self> {
        let (n1, n2) = depth.shape();
        if rows.len() != n1 || rows.iter().any(|r| r.len() != n2) {
            return Err(Error::InvalidInput("row lengths do not match depth".into()));
        }
        let values = Array2::from_shape_fn((n1, n2), |(i, j)| rows[i][j]);
        Self::new(depth, values)
    }

    pub fn from_fn(depth: Depth, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        Self::new(depth, Array2::from_shape_fn(depth.shape(), |(i, j)| f(i, j)))
    }

    pub fn zeros(depth: Depth) -> Self {
        Self { depth, values: Array2::zeros(depth.shape()) }
    }

    pub fn constant(depth: Depth, value: f64) -> Self {
        Self { depth, values: Array2::from_elem(depth.shape(), value) }
    }

    pub(crate) fn from_array_unchecked(depth: Depth, values: Array2<f64>) -> Self {
        debug_assert_eq!(values.dim(), depth.shape());
        Self { depth, values }
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn into_values(self) -> Array2<f64> {
        self.values
    }

    pub fn get(&self, s_cell: usize, t_cell: usize) -> f64 {
        self.values[[s_cell, t_cell]]
    }

    pub fn integral(&self) -> f64 {
        self.values.sum() * self.depth.cell_area()
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() * self.depth.cell_area()
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum::<f64>() * self.depth.cell_area()
    }

    pub fn inner(&self, other: &GridFunction2D) -> Result<f64> {
        self.depth.ensure_same(&other.depth)?;
        Ok((&self.values * &other.values).sum() * self.depth.cell_area())
    }

    pub fn max_abs_diff(&self, other: &GridFunction2D) -> Result<f64> {
        self.depth.ensure_same(&other.depth)?;
        Ok(self.values.iter().zip(other.values.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    pub fn pointwise_mul(&self, other: &GridFunction2D) -> Result<GridFunction2D> {
        self.depth.ensure_same(&other.depth)?;
        Ok(Self { depth: self.depth, values: &self.values * &other.values })
    }

    pub fn add(&self, other: &GridFunction2D) -> Result<GridFunction2D> {
        self.depth.ensure_same(&other.depth)?;
        Ok(Self { depth: self.depth, values: &self.values + &other.values })
    }

    pub fn sub(&self, other: &GridFunction2D) -> Result<GridFunction2D> {
        self.depth.ensure_same(&other.depth)?;
        Ok(Self { depth: self.depth, values: &self.values - &other.values })
    }

    pub fn scale(&self, c: f64) -> GridFunction2D {
        Self { depth: self.depth, values: &self.values * c }
    }

    /// Same function on a finer grid (each cell split into `2^ds × 2^dt` cells).
    pub fn refine(&self, target: Depth) -> Result<GridFunction2D> {
        if target.s < self.depth.s || target.t < self.depth.t {
            return Err(Error::InvalidInput("refinement target is coarser".into()));
        }
        let (ds, dt) = (target.s - self.depth.s, target.t - self.depth.t);
        let values = Array2::from_shape_fn(target.shape(), |(i, j)| self.values[[i >> ds, j >> dt]]);
        Ok(Self { depth: target, values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_uses_cell_area() {
        let d = Depth::new(1, 2).unwrap();
        let f = GridFunction2D::constant(d, 3.0);
        assert!((f.integral() - 3.0).abs() < 1e-15);
        assert!((f.l2_norm_sq() - 9.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        let d = Depth::new(1, 1).unwrap();
        assert!(GridFunction2D::new(d, Array2::zeros((2, 3))).is_err());
        assert!(GridFunction2D::from_rows(d, &[vec![1.0, f64::NAN], vec![0.0, 0.0]]).is_err());
        assert!(Depth::new(0, 3).is_err());
    }

    #[test]
    fn refinement_preserves_integral() {
        let d = Depth::new(1, 1).unwrap();
        let f = GridFunction2D::from_rows(d, &[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let g = f.refine(Depth::new(3, 2).unwrap()).unwrap();
        assert!((g.integral() - f.integral()).abs() < 1e-14);
        assert_eq!(g.get(7, 0), 3.0);
    }
}
