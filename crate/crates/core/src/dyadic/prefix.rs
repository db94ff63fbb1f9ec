use std::ops::Range;

use ndarray::Array2;

use super::grid::{Depth, GridFunction2D};
use crate::error::{Error, Result};

/// Summed-area table over an arbitrary 2-D array, with a guard row and
/// column of zeros.
#[derive(Debug, Clone)]
pub(crate) struct PrefixSums {
    table: Array2<f64>,
}

impl PrefixSums {
    pub(crate) fn new(values: &Array2<f64>) -> Self {
        let (n1, n2) = values.dim();
        let mut table = Array2::zeros((n1 + 1, n2 + 1));
        for i in 0..n1 {
            let mut row = 0.0;
            for j in 0..n2 {
                row += values[[i, j]];
                table[[i + 1, j + 1]] = table[[i, j + 1]] + row;
            }
        }
        Self { table }
    }

    pub(crate) fn sum(&self, rows: Range<usize>, cols: Range<usize>) -> f64 {
        let t = &self.table;
        t[[rows.end, cols.end]] - t[[rows.start, cols.end]] - t[[rows.end, cols.start]] + t[[rows.start, cols.start]]
    }
}

/// Cumulative cell masses of a grid function; O(1) rectangle means.
#[derive(Debug, Clone)]
pub struct PrefixTable {
    depth: Depth,
    sums: PrefixSums,
}

impl PrefixTable {
    pub fn new(f: &GridFunction2D) -> Self {
        let masses = f.values() * f.depth().cell_area();
        Self { depth: f.depth(), sums: PrefixSums::new(&masses) }
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    /// Integral of `f` over a cell-aligned rectangle.
    pub fn mass(&self, s_range: Range<usize>, t_range: Range<usize>) -> Result<f64> {
        self.check(&s_range, &t_range)?;
        Ok(self.sums.sum(s_range, t_range))
    }

    /// Average of `f` over a cell-aligned rectangle.
    pub fn rect_mean(&self, s_range: Range<usize>, t_range: Range<usize>) -> Result<f64> {
        self.check(&s_range, &t_range)?;
        let area = (s_range.len() * t_range.len()) as f64 * self.depth.cell_area();
        Ok(self.sums.sum(s_range, t_range) / area)
    }

    fn check(&self, s: &Range<usize>, t: &Range<usize>) -> Result<()> {
        if s.is_empty() || t.is_empty() {
            return Err(Error::DegenerateRectangle);
        }
        let (n1, n2) = self.depth.shape();
        if s.end > n1 || t.end > n2 {
            return Err(Error::OutOfRange("rectangle".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sample() -> PrefixTable {
        let d = Depth::new(1, 1).unwrap();
        PrefixTable::new(&GridFunction2D::from_rows(d, &[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap())
    }

    #[test]
    fn full_square_and_column_means() {
        let p = sample();
        assert!((p.rect_mean(0..2, 0..2).unwrap() - 2.5).abs() < 1e-15);
        assert!((p.rect_mean(0..1, 0..2).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn empty_range_is_degenerate() {
        assert_eq!(sample().rect_mean(1..1, 0..2), Err(Error::DegenerateRectangle));
        assert!(sample().rect_mean(0..3, 0..2).is_err());
    }

    #[test]
    fn matches_naive_summation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let d = Depth::new(3, 3).unwrap();
        let f = GridFunction2D::from_fn(d, |_, _| rng.random_range(-5.0..5.0)).unwrap();
        let p = PrefixTable::new(&f);
        for _ in 0..50 {
            let (a, b) = (rng.random_range(0..8), rng.random_range(0..8));
            let (c, e) = (rng.random_range(0..8), rng.random_range(0..8));
            let s = a.min(b)..a.max(b) + 1;
            let t = c.min(e)..c.max(e) + 1;
            let mut naive = 0.0;
            for i in s.clone() {
                for j in t.clone() {
                    naive += f.get(i, j);
                }
            }
            naive /= (s.len() * t.len()) as f64;
            assert!((p.rect_mean(s, t).unwrap() - naive).abs() < 1e-13);
        }
    }
}
