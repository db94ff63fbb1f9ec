//! Martingale projections `Δ, E, Q, E^(i), Q^(i)`, band projections and
//! open-set projections `P_Ω`, all acting diagonally on the hh block.

use ndarray::Array2;

use super::grid::{Depth, GridFunction2D};
use super::haar::HaarSpectrum2D;
use super::interval::{DyadicInterval, DyadicRect, GenerationIndex};
use super::prefix::PrefixSums;
use crate::error::{Error, Result};

/// A union of grid cells, the finite model of an open set `Ω ⊆ [0,1)²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMask {
    depth: Depth,
    cells: Array2<bool>,
}

impl CellMask {
    pub fn empty(depth: Depth) -> Self {
        Self { depth, cells: Array2::from_elem(depth.shape(), false) }
    }

    pub fn full(depth: Depth) -> Self {
        Self { depth, cells: Array2::from_elem(depth.shape(), true) }
    }

    pub fn from_array(depth: Depth, cells: Array2<bool>) -> Result<Self> {
        if cells.dim() != depth.shape() {
            return Err(Error::InvalidInput("mask shape does not match depth".into()));
        }
        Ok(Self { depth, cells })
    }

    pub fn from_rect(depth: Depth, rect: &DyadicRect) -> Self {
        let mut m = Self::empty(depth);
        for i in rect.s.cell_range(depth.s) {
            for j in rect.t.cell_range(depth.t) {
                m.cells[[i, j]] = true;
            }
        }
        m
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    pub fn cells(&self) -> &Array2<bool> {
        &self.cells
    }

    pub fn set(&mut self, s_cell: usize, t_cell: usize, on: bool) {
        self.cells[[s_cell, t_cell]] = on;
    }

    pub fn contains_cell(&self, s_cell: usize, t_cell: usize) -> bool {
        self.cells[[s_cell, t_cell]]
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn area(&self) -> f64 {
        self.count() as f64 * self.depth.cell_area()
    }

    /// `(s_cell, t_cell)` pairs of the selected cells, row-major.
    pub fn cell_list(&self) -> Vec<(usize, usize)> {
        self.cells.indexed_iter().filter(|(_, &c)| c).map(|(ij, _)| ij).collect()
    }

    pub(crate) fn count_table(&self) -> PrefixSums {
        PrefixSums::new(&self.cells.mapv(|c| if c { 1.0 } else { 0.0 }))
    }

    /// True when every cell of `rect` is selected.
    pub fn contains_rect(&self, rect: &DyadicRect) -> bool {
        rect.s.cell_range(self.depth.s).all(|i| rect.t.cell_range(self.depth.t).all(|j| self.cells[[i, j]]))
    }
}

/// Which projection to apply to the hh block.
#[derive(Debug, Clone, PartialEq)]
pub enum ProjectionSelector {
    /// `Δ_j`: exactly generation `j`.
    Delta(GenerationIndex),
    /// `E_j`: generations strictly below `j` in both coordinates.
    E(GenerationIndex),
    /// `Q_j`: generations `≥ j` in both coordinates.
    Q(GenerationIndex),
    E1(usize),
    Q1(usize),
    E2(usize),
    Q2(usize),
    /// `P_{N,K}`: `j1 ∈ [2^N−1, 2^{N+1}−2]`, `j2 ∈ [2^K−1, 2^{K+1}−2]`.
    Band(u32, u32),
    /// `P^{N,K}`: `j1 ≥ 2^N−1`, `j2 ≥ 2^K−1`.
    TailBand(u32, u32),
    /// `P_Ω`: rectangles whose cells all lie in the mask.
    OpenSet(CellMask),
}

fn band(n: u32) -> (usize, usize) {
    ((1usize << n) - 1, (1usize << (n + 1)) - 2)
}

impl ProjectionSelector {
    /// Whether the generation `g` survives (ignored for `OpenSet`).
    pub fn keeps_generation(&self, g: GenerationIndex) -> bool {
        use ProjectionSelector::*;
        match *self {
            Delta(j) => g == j,
            E(j) => g.strictly_below(&j),
            Q(j) => j.below_or_equal(&g),
            E1(i) => g.j1 < i,
            Q1(i) => g.j1 >= i,
            E2(j) => g.j2 < j,
            Q2(j) => g.j2 >= j,
            Band(n, k) => {
                let (a, b) = band(n);
                let (c, d) = band(k);
                (a..=b).contains(&g.j1) && (c..=d).contains(&g.j2)
            }
            TailBand(n, k) => g.j1 >= band(n).0 && g.j2 >= band(k).0,
            OpenSet(_) => true,
        }
    }
}

/// Apply a projection; the cc/hc/ch blocks are always zeroed.
pub fn apply_projection(c: &HaarSpectrum2D, sel: &ProjectionSelector) -> Result<HaarSpectrum2D> {
    let depth = c.depth();
    let mut out = HaarSpectrum2D::zeros(depth);
    let (n1, n2) = depth.shape();
    let counts = match sel {
        ProjectionSelector::OpenSet(mask) => {
            mask.depth().ensure_same(&depth)?;
            Some(mask.count_table())
        }
        _ => None,
    };
    for a in 1..n1 {
        let i = DyadicInterval::from_heap_index(a).unwrap();
        for b in 1..n2 {
            let j = DyadicInterval::from_heap_index(b).unwrap();
            let keep = match &counts {
                Some(table) => {
                    let (rs, rt) = (i.cell_range(depth.s), j.cell_range(depth.t));
                    let need = (rs.len() * rt.len()) as f64;
                    table.sum(rs, rt) == need
                }
                None => sel.keeps_generation(GenerationIndex::new(i.level(), j.level())),
            };
            if keep {
                out.coeffs_mut()[[a, b]] = c.coeffs()[[a, b]];
            }
        }
    }
    Ok(out)
}

/// The conditional expectation onto rectangles of generation `k` on all of
/// `L²`: keeps `cc`, the one-parameter blocks below `k` and the hh block
/// strictly below `k`. `k` may equal the depth.
pub fn conditional_expectation(c: &HaarSpectrum2D, k: GenerationIndex) -> HaarSpectrum2D {
    let depth = c.depth();
    let mut out = HaarSpectrum2D::zeros(depth);
    let (n1, n2) = depth.shape();
    for a in 0..n1 {
        if a > 0 && a.ilog2() as usize >= k.j1 {
            continue;
        }
        for b in 0..n2 {
            if b > 0 && b.ilog2() as usize >= k.j2 {
                continue;
            }
            out.coeffs_mut()[[a, b]] = c.coeffs()[[a, b]];
        }
    }
    out
}

/// Dyadic square function `S[f] = (Σ_R χ_R/|R| |f_R|²)^{1/2}` on the grid.
pub fn square_function(c: &HaarSpectrum2D) -> GridFunction2D {
    let sq = square_function_sq(c);
    GridFunction2D::from_array_unchecked(c.depth(), sq.mapv(f64::sqrt))
}

/// `S²[f]` cell by cell.
pub(crate) fn square_function_sq(c: &HaarSpectrum2D) -> Array2<f64> {
    let depth = c.depth();
    let coeffs = c.coeffs();
    Array2::from_shape_fn(depth.shape(), |(x, y)| {
        let mut acc = 0.0;
        for l1 in 0..depth.s {
            let a = (1usize << l1) + (x >> (depth.s - l1));
            for l2 in 0..depth.t {
                let b = (1usize << l2) + (y >> (depth.t - l2));
                let v = coeffs[[a, b]];
                acc += v * v * ((l1 + l2) as f64).exp2();
            }
        }
        acc
    })
}

/// `T[a,b] = Σ |c[a',b']|²` over `a'` in the heap subtree of `a` (when
/// `along_s`) and `b'` in the subtree of `b` (when `along_t`).
pub(crate) fn subtree_energy(c: &Array2<f64>, along_s: bool, along_t: bool) -> Array2<f64> {
    let (n1, n2) = c.dim();
    let mut t = c.mapv(|v| v * v);
    if along_s {
        for a in (1..n1 / 2).rev() {
            for b in 0..n2 {
                t[[a, b]] += t[[2 * a, b]] + t[[2 * a + 1, b]];
            }
        }
    }
    if along_t {
        for b in (1..n2 / 2).rev() {
            for a in 0..n1 {
                t[[a, b]] += t[[a, 2 * b]] + t[[a, 2 * b + 1]];
            }
        }
    }
    t
}
