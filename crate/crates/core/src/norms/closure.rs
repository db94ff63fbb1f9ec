//! Product BMO as a ratio-maximization over unions of grid cells.
//!
//! For fixed `λ`, `max_Ω Σ_{R⊆Ω} w_R − λ|Ω|` is a maximum-weight closure
//! problem: rectangles are projects with profit `w_R`, cells are tools with
//! cost `λ·area`, and a rectangle requires all of its cells. Dinkelbach's
//! iteration then drives `λ` up to the optimal ratio.

use super::maxflow::FlowNetwork;
use crate::dyadic::{CellMask, Depth, DyadicRect, HaarSpectrum2D};
use crate::error::{Error, Result};

/// Largest instance accepted by the exhaustive oracle.
pub const BRUTE_FORCE_MAX_CELLS: usize = 16;

const DINKELBACH_REL_TOL: f64 = 1e-13;
const MAX_DINKELBACH_STEPS: usize = 10_000;

/// The weighted set system behind one BMO evaluation.
#[derive(Debug, Clone)]
pub struct ClosureInstance {
    depth: Depth,
    cells: Vec<(usize, usize)>,
    cell_area: f64,
    rects: Vec<(DyadicRect, f64)>,
    containment: Vec<Vec<usize>>,
}

fn check_rect(depth: Depth, r: &DyadicRect) -> Result<()> {
    if r.s.level() > depth.s || r.t.level() > depth.t {
        return Err(Error::OutOfRange(format!("rectangle {r:?} finer than depth {depth:?}")));
    }
    Ok(())
}

impl ClosureInstance {
    /// Cells of `restrict_to` (default: the whole square) and every hh
    /// rectangle inside it with nonzero weight `|φ_R|²`.
    pub fn from_spectrum(phi: &HaarSpectrum2D, restrict_to: Option<DyadicRect>) -> Result<Self> {
        let depth = phi.depth();
        let region = restrict_to.unwrap_or_else(DyadicRect::unit);
        check_rect(depth, &region)?;
        let (rs, rt) = (region.s.cell_range(depth.s), region.t.cell_range(depth.t));
        let cells: Vec<(usize, usize)> = rs.clone().flat_map(|i| rt.clone().map(move |j| (i, j))).collect();
        let width = rt.len();
        let mut rects = Vec::new();
        let mut containment = Vec::new();
        for (r, v) in phi.hh_iter() {
            if v == 0.0 || !region.contains(&r) {
                continue;
            }
            let (qs, qt) = (r.s.cell_range(depth.s), r.t.cell_range(depth.t));
            let ids = qs.flat_map(|i| qt.clone().map(move |j| (i - rs.start) * width + (j - rt.start))).collect();
            rects.push((r, v * v));
            containment.push(ids);
        }
        Ok(Self { depth, cells, cell_area: depth.cell_area(), rects, containment })
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn cell_area(&self) -> f64 {
        self.cell_area
    }

    pub fn rects(&self) -> &[(DyadicRect, f64)] {
        &self.rects
    }

    pub fn containment(&self) -> &[Vec<usize>] {
        &self.containment
    }

    pub fn total_weight(&self) -> f64 {
        self.rects.iter().map(|(_, w)| w).sum()
    }

    /// `g(Ω)` for `Ω` given as a selection over [`Self::cells`].
    pub fn objective(&self, selected: &[bool]) -> Option<f64> {
        let count = selected.iter().filter(|&&b| b).count();
        if count == 0 {
            return None;
        }
        let mass: f64 = self
            .rects
            .iter()
            .zip(&self.containment)
            .filter(|(_, ids)| ids.iter().all(|&c| selected[c]))
            .map(|((_, w), _)| w)
            .sum();
        Some(mass / (count as f64 * self.cell_area))
    }

    fn mask(&self, selected: &[bool]) -> CellMask {
        let mut m = CellMask::empty(self.depth);
        for (&(i, j), &on) in self.cells.iter().zip(selected) {
            if on {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Minimal maximizer of `Σ_{R⊆Ω} w_R − λ|Ω|` via a minimum cut.
    fn closure_step(&self, lambda: f64) -> Vec<bool> {
        let (m, n) = (self.rects.len(), self.cells.len());
        let (source, sink) = (0, m + n + 1);
        let total = self.total_weight();
        let inf = total + 1.0;
        let mut g = FlowNetwork::new(m + n + 2);
        for (r, ((_, w), ids)) in self.rects.iter().zip(&self.containment).enumerate() {
            g.add_arc(source, 1 + r, *w);
            for &c in ids {
                g.add_arc(1 + r, 1 + m + c, inf);
            }
        }
        let cost = lambda * self.cell_area;
        for c in 0..n {
            g.add_arc(1 + m + c, sink, cost);
        }
        let eps = 1e-15 * total.max(f64::MIN_POSITIVE);
        g.max_flow(source, sink, eps);
        let side = g.source_side(source, eps);
        side[1 + m..1 + m + n].to_vec()
    }
}

/// `‖φ‖²_{BMO^d}` restricted to open sets inside `restrict_to`, together with
/// an attaining set.
#[derive(Debug, Clone, PartialEq)]
pub struct BmoSolution {
    pub norm_sq: f64,
    pub omega: CellMask,
}

/// Exact product BMO norm (squared) by Dinkelbach over minimum cuts.
pub fn bmo_d_norm_sq(phi: &HaarSpectrum2D, restrict_to: Option<DyadicRect>) -> Result<BmoSolution> {
    let inst = ClosureInstance::from_spectrum(phi, restrict_to)?;
    Ok(solve(&inst))
}

pub(crate) fn solve(inst: &ClosureInstance) -> BmoSolution {
    if inst.rects.is_empty() {
        return BmoSolution { norm_sq: 0.0, omega: CellMask::empty(inst.depth) };
    }
    let mut best = vec![true; inst.cells.len()];
    let mut lambda = inst.objective(&best).unwrap_or(0.0);
    for _ in 0..MAX_DINKELBACH_STEPS {
        let cand = inst.closure_step(lambda);
        match inst.objective(&cand) {
            Some(g) if g > lambda * (1.0 + DINKELBACH_REL_TOL) => {
                lambda = g;
                best = cand;
            }
            _ => break,
        }
    }
    BmoSolution { norm_sq: lambda, omega: inst.mask(&best) }
}

/// Exhaustive maximum over all non-empty cell subsets (at most 16 cells).
pub fn bmo_d_norm_sq_bruteforce(phi: &HaarSpectrum2D, restrict_to: Option<DyadicRect>) -> Result<f64> {
    let inst = ClosureInstance::from_spectrum(phi, restrict_to)?;
    let n = inst.cells.len();
    if n > BRUTE_FORCE_MAX_CELLS {
        return Err(Error::TooManyCells(n));
    }
    let masks: Vec<(u32, f64)> = inst
        .rects
        .iter()
        .zip(&inst.containment)
        .map(|((_, w), ids)| (ids.iter().fold(0u32, |m, &c| m | (1 << c)), *w))
        .collect();
    let mut best = 0.0f64;
    for omega in 1u32..(1u32 << n) {
        let mass: f64 = masks.iter().filter(|(m, _)| m & !omega == 0).map(|(_, w)| w).sum();
        best = best.max(mass / (omega.count_ones() as f64 * inst.cell_area));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::{haar_forward_2d, DyadicInterval, GridFunction2D};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r0() -> DyadicRect {
        DyadicRect::new(DyadicInterval::new(1, 0).unwrap(), DyadicInterval::new(1, 0).unwrap())
    }

    #[test]
    fn unit_atom_has_norm_one() {
        let d = Depth::new(2, 2).unwrap();
        let phi = HaarSpectrum2D::haar_atom(d, DyadicRect::unit()).unwrap();
        let sol = bmo_d_norm_sq(&phi, None).unwrap();
        assert!((sol.norm_sq - 1.0).abs() < 1e-15);
        assert_eq!(sol.omega.count(), 16);
    }

    #[test]
    fn quarter_atom_and_mixture() {
        let d = Depth::new(2, 2).unwrap();
        let mut phi = HaarSpectrum2D::haar_atom(d, r0()).unwrap();
        let sol = bmo_d_norm_sq(&phi, None).unwrap();
        assert!((sol.norm_sq - 4.0).abs() < 1e-12);
        assert_eq!(sol.omega, CellMask::from_rect(d, &r0()));
        phi.set_hh(DyadicRect::unit(), 1.0).unwrap();
        let sol = bmo_d_norm_sq(&phi, None).unwrap();
        assert!((sol.norm_sq - 4.0).abs() < 1e-12);
        assert!((bmo_d_norm_sq_bruteforce(&phi, None).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn zero_symbol_gives_empty_sentinel() {
        let d = Depth::new(2, 2).unwrap();
        let sol = bmo_d_norm_sq(&HaarSpectrum2D::zeros(d), None).unwrap();
        assert_eq!(sol.norm_sq, 0.0);
        assert!(sol.omega.is_empty());
        assert_eq!(bmo_d_norm_sq_bruteforce(&HaarSpectrum2D::zeros(d), None).unwrap(), 0.0);
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        let d = Depth::new(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..30 {
            let g = GridFunction2D::from_fn(d, |_, _| rng.random_range(-1.0..1.0)).unwrap();
            let phi = haar_forward_2d(&g);
            let exact = bmo_d_norm_sq(&phi, None).unwrap();
            let brute = bmo_d_norm_sq_bruteforce(&phi, None).unwrap();
            assert!((exact.norm_sq - brute).abs() <= 1e-12 * brute.max(1.0));
            let inst = ClosureInstance::from_spectrum(&phi, None).unwrap();
            let sel: Vec<bool> = inst.cells().iter().map(|&(i, j)| exact.omega.contains_cell(i, j)).collect();
            assert!((inst.objective(&sel).unwrap() - exact.norm_sq).abs() < 1e-15 * exact.norm_sq.max(1.0));
        }
    }

    #[test]
    fn restriction_and_errors() {
        let d = Depth::new(3, 3).unwrap();
        let phi = HaarSpectrum2D::haar_atom(d, DyadicRect::unit()).unwrap();
        assert_eq!(bmo_d_norm_sq(&phi, Some(r0())).unwrap().norm_sq, 0.0);
        assert_eq!(bmo_d_norm_sq_bruteforce(&phi, None), Err(Error::TooManyCells(64)));
        let too_fine = DyadicRect::new(DyadicInterval::new(4, 0).unwrap(), DyadicInterval::unit());
        assert!(bmo_d_norm_sq(&phi, Some(too_fine)).is_err());
    }
}
