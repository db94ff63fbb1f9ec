//! Seeded sweeps behind the norm-equivalence and boundedness checks. Every
//! routine is deterministic in its seed: trial `i` draws from stream `i` of
//! a ChaCha generator seeded with `seed`, so trials run in parallel and can
//! be reproduced one at a time.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyadic::{
    conditional_expectation, haar_forward_2d, haar_inverse_2d, square_function, Depth, DyadicInterval, DyadicRect,
    GenerationIndex, GridFunction2D, HaarSpectrum2D,
};
use crate::error::Result;
use crate::hilbert::{averaged_shift_matrix, continuous_commutator, sampled_continuous_bmo};
use crate::linop::{assemble, operator_norm};
use crate::norms::{bmo_d_norm_sq, extremal_bmo_function, lmo_char_norm, lmo_d_norm, local_growth_report, CellRect};
use crate::paraproduct::{nine_part_apply, paraproduct, sigma_k, NinePartTag, Signature};
use crate::shifts::iterated_commutator_apply;

/// Generator for trial `index` of the sweep seeded by `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Random hh spectrum: each coefficient is present with a per-draw
/// probability in `[0.2, 1]` and equals `U(−1,1)·|R|^{γ/2}` with a per-draw
/// `γ ∈ [0,1]`, which mixes coarse- and fine-dominated symbols.
pub fn random_hh_spectrum<R: Rng + ?Sized>(depth: Depth, rng: &mut R) -> HaarSpectrum2D {
    let density = rng.random_range(0.2..=1.0);
    let gamma: f64 = rng.random_range(0.0..=1.0);
    let mut c = HaarSpectrum2D::zeros(depth);
    let (n1, n2) = depth.shape();
    for a in 1..n1 {
        for b in 1..n2 {
            if rng.random_bool(density) {
                let area = (-((a.ilog2() + b.ilog2()) as f64)).exp2();
                c.coeffs_mut()[[a, b]] = rng.random_range(-1.0..1.0) * area.powf(0.5 * gamma);
            }
        }
    }
    if c.hh_norm_sq() == 0.0 {
        c.coeffs_mut()[[1, 1]] = 1.0;
    }
    c
}

fn bmo(c: &HaarSpectrum2D) -> Result<f64> {
    Ok(bmo_d_norm_sq(c, None)?.norm_sq.sqrt())
}

fn grid_bmo(f: &GridFunction2D) -> Result<f64> {
    bmo(&haar_forward_2d(f).hh_part())
}

fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

fn rects(depth: Depth) -> Vec<DyadicRect> {
    let is: Vec<DyadicInterval> = (0..depth.s).flat_map(DyadicInterval::generation).collect();
    let js: Vec<DyadicInterval> = (0..depth.t).flat_map(DyadicInterval::generation).collect();
    is.iter().flat_map(|&i| js.iter().map(move |&j| DyadicRect::new(i, j))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaCoreRow {
    pub trial: usize,
    pub k1: usize,
    pub k2: usize,
    /// `‖Π_b E_k‖_{L²→L²}`
    pub lhs_norm: f64,
    /// `‖Π(σ_k b, ·)‖_{L²→L²}`
    pub rhs_norm: f64,
    pub diff: f64,
    /// `|‖σ_k b‖₂ − ‖b‖₂|`
    pub l2_diff: f64,
    /// `max |S²[σ_k b] − E_k S²[b]|`
    pub square_diff: f64,
}

/// Block averages of `values` over rectangles of generation `k`.
fn block_average(values: &GridFunction2D, k: GenerationIndex) -> GridFunction2D {
    let spectrum = haar_forward_2d(values);
    haar_inverse_2d(&conditional_expectation(&spectrum, k))
}

/// The operator identity for `σ_k`, for every `k ≤ J` and `trials` random `b`.
pub fn lemma_core(depth: Depth, trials: usize, seed: u64) -> Result<Vec<LemmaCoreRow>> {
    let ks: Vec<GenerationIndex> =
        (0..=depth.s).flat_map(|k1| (0..=depth.t).map(move |k2| GenerationIndex::new(k1, k2))).collect();
    let jobs: Vec<(usize, GenerationIndex)> = (0..trials).flat_map(|t| ks.iter().map(move |&k| (t, k))).collect();
    jobs.par_iter()
        .map(|&(trial, k)| {
            let b = random_hh_spectrum(depth, &mut trial_rng(seed, trial as u64));
            let sb = sigma_k(&b, k)?;
            let lhs = assemble(depth, |f| {
                let ef = haar_inverse_2d(&conditional_expectation(f, k));
                Ok(haar_forward_2d(&paraproduct(Signature::PI, &b, &ef)?))
            })?;
            let rhs = assemble(depth, |f| Ok(haar_forward_2d(&paraproduct(Signature::PI, &sb, &haar_inverse_2d(f))?)))?;
            let (lhs_norm, rhs_norm) = (operator_norm(&lhs)?, operator_norm(&rhs)?);
            let sq_b = square_function(&b).pointwise_mul(&square_function(&b))?;
            let sq_sb = square_function(&sb).pointwise_mul(&square_function(&sb))?;
            Ok(LemmaCoreRow {
                trial,
                k1: k.j1,
                k2: k.j2,
                lhs_norm,
                rhs_norm,
                diff: (lhs_norm - rhs_norm).abs(),
                l2_diff: (sb.hh_norm_sq().sqrt() - b.hh_norm_sq().sqrt()).abs(),
                square_diff: sq_sb.max_abs_diff(&block_average(&sq_b, k))?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NinePartRow {
    pub trial: usize,
    pub depth: (usize, usize),
    /// `max |Σ_P P_φ f − φ f|`
    pub max_err: f64,
}

/// Sum of the nine parts against the pointwise product for hh-span pairs.
pub fn nine_part_check(depth: Depth, trials: usize, seed: u64) -> Result<Vec<NinePartRow>> {
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let phi = random_hh_spectrum(depth, &mut rng);
            let f = haar_inverse_2d(&random_hh_spectrum(depth, &mut rng));
            let mut sum = GridFunction2D::zeros(depth);
            for tag in NinePartTag::ALL {
                sum = sum.add(&nine_part_apply(tag, &phi, &f)?)?;
            }
            let product = haar_inverse_2d(&phi).pointwise_mul(&f)?;
            Ok(NinePartRow { trial, depth: depth.as_tuple(), max_err: sum.max_abs_diff(&product)? })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NecessityRow {
    pub trial: usize,
    pub lmo_char: f64,
    /// `max_R ‖Π_φ b_R‖²_{BMO}` with `b_R` the extremal function of `R`
    pub max_paraproduct_bmo_sq: f64,
    /// `lmo_char / max_paraproduct_bmo_sq`
    pub ratio: f64,
}

/// Lower-bound chain for `Π_φ`: the log-weighted Carleson norm of `φ`
/// against `‖Π_φ b_R‖²` over extremal test functions.
pub fn paraproduct_necessity(depth: Depth, trials: usize, seed: u64) -> Result<Vec<NecessityRow>> {
    let tests: Vec<GridFunction2D> =
        rects(depth).iter().map(|&r| extremal_bmo_function(r, depth)).collect::<Result<_>>()?;
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let phi = random_hh_spectrum(depth, &mut trial_rng(seed, trial as u64));
            let lmo_char = lmo_char_norm(&phi)?;
            let mut best = 0.0f64;
            for b in &tests {
                let out = paraproduct(Signature::PI, &phi, b)?;
                best = best.max(bmo_d_norm_sq(&haar_forward_2d(&out), None)?.norm_sq);
            }
            Ok(NecessityRow { trial, lmo_char, max_paraproduct_bmo_sq: best, ratio: ratio(lmo_char, best) })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SufficiencyRow {
    pub trial: usize,
    pub depth: (usize, usize),
    pub paraproduct_bmo: f64,
    pub lmo_d: f64,
    pub b_bmo: f64,
    /// `‖Π_φ b‖ / (‖φ‖_{LMO}‖b‖)`
    pub ratio: f64,
}

/// `‖Π_φ b‖_{BMO} / (‖φ‖_{LMO^d}‖b‖_{BMO})` for random pairs.
pub fn paraproduct_sufficiency(depth: Depth, trials: usize, seed: u64) -> Result<Vec<SufficiencyRow>> {
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let phi = random_hh_spectrum(depth, &mut rng);
            let b = random_hh_spectrum(depth, &mut rng);
            let out = paraproduct(Signature::PI, &phi, &haar_inverse_2d(&b))?;
            let paraproduct_bmo = grid_bmo(&out)?;
            let lmo_d = lmo_d_norm(&phi)?;
            let b_bmo = bmo(&b)?;
            Ok(SufficiencyRow {
                trial,
                depth: depth.as_tuple(),
                paraproduct_bmo,
                lmo_d,
                b_bmo,
                ratio: ratio(paraproduct_bmo, lmo_d * b_bmo),
            })
        })
        .collect()
}

/// Fixed test functions for the `Δ_φ` bound: the hh atoms of the first two
/// generations in each variable and pseudo-random fillers, 20 in all.
pub fn delta_probe_set(depth: Depth) -> Result<Vec<HaarSpectrum2D>> {
    let mut probes = Vec::new();
    for r in rects(depth) {
        if r.s.level() < 2 && r.t.level() < 2 && r.s.index() == 0 && r.t.index() == 0 {
            probes.push(HaarSpectrum2D::haar_atom(depth, r)?);
        }
    }
    for r in rects(depth) {
        if probes.len() >= 8 {
            break;
        }
        if r.s.level() + 1 == depth.s && r.t.level() + 1 == depth.t {
            probes.push(HaarSpectrum2D::haar_atom(depth, r)?);
        }
    }
    let mut rng = trial_rng(0x0de1_7a00, 0);
    while probes.len() < 20 {
        probes.push(random_hh_spectrum(depth, &mut rng));
    }
    Ok(probes)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaBoundRow {
    pub trial: usize,
    pub phi_bmo: f64,
    /// `max_b ‖Δ_φ b‖ / ‖b‖` over the probe set
    pub sup_ratio: f64,
    /// `sup_ratio / ‖φ‖_{BMO}`
    pub normalized: f64,
}

/// Two-sided comparison of `Δ_φ` on the probe set with `‖φ‖_{BMO}`.
pub fn delta_two_sided(depth: Depth, trials: usize, seed: u64) -> Result<Vec<DeltaBoundRow>> {
    let probes = delta_probe_set(depth)?;
    let probe_norms: Vec<(GridFunction2D, f64)> =
        probes.iter().map(|p| Ok((haar_inverse_2d(p), bmo(p)?))).collect::<Result<_>>()?;
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let phi = random_hh_spectrum(depth, &mut trial_rng(seed, trial as u64));
            let phi_bmo = bmo(&phi)?;
            let mut sup_ratio = 0.0f64;
            for (b, b_bmo) in &probe_norms {
                let out = paraproduct(Signature::DELTA, &phi, b)?;
                sup_ratio = sup_ratio.max(grid_bmo(&out)? / b_bmo);
            }
            Ok(DeltaBoundRow { trial, phi_bmo, sup_ratio, normalized: sup_ratio / phi_bmo })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorBoundRow {
    pub trial: usize,
    pub depth: (usize, usize),
    pub commutator_bmo: f64,
    pub lmo_d: f64,
    pub b_bmo: f64,
    /// `commutator_bmo / (lmo_d · b_bmo)`
    pub ratio: f64,
}

/// `‖[S⁽¹⁾,[S⁽²⁾,M_φ]]b‖ / (‖φ‖_{LMO^d}‖b‖)` for random pairs.
pub fn commutator_bound(depth: Depth, trials: usize, seed: u64) -> Result<Vec<CommutatorBoundRow>> {
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let phi = random_hh_spectrum(depth, &mut rng);
            let b = random_hh_spectrum(depth, &mut rng);
            let out = iterated_commutator_apply(&haar_inverse_2d(&phi), &haar_inverse_2d(&b))?;
            let commutator_bmo = grid_bmo(&out)?;
            let lmo_d = lmo_d_norm(&phi)?;
            let b_bmo = bmo(&b)?;
            Ok(CommutatorBoundRow {
                trial,
                depth: depth.as_tuple(),
                commutator_bmo,
                lmo_d,
                b_bmo,
                ratio: ratio(commutator_bmo, lmo_d * b_bmo),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousCommutatorRow {
    pub trial: usize,
    /// `√` of the sampled grid-uniform BMO norm² of the commutator
    pub commutator_bmo: f64,
    pub lmo_d: f64,
    pub b_bmo: f64,
    pub ratio: f64,
}

/// Sample sizes for [`continuous_commutator_table`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuousConfig {
    pub shift_samples: usize,
    pub grids: usize,
    pub levels: u32,
}

impl Default for ContinuousConfig {
    fn default() -> Self {
        Self { shift_samples: 400, grids: 4, levels: 10 }
    }
}

/// The averaged-shift double commutator at one level above `depth`,
/// measured in sampled grids and divided by `‖φ‖_{LMO^d}‖b‖_{BMO^d}`.
pub fn continuous_commutator_table(
    depth: Depth,
    trials: usize,
    seed: u64,
    cfg: ContinuousConfig,
) -> Result<Vec<ContinuousCommutatorRow>> {
    let a1 = averaged_shift_matrix(depth.s + 1, cfg.shift_samples, seed, cfg.levels, cfg.levels)?;
    let a2 = averaged_shift_matrix(depth.t + 1, cfg.shift_samples, seed ^ 0x5a5a, cfg.levels, cfg.levels)?;
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let phi = random_hh_spectrum(depth, &mut rng);
            let b = random_hh_spectrum(depth, &mut rng);
            let out = continuous_commutator(&haar_inverse_2d(&phi), &haar_inverse_2d(&b), &a1, &a2)?;
            let commutator_bmo = sampled_continuous_bmo(&out, cfg.grids, seed)?.sqrt();
            let lmo_d = lmo_d_norm(&phi)?;
            let b_bmo = bmo(&b)?;
            Ok(ContinuousCommutatorRow {
                trial,
                commutator_bmo,
                lmo_d,
                b_bmo,
                ratio: ratio(commutator_bmo, lmo_d * b_bmo),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LmoEquivalenceRow {
    pub trial: usize,
    pub lmo_char: f64,
    pub lmo_d: f64,
    /// `lmo_char / lmo_d²`
    pub ratio: f64,
}

/// `lmo_char_norm(φ) / lmo_d_norm(φ)²` for random symbols.
pub fn lmo_equivalence(depth: Depth, trials: usize, seed: u64) -> Result<Vec<LmoEquivalenceRow>> {
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let phi = random_hh_spectrum(depth, &mut trial_rng(seed, trial as u64));
            let lmo_char = lmo_char_norm(&phi)?;
            let lmo_d = lmo_d_norm(&phi)?;
            Ok(LmoEquivalenceRow { trial, lmo_char, lmo_d, ratio: ratio(lmo_char, lmo_d * lmo_d) })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthSweepRow {
    pub depth: (usize, usize),
    pub level: (usize, usize),
    pub index: (usize, usize),
    /// `‖b_R‖_{BMO}` of the extremal function's hh part
    pub b_bmo: f64,
    /// `|m_R b_R| / ((k+1)(l+1)‖b_R‖)`, hh part of `b_R`
    pub mean_ratio: f64,
    /// the same for a random `b`
    pub random_mean_ratio: f64,
    /// `local_growth_report` ratios of the extremal hh part at `R`
    pub report_mean: f64,
    pub report_local_l2: f64,
}

/// Extremal functions at every rectangle of square depths `1..=max_depth`,
/// next to the mean growth of a random `b` at the same rectangle.
pub fn growth_sweep(max_depth: usize, seed: u64) -> Result<Vec<GrowthSweepRow>> {
    let jobs: Vec<(Depth, DyadicRect)> = (1..=max_depth)
        .map(Depth::square)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flat_map(|d| rects(d).into_iter().map(move |r| (d, r)))
        .collect();
    jobs.par_iter()
        .enumerate()
        .map(|(n, &(depth, r))| {
            let hh = |f: &GridFunction2D| haar_inverse_2d(&haar_forward_2d(f).hh_part());
            let b = hh(&extremal_bmo_function(r, depth)?);
            let b_bmo = grid_bmo(&b)?;
            let cells = CellRect::from_dyadic(&r, depth);
            let report = &local_growth_report(&b, std::slice::from_ref(&cells))?[0];
            let gens = ((r.s.level() + 1) * (r.t.level() + 1)) as f64;
            let mean = |f: &GridFunction2D| {
                let (s, t) = (r.s.cell_range(depth.s), r.t.cell_range(depth.t));
                let n = (s.len() * t.len()) as f64;
                s.flat_map(|i| t.clone().map(move |j| (i, j))).map(|(i, j)| f.get(i, j)).sum::<f64>() / n
            };
            let rb = haar_inverse_2d(&random_hh_spectrum(depth, &mut trial_rng(seed, n as u64)));
            Ok(GrowthSweepRow {
                depth: depth.as_tuple(),
                level: (r.s.level(), r.t.level()),
                index: (r.s.index(), r.t.index()),
                b_bmo,
                mean_ratio: ratio(mean(&b).abs(), gens * b_bmo),
                random_mean_ratio: ratio(mean(&rb).abs(), gens * grid_bmo(&rb)?),
                report_mean: report.mean,
                report_local_l2: report.local_l2,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_spectra_are_hh_and_reproducible() {
        let d = Depth::new(2, 3).unwrap();
        let a = random_hh_spectrum(d, &mut trial_rng(1, 4));
        let b = random_hh_spectrum(d, &mut trial_rng(1, 4));
        assert_eq!(a, b);
        assert_eq!(a.hh_part(), a);
        assert!(a.hh_norm_sq() > 0.0);
        assert_ne!(a, random_hh_spectrum(d, &mut trial_rng(1, 5)));
    }

    #[test]
    fn lemma_core_identity_small() {
        let rows = lemma_core(Depth::square(2).unwrap(), 3, 7).unwrap();
        assert_eq!(rows.len(), 27);
        for r in rows {
            assert!(r.diff <= 1e-8 && r.l2_diff <= 1e-12 && r.square_diff <= 1e-12, "{r:?}");
        }
    }

    #[test]
    fn necessity_chain_is_bounded_by_the_log_weights() {
        let bound = (2.0 * std::f64::consts::LN_2).powi(4);
        for r in paraproduct_necessity(Depth::square(2).unwrap(), 5, 3).unwrap() {
            assert!(r.ratio <= bound * (1.0 + 1e-12), "{r:?}");
        }
    }

    #[test]
    fn probe_set_has_twenty_members() {
        let p = delta_probe_set(Depth::square(3).unwrap()).unwrap();
        assert_eq!(p.len(), 20);
        assert!(p.iter().all(|c| c.hh_norm_sq() > 0.0));
    }

    #[test]
    fn nine_parts_sum_to_product() {
        for r in nine_part_check(Depth::new(2, 3).unwrap(), 4, 1).unwrap() {
            assert!(r.max_err <= 1e-10);
        }
    }
}
