//! Acceptance suite: eleven checks, one PASS/FAIL line each.
//!
//! `cargo test -p dyadic-core --test acceptance -- --nocapture`

use std::time::{Duration, Instant};

use dyadic_core::dyadic::{
    apply_projection, haar_forward_2d, haar_inverse_2d, Depth, DyadicInterval, DyadicRect, GenerationIndex,
    GridFunction2D, HaarSpectrum2D, ProjectionSelector,
};
use dyadic_core::experiments::{
    delta_two_sided, lemma_core, lmo_equivalence, nine_part_check, paraproduct_necessity, paraproduct_sufficiency,
    random_hh_spectrum, trial_rng,
};
use dyadic_core::hilbert::{analytic_hilbert_step, mc_hilbert, McConfig, StepFunction1D};
use dyadic_core::linop::{assemble, commutator, DenseOperator};
use dyadic_core::norms::{bmo_d_norm_sq, bmo_d_norm_sq_bruteforce};
use dyadic_core::paraproduct::{nine_part_apply, NinePartTag};
use dyadic_core::shifts::{rr_commutator_brackets, rr_commutator_on_basis, shift_operator, AmbientEmbedding};
use dyadic_core::tolerances::*;
use rand::Rng;

const SEED: u64 = 0xacce_0000;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn max_of(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, f64::max)
}

fn min_of(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(f64::INFINITY, f64::min)
}

fn parseval_round_trip() -> Outcome {
    let mut rng = trial_rng(SEED + 1, 0);
    let (mut rel, mut abs) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let depth = Depth::new(rng.random_range(1..=4), rng.random_range(1..=4)).unwrap();
        let scale = 10f64.powi(rng.random_range(-3..=3));
        let f = GridFunction2D::from_fn(depth, |_, _| scale * rng.random_range(-1.0..1.0)).unwrap();
        let c = haar_forward_2d(&f);
        rel = rel.max((f.l2_norm_sq() - c.norm_sq()).abs() / f.l2_norm_sq());
        abs = abs.max(haar_inverse_2d(&c).max_abs_diff(&f).unwrap());
    }
    Outcome::new(
        rel <= PARSEVAL_REL && abs <= ROUND_TRIP_ABS,
        format!("Parseval rel err {rel:.2e}, round trip {abs:.2e}"),
    )
}

fn eq_decomposition() -> Outcome {
    let depth = Depth::square(3).unwrap();
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let mut rng = trial_rng(SEED + 2, trial);
        let values = ndarray::Array2::from_shape_fn(depth.shape(), |_| rng.random_range(-1.0..1.0));
        let c = HaarSpectrum2D::from_coeffs(depth, values).unwrap();
        let hh = c.hh_part();
        for k1 in 0..=3 {
            for k2 in 0..=3 {
                let k = GenerationIndex::new(k1, k2);
                let p = |sel| apply_projection(&c, &sel).unwrap();
                let e1q2 = apply_projection(&p(ProjectionSelector::Q2(k2)), &ProjectionSelector::E1(k1)).unwrap();
                let q1e2 = apply_projection(&p(ProjectionSelector::E2(k2)), &ProjectionSelector::Q1(k1)).unwrap();
                let sum = p(ProjectionSelector::E(k)).add(&e1q2).unwrap().add(&q1e2).unwrap();
                let sum = sum.add(&p(ProjectionSelector::Q(k))).unwrap();
                worst = worst.max(sum.max_abs_diff(&hh).unwrap());
            }
        }
    }
    Outcome::new(worst <= DECOMPOSITION_ABS, format!("max abs err {worst:.2e} over 100 spectra x 16 k"))
}

fn lemma_core_identity() -> Outcome {
    let rows = lemma_core(Depth::square(3).unwrap(), 20, SEED + 3).unwrap();
    let d = max_of(rows.iter().map(|r| r.diff));
    let l2 = max_of(rows.iter().map(|r| r.l2_diff));
    let sq = max_of(rows.iter().map(|r| r.square_diff));
    Outcome::new(
        rows.len() == 320 && d <= OPNORM_ABS && l2 <= 1e-12 && sq <= 1e-12,
        format!("{} cases: opnorm diff {d:.2e}, L2 diff {l2:.2e}, S^2 diff {sq:.2e}", rows.len()),
    )
}

fn solver_vs_bruteforce() -> Outcome {
    let depth = Depth::square(2).unwrap();
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let phi = random_hh_spectrum(depth, &mut trial_rng(SEED + 4, trial));
        let exact = bmo_d_norm_sq(&phi, None).unwrap().norm_sq;
        let brute = bmo_d_norm_sq_bruteforce(&phi, None).unwrap();
        worst = worst.max((exact - brute).abs());
    }
    Outcome::new(worst <= SOLVER_ABS, format!("max |solver - exhaustive| {worst:.2e}"))
}

fn nine_part_sum() -> Outcome {
    let mut rows = nine_part_check(Depth::square(2).unwrap(), 50, SEED + 5).unwrap();
    rows.extend(nine_part_check(Depth::square(3).unwrap(), 20, SEED + 50).unwrap());
    let worst = max_of(rows.iter().map(|r| r.max_err));
    Outcome::new(rows.len() == 70 && worst <= NINE_PART_ABS, format!("max abs err {worst:.2e} over 70 pairs"))
}

fn source_rects(depth: Depth) -> Vec<DyadicRect> {
    let is: Vec<DyadicInterval> = (0..depth.s).flat_map(DyadicInterval::generation).collect();
    let js: Vec<DyadicInterval> = (0..depth.t).flat_map(DyadicInterval::generation).collect();
    is.iter().flat_map(|&i| js.iter().map(move |&j| DyadicRect::new(i, j))).collect()
}

/// `[S⁽¹⁾,[S⁽²⁾,R_R φ]]` assembled at the ambient depth.
fn rr_commutator_matrix(phi: &GridFunction2D, emb: &AmbientEmbedding) -> DenseOperator {
    let phi_a = haar_forward_2d(&emb.embed_grid(phi).unwrap());
    let rr = assemble(emb.ambient, |c| {
        Ok(haar_forward_2d(&nine_part_apply(NinePartTag::R_R, &phi_a, &haar_inverse_2d(c))?))
    })
    .unwrap();
    let s1 = shift_operator(emb.ambient, 1).unwrap();
    let s2 = shift_operator(emb.ambient, 2).unwrap();
    commutator(&s1, &commutator(&s2, &rr).unwrap()).unwrap()
}

fn rr_formula() -> Outcome {
    let depth = Depth::square(2).unwrap();
    let emb = AmbientEmbedding::new(depth).unwrap();
    let mut worst = 0.0f64;
    for trial in 0..20 {
        let mut rng = trial_rng(SEED + 6, trial);
        let phi = GridFunction2D::from_fn(depth, |_, _| rng.random_range(-1.0..1.0)).unwrap();
        let c = rr_commutator_matrix(&phi, &emb);
        let phi_a = emb.embed_grid(&phi).unwrap();
        for r in source_rects(depth) {
            let atom = HaarSpectrum2D::haar_atom(emb.ambient, r).unwrap();
            let via_matrix = c.apply(&atom).unwrap();
            let formula = rr_commutator_on_basis(&phi_a, r).unwrap();
            worst = worst.max(formula.max_abs_diff(&via_matrix).unwrap());
        }
    }
    let phi = GridFunction2D::from_fn(depth, |i, j| if i < 2 && j < 2 { 1.0 } else { 0.0 }).unwrap();
    let brackets = rr_commutator_brackets(&phi, DyadicRect::unit()).unwrap();
    let worked = brackets == [0.25, -0.25, -0.25, 0.25];
    Outcome::new(
        worst <= COMMUTATOR_FORMULA_ABS && worked,
        format!("max |formula - matrix| {worst:.2e}; worked example brackets {brackets:?}"),
    )
}

fn rr_orthogonality() -> Outcome {
    let depth = Depth::square(2).unwrap();
    let emb = AmbientEmbedding::new(depth).unwrap();
    let mut worst = 0.0f64;
    for trial in 0..20 {
        let mut rng = trial_rng(SEED + 7, trial);
        let phi = GridFunction2D::from_fn(depth, |_, _| rng.random_range(-1.0..1.0)).unwrap();
        let c = rr_commutator_matrix(&phi, &emb);
        let images: Vec<_> = source_rects(depth)
            .into_iter()
            .map(|r| DenseOperator::to_vector(&c.apply(&HaarSpectrum2D::haar_atom(emb.ambient, r).unwrap()).unwrap()))
            .collect();
        for (a, u) in images.iter().enumerate() {
            for v in &images[a + 1..] {
                worst = worst.max(u.dot(v).abs());
            }
        }
    }
    Outcome::new(worst <= ORTHOGONALITY_ABS, format!("max |<image_R, image_R'>| {worst:.2e}"))
}

fn paraproduct_directions() -> Outcome {
    let nec = paraproduct_necessity(Depth::square(3).unwrap(), 50, SEED + 8).unwrap();
    let nec_max = max_of(nec.iter().map(|r| r.ratio));
    let mut per_depth = Vec::new();
    for d in 2..=4 {
        let rows = paraproduct_sufficiency(Depth::square(d).unwrap(), 100, SEED + 80 + d as u64).unwrap();
        per_depth.push(max_of(rows.iter().map(|r| r.ratio)));
    }
    let suff_max = max_of(per_depth.iter().copied());
    Outcome::new(
        nec.len() == 50 && nec_max <= NECESSITY_BOUND && suff_max <= SUFFICIENCY_BOUND,
        format!(
            "(a) max lmo_char / max_R bmo(Pi b_R)^2 = {nec_max:.4} <= {NECESSITY_BOUND:.4}; \
             (b) max ratio by depth {per_depth:.4?} <= {SUFFICIENCY_BOUND}"
        ),
    )
}

fn delta_bounds() -> Outcome {
    let rows = delta_two_sided(Depth::square(3).unwrap(), 50, SEED + 9).unwrap();
    let lo = min_of(rows.iter().map(|r| r.normalized));
    let hi = max_of(rows.iter().map(|r| r.normalized));
    Outcome::new(
        lo >= DELTA_LOWER && hi <= DELTA_UPPER,
        format!("sup_b ratio / bmo(phi) in [{lo:.4}, {hi:.4}] within [{DELTA_LOWER}, {DELTA_UPPER}]"),
    )
}

fn mc_hilbert_check() -> Outcome {
    let f = StepFunction1D::indicator(0.0, 1.0, 1.0).unwrap();
    let xs = [-0.5, 0.25, 1.5, 2.0];
    let (mut ok, mut worst, mut max_se) = (true, 0.0f64, 0.0f64);
    for seed in 1..=3 {
        let est = mc_hilbert(&f, &xs, &McConfig::new(2000, seed)).unwrap();
        for (&x, e) in xs.iter().zip(&est) {
            let exact = analytic_hilbert_step(&f, x).unwrap();
            let err = (e.estimate - exact).abs();
            ok &= err <= 3.0 * e.stderr + MC_TRUNCATION && e.stderr <= MC_MAX_STDERR;
            worst = worst.max(err / (3.0 * e.stderr + MC_TRUNCATION));
            max_se = max_se.max(e.stderr);
        }
    }
    Outcome::new(ok, format!("12 cells: max err / (3 se + 0.01) = {worst:.3}, max stderr {max_se:.4}"))
}

fn lmo_equivalence_check() -> Outcome {
    let rows = lmo_equivalence(Depth::square(3).unwrap(), 200, SEED + 11).unwrap();
    let lo = min_of(rows.iter().map(|r| r.ratio));
    let hi = max_of(rows.iter().map(|r| r.ratio));
    let violations = rows.iter().filter(|r| !(LMO_EQUIV_LOWER..=LMO_EQUIV_UPPER).contains(&r.ratio)).count();
    Outcome::new(
        violations == 0,
        format!(
            "ratio in [{lo:.4}, {hi:.4}] (width {:.4}); pinned [{LMO_EQUIV_LOWER}, {LMO_EQUIV_UPPER}], {violations} violations",
            hi - lo
        ),
    )
}

#[test]
fn acceptance() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Option<u64>); 11] = [
        ("Parseval and round trip", parseval_round_trip, Some(5)),
        ("E/Q decomposition", eq_decomposition, None),
        ("sigma_k operator identity", lemma_core_identity, Some(60)),
        ("BMO solver vs exhaustive search", solver_vs_bruteforce, Some(30)),
        ("nine-part sum", nine_part_sum, None),
        ("R_R commutator formula", rr_formula, None),
        ("R_R image orthogonality", rr_orthogonality, None),
        ("Pi_phi necessity and sufficiency", paraproduct_directions, None),
        ("Delta_phi two-sided bound", delta_bounds, None),
        ("Monte-Carlo Hilbert transform", mc_hilbert_check, Some(120)),
        ("LMO characterization ratio", lmo_equivalence_check, None),
    ];
    let mut failed = Vec::new();
    for (n, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = check();
        let elapsed = start.elapsed();
        if let Some(secs) = limit {
            if elapsed > Duration::from_secs(*secs) {
                out.pass = false;
                out.detail.push_str(&format!("; runtime limit {secs} s exceeded"));
            }
        }
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name}: {} [{:.2?}]", n + 1, out.detail, elapsed);
        if !out.pass {
            failed.push(n + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
