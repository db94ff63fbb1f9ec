//! Empirical constants re-checked on seeds the sweeps never saw, and the
//! worked norm examples through the public API.

use dyadic_core::dyadic::{Depth, DyadicInterval, DyadicRect, HaarSpectrum2D};
use dyadic_core::experiments::{commutator_bound, growth_sweep};
use dyadic_core::norms::{
    bmo_d_norm_sq, bmo_rect_norm_sq, extremal_bmo_function, lmo_beta_char_norm, lmo_char_norm, lmo_d_norm,
    lmo_directional_norm,
};
use dyadic_core::tolerances::*;

const FRESH: u64 = 0x5eed_b0d5;

fn atom(depth: Depth, r: DyadicRect) -> HaarSpectrum2D {
    HaarSpectrum2D::haar_atom(depth, r).unwrap()
}

fn quarter() -> DyadicRect {
    let half = DyadicInterval::new(1, 0).unwrap();
    DyadicRect::new(half, half)
}

#[test]
fn commutator_constant_holds_on_fresh_pairs() {
    for d in 2..=3 {
        let rows = commutator_bound(Depth::square(d).unwrap(), 100, FRESH + d as u64).unwrap();
        let worst = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
        assert!(worst <= COMMUTATOR_BOUND, "depth {d}: {worst}");
    }
}

#[test]
fn growth_constants_hold_on_a_fresh_seed() {
    let rows = growth_sweep(4, FRESH).unwrap();
    for r in &rows {
        assert!(r.b_bmo <= EXTREMAL_BMO_BOUND, "{r:?}");
        assert!(r.mean_ratio.max(r.random_mean_ratio) <= GROWTH_BOUND, "{r:?}");
    }
    for d in 2..=4 {
        let best = rows.iter().filter(|r| r.depth == (d, d)).map(|r| r.mean_ratio).fold(0.0, f64::max);
        assert!(best >= GROWTH_SHARPNESS, "depth {d}: {best}");
    }
}

#[test]
fn norm_examples() {
    let d = Depth::square(2).unwrap();
    let unit = atom(d, DyadicRect::unit());
    let r0 = atom(d, quarter());
    let ln4 = 4f64.ln();

    assert!((bmo_d_norm_sq(&unit, None).unwrap().norm_sq - 1.0).abs() < 1e-12);
    let sol = bmo_d_norm_sq(&r0, None).unwrap();
    assert!((sol.norm_sq - 4.0).abs() < 1e-12);
    assert_eq!(sol.omega.count(), 4);
    assert!((bmo_rect_norm_sq(&r0) - 4.0).abs() < 1e-12);

    assert!((lmo_d_norm(&r0).unwrap() - 8.0).abs() < 1e-12);
    assert!((lmo_char_norm(&unit).unwrap() - ln4.powi(4)).abs() < 1e-12);
    assert!((lmo_char_norm(&unit).unwrap() - 3.6935).abs() < 5e-4);
    assert!((lmo_beta_char_norm(&unit, [0, 1]).unwrap() - ln4 * ln4).abs() < 1e-12);
    assert!((lmo_directional_norm(&r0, 1).unwrap() - 4.0).abs() < 1e-12);
}

#[test]
fn extremal_value_on_a_sixteenth_square() {
    let q = DyadicInterval::new(2, 0).unwrap();
    let b = extremal_bmo_function(DyadicRect::new(q, q), Depth::square(3).unwrap()).unwrap();
    for x in 0..2 {
        for y in 0..2 {
            assert!((b.get(x, y) - 9.0).abs() < 1e-12);
        }
    }
}
