//! Sweeps that fix the constants in `dyadic_core::tolerances`. They run on
//! their own seeds, disjoint from the acceptance seeds, and print the
//! observed extremes:
//!
//! `cargo test -p dyadic-core --release --test sweeps -- --ignored --nocapture`

use std::time::Instant;

use dyadic_core::dyadic::Depth;
use dyadic_core::experiments::*;

const PIN_SEED: u64 = 0x9137_0001;

fn extremes(v: impl IntoIterator<Item = f64>) -> (f64, f64) {
    v.into_iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

#[test]
#[ignore]
fn growth() {
    let t = Instant::now();
    let rows = growth_sweep(4, PIN_SEED).unwrap();
    let (_, c_b) = extremes(rows.iter().map(|r| r.b_bmo));
    let (_, c_mean) = extremes(rows.iter().map(|r| r.mean_ratio.max(r.random_mean_ratio)));
    for d in 1..=4 {
        let (_, sharp) = extremes(rows.iter().filter(|r| r.depth == (d, d)).map(|r| r.mean_ratio));
        println!("growth depth {d}: max extremal mean ratio {sharp:.6}");
    }
    println!("growth: C_b = {c_b:.6}, mean-ratio max = {c_mean:.6} ({:?})", t.elapsed());
}

#[test]
#[ignore]
fn paraproduct_bounds() {
    let t = Instant::now();
    let nec = paraproduct_necessity(Depth::square(3).unwrap(), 50, PIN_SEED).unwrap();
    println!("necessity ratio range {:?} ({:?})", extremes(nec.iter().map(|r| r.ratio)), t.elapsed());
    for d in 2..=4 {
        let t = Instant::now();
        let rows = paraproduct_sufficiency(Depth::square(d).unwrap(), 100, PIN_SEED + d as u64).unwrap();
        println!("sufficiency depth {d}: {:?} ({:?})", extremes(rows.iter().map(|r| r.ratio)), t.elapsed());
    }
}

#[test]
#[ignore]
fn delta_bounds() {
    let t = Instant::now();
    let rows = delta_two_sided(Depth::square(3).unwrap(), 200, PIN_SEED).unwrap();
    println!("delta normalized range {:?} ({:?})", extremes(rows.iter().map(|r| r.normalized)), t.elapsed());
}

#[test]
#[ignore]
fn lmo_ratio() {
    let t = Instant::now();
    let rows = lmo_equivalence(Depth::square(3).unwrap(), 400, PIN_SEED).unwrap();
    println!("lmo_char / lmo_d^2 range {:?} ({:?})", extremes(rows.iter().map(|r| r.ratio)), t.elapsed());
}

#[test]
#[ignore]
fn commutator_bounds() {
    for d in 2..=3 {
        let t = Instant::now();
        let rows = commutator_bound(Depth::square(d).unwrap(), 100, PIN_SEED + d as u64).unwrap();
        println!("commutator depth {d}: {:?} ({:?})", extremes(rows.iter().map(|r| r.ratio)), t.elapsed());
    }
    for s in 0..4 {
        let t = Instant::now();
        let rows =
            continuous_commutator_table(Depth::square(2).unwrap(), 100, PIN_SEED + 16 + s, ContinuousConfig::default())
                .unwrap();
        println!("continuous commutator: {:?} ({:?})", extremes(rows.iter().map(|r| r.ratio)), t.elapsed());
    }
}
