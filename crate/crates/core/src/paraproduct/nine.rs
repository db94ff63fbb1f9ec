//! Nine-part decomposition of `M_φ` by the relative position of output
//! and input Haar intervals in each variable.

use serde::{Deserialize, Serialize};

use super::kernel::bilinear;
use crate::dyadic::{haar_inverse_2d, GridFunction2D, HaarSpectrum2D};
use crate::error::Result;

/// Position of the output interval `I'` relative to the input `I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Relation {
    /// `I' ⊊ I`
    Finer,
    /// `I' = I`
    Equal,
    /// `I' ⊋ I`, absorbed into `χ_I/|I|` outputs
    Coarser,
}

impl Relation {
    /// Per-axis `(ε, δ, β)`.
    fn triple(self) -> (u8, u8, u8) {
        match self {
            Relation::Finer => (0, 1, 0),
            Relation::Equal => (1, 0, 0),
            Relation::Coarser => (0, 0, 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NinePartTag {
    pub s: Relation,
    pub t: Relation,
}

impl NinePartTag {
    pub const PI: Self = Self::new(Relation::Finer, Relation::Finer);
    pub const DELTA: Self = Self::new(Relation::Coarser, Relation::Coarser);
    pub const PI_01: Self = Self::new(Relation::Finer, Relation::Coarser);
    pub const PI_10: Self = Self::new(Relation::Coarser, Relation::Finer);
    pub const R_R: Self = Self::new(Relation::Equal, Relation::Equal);
    pub const PI_R: Self = Self::new(Relation::Finer, Relation::Equal);
    pub const DELTA_R: Self = Self::new(Relation::Coarser, Relation::Equal);
    pub const R_PI: Self = Self::new(Relation::Equal, Relation::Finer);
    pub const R_DELTA: Self = Self::new(Relation::Equal, Relation::Coarser);

    pub const ALL: [Self; 9] = [
        Self::PI,
        Self::DELTA,
        Self::PI_01,
        Self::PI_10,
        Self::R_R,
        Self::PI_R,
        Self::DELTA_R,
        Self::R_PI,
        Self::R_DELTA,
    ];

    pub const fn new(s: Relation, t: Relation) -> Self {
        Self { s, t }
    }

    pub fn name(&self) -> &'static str {
        use Relation::*;
        match (self.s, self.t) {
            (Finer, Finer) => "Pi",
            (Coarser, Coarser) => "Delta",
            (Finer, Coarser) => "Pi01",
            (Coarser, Finer) => "Pi10",
            (Equal, Equal) => "R_R",
            (Finer, Equal) => "Pi_R",
            (Coarser, Equal) => "Delta_R",
            (Equal, Finer) => "R_Pi",
            (Equal, Coarser) => "R_Delta",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name().eq_ignore_ascii_case(name))
    }
}

/// The `tag` block of `M_φ f`.
pub fn nine_part_apply(tag: NinePartTag, phi: &HaarSpectrum2D, f: &GridFunction2D) -> Result<GridFunction2D> {
    phi.depth().ensure_same(&f.depth())?;
    let (e0, d0, b0) = tag.s.triple();
    let (e1, d1, b1) = tag.t.triple();
    let phi_grid = haar_inverse_2d(phi);
    let out = bilinear(f.depth(), phi_grid.values(), f.values(), [e0, e1], [d0, d1], [b0, b1]);
    Ok(GridFunction2D::from_array_unchecked(f.depth(), out))
}

/// The literal formula `Σ m_J(φ_I) f_{IJ} h_I(s) h_J²(t)`, kept for comparison
/// with the `(COARSER, EQUAL)` block.
pub fn delta_r_display(phi: &HaarSpectrum2D, f: &GridFunction2D) -> Result<GridFunction2D> {
    phi.depth().ensure_same(&f.depth())?;
    let phi_grid = haar_inverse_2d(phi);
    let out = bilinear(f.depth(), phi_grid.values(), f.values(), [0, 1], [0, 0], [0, 1]);
    Ok(GridFunction2D::from_array_unchecked(f.depth(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::{haar_forward_2d, Depth, DyadicRect};
    use crate::paraproduct::{paraproduct, Signature};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hh_grid(d: Depth, rng: &mut ChaCha8Rng) -> GridFunction2D {
        let g = GridFunction2D::from_fn(d, |_, _| rng.random_range(-1.0..1.0)).unwrap();
        haar_inverse_2d(&haar_forward_2d(&g).hh_part())
    }

    #[test]
    fn nine_parts_sum_to_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for s in 1..=3 {
            for t in 1..=3 {
                let d = Depth::new(s, t).unwrap();
                let phi_grid = random_hh_grid(d, &mut rng);
                let f = random_hh_grid(d, &mut rng);
                let phi = haar_forward_2d(&phi_grid);
                let mut total = GridFunction2D::zeros(d);
                for tag in NinePartTag::ALL {
                    total = total.add(&nine_part_apply(tag, &phi, &f).unwrap()).unwrap();
                }
                let product = phi_grid.pointwise_mul(&f).unwrap();
                assert!(total.max_abs_diff(&product).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn corner_blocks_are_paraproducts() {
        let d = Depth::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let phi = haar_forward_2d(&random_hh_grid(d, &mut rng));
        let f = random_hh_grid(d, &mut rng);
        for (tag, sig) in [
            (NinePartTag::PI, Signature::PI),
            (NinePartTag::DELTA, Signature::DELTA),
            (NinePartTag::PI_01, Signature::PI_01),
            (NinePartTag::PI_10, Signature::PI_10),
        ] {
            let a = nine_part_apply(tag, &phi, &f).unwrap();
            let b = paraproduct(sig, &phi, &f).unwrap();
            assert!(a.max_abs_diff(&b).unwrap() < 1e-13);
        }
    }

    #[test]
    fn haar_diagonal_and_pi_r_vanish_on_unit_atom() {
        let d = Depth::new(2, 2).unwrap();
        let phi = HaarSpectrum2D::haar_atom(d, DyadicRect::unit()).unwrap();
        let f = haar_inverse_2d(&phi);
        for tag in [NinePartTag::R_R, NinePartTag::PI_R] {
            let out = nine_part_apply(tag, &phi, &f).unwrap();
            assert!(out.values().iter().all(|v| v.abs() < 1e-15));
        }
    }

    #[test]
    fn tag_names_round_trip() {
        for tag in NinePartTag::ALL {
            assert_eq!(NinePartTag::from_name(tag.name()), Some(tag));
        }
        assert_eq!(NinePartTag::from_name("nope"), None);
    }
}
