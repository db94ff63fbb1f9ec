//! Product paraproducts `Π^β`, the `σ_k` transforms and the nine-part
//! decomposition of a multiplication operator.

mod kernel;
mod nine;
mod sigma;

pub use nine::{delta_r_display, nine_part_apply, NinePartTag, Relation};
pub use sigma::{sigma1_k, sigma_k};

pub(crate) use kernel::bilinear;

use serde::{Deserialize, Serialize};

use crate::dyadic::{haar_inverse_2d, GridFunction2D, HaarSpectrum2D};
use crate::error::{Error, Result};

/// `(ε, δ, β)` of `B_{ε,δ,β}`; each entry is 0 (Haar) or 1 (`χ_I/|I|`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub eps: [u8; 2],
    pub delta: [u8; 2],
    pub beta: [u8; 2],
}

impl Signature {
    /// `Π = Π^{(0,0)}`.
    pub const PI: Signature = Signature::from_beta([0, 0]);
    /// `Δ = Π^{(1,1)}`.
    pub const DELTA: Signature = Signature::from_beta([1, 1]);
    pub const PI_01: Signature = Signature::from_beta([0, 1]);
    pub const PI_10: Signature = Signature::from_beta([1, 0]);

    /// `Π^β`: `ε = 0` and `δ` the complement of `β`.
    pub const fn from_beta(beta: [u8; 2]) -> Self {
        Self { eps: [0, 0], delta: [1 - beta[0], 1 - beta[1]], beta }
    }

    pub fn is_supported(&self) -> bool {
        let bits = self.eps.iter().chain(&self.delta).chain(&self.beta);
        bits.clone().all(|&b| b <= 1)
            && self.eps == [0, 0]
            && self.delta[0] == 1 - self.beta[0]
            && self.delta[1] == 1 - self.beta[1]
    }
}

/// `Σ_R φ_R ⟨f, h^δ_R⟩ h^β_R` on the grid, for the four supported signatures.
pub fn paraproduct(sig: Signature, phi: &HaarSpectrum2D, f: &GridFunction2D) -> Result<GridFunction2D> {
    if !sig.is_supported() {
        return Err(Error::UnsupportedSignature);
    }
    phi.depth().ensure_same(&f.depth())?;
    let depth = f.depth();
    let phi_grid = haar_inverse_2d(phi);
    let out = bilinear(depth, phi_grid.values(), f.values(), sig.eps, sig.delta, sig.beta);
    Ok(GridFunction2D::from_array_unchecked(depth, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::{haar_forward_2d, Depth, DyadicRect};
    use ndarray::{array, Array2};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit_atom(d: Depth) -> HaarSpectrum2D {
        HaarSpectrum2D::haar_atom(d, DyadicRect::unit()).unwrap()
    }

    fn random_grid(d: Depth, rng: &mut ChaCha8Rng) -> GridFunction2D {
        GridFunction2D::new(d, Array2::from_shape_fn(d.shape(), |_| rng.random_range(-1.0..1.0))).unwrap()
    }

    fn random_hh(d: Depth, rng: &mut ChaCha8Rng) -> HaarSpectrum2D {
        haar_forward_2d(&random_grid(d, rng)).hh_part()
    }

    #[test]
    fn pi_of_one_is_symbol() {
        let d = Depth::new(1, 1).unwrap();
        let out = paraproduct(Signature::PI, &unit_atom(d), &GridFunction2D::constant(d, 1.0)).unwrap();
        assert_eq!(out.values(), &array![[1.0, -1.0], [-1.0, 1.0]]);
    }

    #[test]
    fn delta_of_atom_with_itself_is_one() {
        let d = Depth::new(1, 1).unwrap();
        let f = haar_inverse_2d(&unit_atom(d));
        let out = paraproduct(Signature::DELTA, &unit_atom(d), &f).unwrap();
        assert!(out.values().iter().all(|&v| (v - 1.0).abs() < 1e-15));
    }

    #[test]
    fn mixed_paraproduct_example() {
        // f = 𝟙 ⊗ h_{[0,1)}: m_I f_J = 1, output h_I(s)·χ_J/|J|(t) = h ⊗ 𝟙
        let d = Depth::new(1, 1).unwrap();
        let f = GridFunction2D::from_rows(d, &[vec![-1.0, 1.0], vec![-1.0, 1.0]]).unwrap();
        let out = paraproduct(Signature::PI_01, &unit_atom(d), &f).unwrap();
        assert_eq!(out.values(), &array![[-1.0, -1.0], [1.0, 1.0]]);
    }

    #[test]
    fn unsupported_signatures_rejected() {
        let d = Depth::new(1, 1).unwrap();
        let f = GridFunction2D::constant(d, 1.0);
        let sig = Signature { eps: [1, 0], delta: [1, 1], beta: [0, 0] };
        assert_eq!(paraproduct(sig, &unit_atom(d), &f), Err(Error::UnsupportedSignature));
        let sig = Signature { eps: [0, 0], delta: [0, 1], beta: [0, 0] };
        assert_eq!(paraproduct(sig, &unit_atom(d), &f), Err(Error::UnsupportedSignature));
        let other = GridFunction2D::constant(Depth::new(2, 1).unwrap(), 1.0);
        assert!(matches!(paraproduct(Signature::PI, &unit_atom(d), &other), Err(Error::DepthMismatch(..))));
    }

    #[test]
    fn bilinear_in_both_arguments() {
        let d = Depth::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for sig in [Signature::PI, Signature::DELTA, Signature::PI_01, Signature::PI_10] {
            let (p1, p2) = (random_hh(d, &mut rng), random_hh(d, &mut rng));
            let (f1, f2) = (random_grid(d, &mut rng), random_grid(d, &mut rng));
            let (a, b) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let p = p1.scale(a).add(&p2.scale(b)).unwrap();
            let f = f1.scale(a).add(&f2.scale(b)).unwrap();
            let lhs = paraproduct(sig, &p, &f1).unwrap();
            let rhs = paraproduct(sig, &p1, &f1)
                .unwrap()
                .scale(a)
                .add(&paraproduct(sig, &p2, &f1).unwrap().scale(b))
                .unwrap();
            assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
            let lhs = paraproduct(sig, &p1, &f).unwrap();
            let rhs = paraproduct(sig, &p1, &f1)
                .unwrap()
                .scale(a)
                .add(&paraproduct(sig, &p1, &f2).unwrap().scale(b))
                .unwrap();
            assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
        }
    }

    #[test]
    fn pi_matches_direct_sum() {
        let d = Depth::new(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let phi = random_hh(d, &mut rng);
        let f = random_grid(d, &mut rng);
        let got = paraproduct(Signature::PI, &phi, &f).unwrap();
        let mut want = HaarSpectrum2D::zeros(d);
        for (r, v) in phi.hh_iter() {
            let cells = (r.s.cell_range(2), r.t.cell_range(2));
            let mut m = 0.0;
            for i in cells.0.clone() {
                for j in cells.1.clone() {
                    m += f.get(i, j);
                }
            }
            m /= (cells.0.len() * cells.1.len()) as f64;
            want.set_hh(r, v * m).unwrap();
        }
        assert!(got.max_abs_diff(&haar_inverse_2d(&want)).unwrap() < 1e-13);
    }

    #[test]
    fn delta_is_adjoint_of_pi() {
        let d = Depth::new(3, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let phi = random_hh(d, &mut rng);
            let f = haar_inverse_2d(&random_hh(d, &mut rng));
            let g = haar_inverse_2d(&random_hh(d, &mut rng));
            let lhs = paraproduct(Signature::PI, &phi, &f).unwrap().inner(&g).unwrap();
            let rhs = f.inner(&paraproduct(Signature::DELTA, &phi, &g).unwrap()).unwrap();
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }
}
