//! Dyadic lattice, Haar analysis/synthesis, rectangle means and the
//! projection calculus on the hh block.

mod grid;
mod haar;
mod interval;
mod prefix;
mod projection;

pub use grid::{Depth, GridFunction2D, MAX_TOTAL_DEPTH};
pub use haar::{haar_forward_2d, haar_inverse_2d, HaarSpectrum2D};
pub use interval::{DyadicInterval, DyadicRect, GenerationIndex};
pub use prefix::PrefixTable;
pub use projection::{apply_projection, conditional_expectation, square_function, CellMask, ProjectionSelector};

pub(crate) use haar::{forward_1d, forward_axis, inverse_axis};
pub(crate) use projection::subtree_energy;
