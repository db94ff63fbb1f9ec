//! Random dyadic grids on ℝ, grid shifts and the averaged-shift
//! representation of the Hilbert transform.

mod continuous;
mod grid;
mod mc;
mod shift;
mod step;

pub use continuous::{averaged_shift_matrix, continuous_commutator, sampled_continuous_bmo};
pub use grid::{sample_grid, GridInterval, RSampling, RandomDyadicGrid};
pub use mc::{mc_hilbert, stream_grid, McConfig, McEstimate, HILBERT_CONSTANT};
pub use shift::{grid_shift_apply, grid_shift_eval, projection_error};
pub use step::{analytic_hilbert_step, StepFunction1D};
