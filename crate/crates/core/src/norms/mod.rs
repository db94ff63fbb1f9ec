//! Product BMO, rectangular BMO, the LMO family, `H¹`, extremal functions
//! and local growth factors.

mod closure;
mod growth;
mod lmo;
mod maxflow;

pub use closure::{bmo_d_norm_sq, bmo_d_norm_sq_bruteforce, BmoSolution, ClosureInstance, BRUTE_FORCE_MAX_CELLS};
pub use growth::{extremal_bmo_function, local_growth_report, CellRect, GrowthRow, LocalGrowthFactor};
pub use lmo::{
    bmo_rect_norm_sq, h1_norm, lmo_beta_char_norm, lmo_char_norm, lmo_d_norm, lmo_directional_norm, log_weight,
};
