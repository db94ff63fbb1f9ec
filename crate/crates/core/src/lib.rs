//! Dyadic product-space analysis at finite depth: Haar spectra on `[0,1)²`,
//! product paraproducts, exact product BMO / LMO norms via maximum-closure
//! ratio maximization, dyadic shifts and their iterated commutators, and the
//! Monte-Carlo averaged-shift representation of the Hilbert transform.

pub mod dyadic;
pub mod error;
pub mod experiments;
pub mod hilbert;
pub mod linop;
pub mod norms;
pub mod paraproduct;
pub mod shifts;
pub mod tolerances;

pub use error::{Error, Result};
