//! Exact computations for the moduli space `M(3m + 2n + 2)` of semistable
//! sheaves on `P1 x P1`: Hilbert polynomials of the defining resolutions,
//! the Poincaré polynomial of the moduli space, and finite-field point counts
//! of its strata.

pub mod algebra;
pub mod betti;
mod error;
pub mod goldens;
pub mod hilbert;
pub mod locus;

pub use error::{Error, Result};
