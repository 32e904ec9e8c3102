//! Finite-field verification of the determinant locus.
//!
//! The open stratum is a `P^9`-bundle over `Grass(2, 4)` (planes spanned by
//! the second column of `phi`) with the locus `det(phi) = 0` removed. Over
//! `F_p` we enumerate every plane, classify it, count determinant-zero
//! points in its fiber, and compare the totals with the closed formulas.

mod fiber;
mod plane;
mod sweep;

pub use fiber::{raw_expected, raw_oracle_count, Complement, Fiber, FIRST_COLUMN_DIM, QUOTIENT_DIM};
pub use plane::{classify_plane, enumerate_planes, rank_quadratic, Plane, PlaneType};
pub use sweep::{
    expected_x_count, moduli_point_count, moduli_point_count_with, proj_count, stratified_count, sweep, total_x_count,
    FiberReport, LocusRun, LocusSummary, SweepMode, SweepOptions,
};

use crate::algebra::PrimeField;
use crate::error::{Error, Result};

pub const SUPPORTED_PRIMES: &[u32] = &[2, 3, 5, 7];
/// Primes for which sweeping all of `F_p^12` is cheap.
pub const RAW_ORACLE_PRIMES: &[u32] = &[2, 3];

pub fn supported_field(p: u32) -> Result<PrimeField> {
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(Error::UnsupportedPrime(p, SUPPORTED_PRIMES));
    }
    PrimeField::new(p)
}

/// Convenience: fiber count over a plane with the default complement.
pub fn fiber_detzero_count(plane: &Plane) -> u64 {
    Fiber::over_plane(plane, Complement::default())
        .expect("planes are built over supported fields")
        .detzero_count()
}
