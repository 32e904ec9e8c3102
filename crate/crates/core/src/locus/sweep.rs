//! Whole-Grassmannian sweeps: one fiber per plane, merged into the count of
//! the determinant locus and the stratified point count of the moduli space.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::fiber::{raw_expected, raw_oracle_count, Complement, Fiber, QUOTIENT_DIM};
use super::plane::{classify_plane, enumerate_planes, Plane, PlaneType};
use super::{supported_field, RAW_ORACLE_PRIMES};
use crate::betti::{poincare_moduli, XiPoly};
use crate::error::{Error, Result};

/// How fiber counts are obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    /// Exhaustive for `p <= 3`, rank-based above.
    #[default]
    Auto,
    /// Visit every point of every fiber.
    Exhaustive,
    /// Kernel dimension of the linear determinant map.
    Linear,
}

impl SweepMode {
    fn resolve(self, p: u32) -> SweepMode {
        match self {
            SweepMode::Auto if p <= 3 => SweepMode::Exhaustive,
            SweepMode::Auto => SweepMode::Linear,
            m => m,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub workers: usize,
    pub mode: SweepMode,
    /// Also run the raw `F_p^12` oracle on every plane (`p` in `{2, 3}`).
    pub full_oracle: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            mode: SweepMode::Auto,
            full_oracle: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub plane: Value,
    pub plane_type: PlaneType,
    pub detzero_count: u64,
    pub expected: u64,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw_expected: Option<u64>,
}

impl FiberReport {
    /// Fiber count, and raw identity when the oracle ran.
    pub fn passed(&self) -> bool {
        self.ok && self.raw_count == self.raw_expected
    }
}

/// Per-prime outcome of a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct LocusSummary {
    pub prime: u32,
    pub mode: SweepMode,
    pub planes: u64,
    pub generic_planes: u64,
    pub shared_right_planes: u64,
    pub shared_left_planes: u64,
    /// Whether every plane carrying determinant-zero points is shared.
    pub detzero_only_over_shared: bool,
    #[serde(rename = "X_count")]
    pub x_count: u64,
    pub expected: u64,
    pub moduli_count: u64,
    pub poincare_eval: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusRun {
    pub fibers: Vec<FiberReport>,
    pub summary: LocusSummary,
}

/// `|P^n(F_p)|`.
pub fn proj_count(p: u32, n: u32) -> BigInt {
    let p = BigInt::from(p);
    (p.pow(n + 1) - 1u32) / (p - 1u32)
}

/// `(p + 1) + (p + 1)^2`: points of `P^1` and of `P^1 x P^1`.
pub fn expected_x_count(p: u32) -> u64 {
    let q = p as u64 + 1;
    q + q * q
}

/// `|P^9| |Grass(2,4)| - |X| + |P^1 x P^1| |P^10| + |P^11|` over `F_p`.
pub fn stratified_count(p: u32, plane_count: u64, x_count: u64) -> BigInt {
    let quadric = BigInt::from(p as u64 + 1).pow(2);
    proj_count(p, QUOTIENT_DIM as u32 - 1) * plane_count - x_count + quadric * proj_count(p, 10) + proj_count(p, 11)
}

fn fiber_report(plane: &Plane, mode: SweepMode, full_oracle: bool) -> Result<FiberReport> {
    let p = plane.field().modulus();
    let plane_type = classify_plane(plane);
    let fiber = Fiber::over_plane(plane, Complement::default())?;
    let detzero_count = match mode {
        SweepMode::Linear => fiber.detzero_count_linear(),
        _ => fiber.detzero_count(),
    };
    let expected = plane_type.expected_detzero(p);
    let (raw_count, raw_exp) = if full_oracle {
        (Some(raw_oracle_count(plane)?), Some(raw_expected(p, detzero_count)))
    } else {
        (None, None)
    };
    Ok(FiberReport {
        plane: plane.to_json(),
        plane_type,
        detzero_count,
        expected,
        ok: detzero_count == expected,
        raw_count,
        raw_expected: raw_exp,
    })
}

/// Sweeps every plane over `F_p`, in parallel over planes. Fiber reports
/// come back in enumeration order regardless of scheduling.
pub fn sweep(p: u32, options: &SweepOptions) -> Result<LocusRun> {
    supported_field(p)?;
    if options.full_oracle && !RAW_ORACLE_PRIMES.contains(&p) {
        return Err(Error::InfeasibleOracle(p));
    }
    let mode = options.mode.resolve(p);
    let planes: Vec<Plane> = enumerate_planes(p)?.collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .expect("thread pool");
    let fibers = pool.install(|| {
        planes
            .par_iter()
            .map(|pl| fiber_report(pl, mode, options.full_oracle))
            .collect::<Result<Vec<_>>>()
    })?;
    let summary = summarize(p, mode, &fibers);
    Ok(LocusRun { fibers, summary })
}

fn summarize(p: u32, mode: SweepMode, fibers: &[FiberReport]) -> LocusSummary {
    let count = |f: fn(&PlaneType) -> bool| fibers.iter().filter(|r| f(&r.plane_type)).count() as u64;
    let generic = count(PlaneType::is_generic);
    let shared_right = count(|t| matches!(t, PlaneType::SharedRight { .. }));
    let shared_left = count(|t| matches!(t, PlaneType::SharedLeft { .. }));
    let x_count: u64 = fibers.iter().map(|r| r.detzero_count).sum();
    let detzero_only_over_shared = fibers
        .iter()
        .all(|r| r.detzero_count == 0 || !r.plane_type.is_generic());
    let planes = fibers.len() as u64;
    let moduli = stratified_count(p, planes, x_count);
    let poincare = poincare_eval(&poincare_moduli(), p);
    let expected = expected_x_count(p);
    let ok = fibers.iter().all(FiberReport::passed)
        && x_count == expected
        && detzero_only_over_shared
        && shared_right == p as u64 + 1
        && shared_left == p as u64 + 1
        && moduli == poincare;
    LocusSummary {
        prime: p,
        mode,
        planes,
        generic_planes: generic,
        shared_right_planes: shared_right,
        shared_left_planes: shared_left,
        detzero_only_over_shared,
        x_count,
        expected,
        moduli_count: to_u64(&moduli),
        poincare_eval: to_u64(&poincare),
        ok,
    }
}

fn poincare_eval(poly: &XiPoly, p: u32) -> BigInt {
    poly.eval_at(p as i64)
}

fn to_u64(n: &BigInt) -> u64 {
    u64::try_from(n).expect("counts for supported primes fit in 64 bits")
}

/// `|X(F_p)|`, summed over all planes.
pub fn total_x_count(p: u32) -> Result<u64> {
    Ok(sweep(p, &SweepOptions::default())?.summary.x_count)
}

/// `|M(F_p)|` from the stratification, using a fresh sweep for `|X(F_p)|`
/// and the enumerated plane count for `|Grass(2, 4)(F_p)|`.
pub fn moduli_point_count(p: u32) -> Result<BigInt> {
    moduli_point_count_with(p, &SweepOptions::default())
}

pub fn moduli_point_count_with(p: u32, options: &SweepOptions) -> Result<BigInt> {
    let run = sweep(p, options)?;
    Ok(stratified_count(p, run.summary.planes, run.summary.x_count))
}
