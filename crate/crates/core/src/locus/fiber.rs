//! Fibers of the quotient over a fixed second column.
//!
//! Fix `(phi12, phi22)`. The first column `(phi11, phi21)` ranges over
//! `F_p^12` (two `(1, 2)` forms). Column operations add elements of
//! `K = {(phi12 (1 ⊗ u), phi22 (1 ⊗ u))}`, a plane, and scaling the first
//! column is the remaining freedom, so the fiber is `P(F_p^12 / K) = P^9`.
//! The determinant is linear in the first column and vanishes on `K`, so it
//! descends to the quotient; we realize the quotient as a coordinate
//! complement of `K`.

use super::plane::Plane;
use super::{supported_field, RAW_ORACLE_PRIMES};
use crate::algebra::{linalg, BiForm, LinearV2, PhiMatrix, PrimeField, FIRST_COLUMN, SECOND_COLUMN};
use crate::error::{Error, Result};

/// Length of a first-column vector `(phi11, phi21)`.
pub const FIRST_COLUMN_DIM: usize = 12;
/// Dimension of the fiber's ambient space before projectivization.
pub const QUOTIENT_DIM: usize = FIRST_COLUMN_DIM - 2;

/// Which coordinate complement of `K` to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Complement {
    /// Drop the pivot columns of `K`'s echelon form, pivoting left to right.
    #[default]
    LeadingPivots,
    /// Drop the pivot columns found when pivoting right to left.
    TrailingPivots,
}

/// Twelve `F_p` lanes packed into one `u128`, eight bits each.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Packed(u128);

const LANE_HIGH: u128 = {
    let mut m = 0u128;
    let mut i = 0;
    while i < DETERMINANT_LEN {
        m |= 0x80 << (8 * i);
        i += 1;
    }
    m
};

const DETERMINANT_LEN: usize = 12;

impl Packed {
    fn pack(v: &[u32]) -> Self {
        Packed(
            v.iter()
                .enumerate()
                .fold(0, |acc, (i, &c)| acc | (c as u128) << (8 * i)),
        )
    }

    /// Lane-wise addition mod `p`. Lanes stay below `p < 64`, so sums never
    /// reach the high bit of a lane.
    #[inline(always)]
    fn add(self, other: Packed, p_lanes: u128) -> Packed {
        let s = self.0 + other.0;
        let ge = ((s | LANE_HIGH) - p_lanes) & LANE_HIGH;
        let correction = (ge >> 7) * (p_lanes & 0xff);
        Packed(s - correction)
    }
}

/// The determinant map restricted to a complement of `K`.
#[derive(Clone, Debug)]
pub struct Fiber {
    field: PrimeField,
    phi12: BiForm<PrimeField>,
    phi22: BiForm<PrimeField>,
    /// Coordinates of `F_p^12` spanning the complement.
    coords: Vec<usize>,
    /// `det` of each complement basis vector, as a `(2, 3)` coefficient vector.
    images: Vec<Vec<u32>>,
}

impl Fiber {
    pub fn new(phi12: &BiForm<PrimeField>, phi22: &BiForm<PrimeField>, complement: Complement) -> Result<Self> {
        let field = *phi12.field();
        supported_field(field.modulus())?;
        for f in [phi12, phi22] {
            if f.deg() != SECOND_COLUMN {
                return Err(Error::BidegreeMismatch(SECOND_COLUMN, f.deg()));
            }
        }
        let mut k_rows: Vec<Vec<u32>> = [(1, 0), (0, 1)]
            .iter()
            .map(|&(a, b)| {
                let u = LinearV2::from_ints(&field, a, b).to_form(&field);
                concat(&phi12.mul(&u), &phi22.mul(&u))
            })
            .collect();
        if complement == Complement::TrailingPivots {
            k_rows.iter_mut().for_each(|r| r.reverse());
        }
        let mut pivots = linalg::rref(&field, &mut k_rows);
        if pivots.len() != 2 {
            return Err(Error::DependentColumn);
        }
        if complement == Complement::TrailingPivots {
            pivots.iter_mut().for_each(|c| *c = FIRST_COLUMN_DIM - 1 - *c);
        }
        let coords: Vec<usize> = (0..FIRST_COLUMN_DIM).filter(|c| !pivots.contains(c)).collect();
        let images = coords
            .iter()
            .map(|&c| {
                let mut v = vec![0u32; FIRST_COLUMN_DIM];
                v[c] = 1;
                let det = first_column_phi(&field, &v, phi12, phi22).det2();
                det.coeffs().to_vec()
            })
            .collect();
        Ok(Fiber {
            field,
            phi12: phi12.clone(),
            phi22: phi22.clone(),
            coords,
            images,
        })
    }

    pub fn over_plane(plane: &Plane, complement: Complement) -> Result<Self> {
        let [b1, b2] = plane.basis();
        Self::new(&b1, &b2, complement)
    }

    pub fn complement_coords(&self) -> &[usize] {
        &self.coords
    }

    /// Number of points of `P^9(F_p)`: `(p^10 - 1) / (p - 1)`.
    pub fn point_count(&self) -> u64 {
        let p = self.field.modulus() as u64;
        (p.pow(QUOTIENT_DIM as u32) - 1) / (p - 1)
    }

    /// Counts points of the fiber where the determinant vanishes by visiting
    /// every point once.
    ///
    /// Points are normalized with their first nonzero coordinate equal to
    /// one; the trailing coordinates run through an odometer, and since the
    /// determinant is linear each digit step adds one precomputed image.
    pub fn detzero_count(&self) -> u64 {
        let p = self.field.modulus();
        let p_lanes = Packed::pack(&[p; DETERMINANT_LEN]).0;
        let images: Vec<Packed> = self.images.iter().map(|v| Packed::pack(v)).collect();
        let n = images.len();
        let mut zeros = 0u64;
        let mut digits = vec![0u32; n];
        for lead in 0..n {
            let tail = &images[lead + 1..];
            let digits = &mut digits[lead + 1..];
            digits.fill(0);
            let mut acc = images[lead];
            loop {
                zeros += u64::from(acc.0 == 0);
                // Advance the odometer, least significant digit last.
                let mut k = tail.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    acc = acc.add(tail[k], p_lanes);
                    digits[k] += 1;
                    if digits[k] < p {
                        break;
                    }
                    digits[k] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
        zeros
    }

    /// The same count from the rank of the linear determinant map:
    /// `(p^d - 1) / (p - 1)` with `d` the kernel dimension.
    pub fn detzero_count_linear(&self) -> u64 {
        let p = self.field.modulus() as u64;
        let rank = linalg::rank(&self.field, &self.images);
        let d = (QUOTIENT_DIM - rank) as u32;
        (p.pow(d) - 1) / (p - 1)
    }

    /// The matrix whose first column is the complement vector with the given
    /// coordinates.
    pub fn phi_at(&self, complement_coeffs: &[u32]) -> PhiMatrix<PrimeField> {
        let mut v = vec![0u32; FIRST_COLUMN_DIM];
        for (&c, &x) in self.coords.iter().zip(complement_coeffs) {
            v[c] = x;
        }
        first_column_phi(&self.field, &v, &self.phi12, &self.phi22)
    }
}

fn concat(a: &BiForm<PrimeField>, b: &BiForm<PrimeField>) -> Vec<u32> {
    a.coeffs().iter().chain(b.coeffs()).copied().collect()
}

fn first_column_phi(
    field: &PrimeField,
    v: &[u32],
    phi12: &BiForm<PrimeField>,
    phi22: &BiForm<PrimeField>,
) -> PhiMatrix<PrimeField> {
    let half = FIRST_COLUMN_DIM / 2;
    let form = |c: &[u32]| BiForm::new(*field, FIRST_COLUMN, c.to_vec()).expect("six coefficients");
    PhiMatrix::new(form(&v[..half]), phi12.clone(), form(&v[half..]), phi22.clone()).expect("bidegrees are fixed")
}

/// Counts every raw first column `(phi11, phi21)` in `F_p^12` with
/// vanishing determinant, computing each determinant from scratch. Only
/// feasible for `p` in `{2, 3}`.
///
/// Expect `p^2 + N (p - 1) p^2` where `N` is [`Fiber::detzero_count`]: the
/// `p^2` elements of `K` plus `(p - 1) p^2` raw vectors per projective point.
pub fn raw_oracle_count(plane: &Plane) -> Result<u64> {
    let field = plane.field();
    let p = field.modulus();
    if !RAW_ORACLE_PRIMES.contains(&p) {
        return Err(Error::InfeasibleOracle(p));
    }
    let [phi12, phi22] = plane.basis();
    let mut v = [0u32; FIRST_COLUMN_DIM];
    let mut count = 0u64;
    loop {
        if first_column_phi(&field, &v, &phi12, &phi22).det2().is_zero() {
            count += 1;
        }
        let mut k = 0;
        while k < FIRST_COLUMN_DIM {
            v[k] += 1;
            if v[k] < p {
                break;
            }
            v[k] = 0;
            k += 1;
        }
        if k == FIRST_COLUMN_DIM {
            return Ok(count);
        }
    }
}

/// `p^2 + n (p - 1) p^2`.
pub fn raw_expected(p: u32, n: u64) -> u64 {
    let p = p as u64;
    p * p + n * (p - 1) * p * p
}
