//! One-variable integer polynomials in `ξ`: Poincaré polynomials of the
//! spaces involved and the stratified sum for the moduli space.
//!
//! All varieties handled here have cohomology only in even degrees, and the
//! coefficient of `ξ^i` is `dim H^{2i}`. For such spaces with a cell
//! decomposition the same polynomial evaluated at `q` counts points over
//! `F_q`, which is what [`crate::locus`] cross-checks.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer polynomial, index = degree. Leading coefficient nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XiPoly {
    coeffs: Vec<BigInt>,
}

impl XiPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        XiPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        XiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// `c ξ^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients from degree 0 upward.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients from the leading term down to the constant term.
    pub fn coeffs_descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Long division over the integers. Requires the divisor's leading
    /// coefficient to divide every intermediate leading coefficient.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::InexactDivision);
        };
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (q, r) = rem[k].div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &q * c;
            }
            quot[k - dd] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; errors on a nonzero remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    /// Exact value at an integer point.
    pub fn eval_at(&self, q: i64) -> BigInt {
        let q = BigInt::from(q);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &q + c)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl fmt::Display for XiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let coeff = if abs.is_one() && k > 0 {
                String::new()
            } else {
                abs.to_string()
            };
            match k {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}ξ")?,
                _ => write!(f, "{coeff}ξ^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// `1 + ξ + ... + ξ^n`, the Poincaré polynomial of `P^n`.
pub fn proj_poincare(n: i64) -> Result<XiPoly> {
    if n < 0 {
        return Err(Error::NegativeDimension(n));
    }
    Ok(XiPoly::from_ints(&vec![1; n as usize + 1]))
}

/// Gaussian binomial `[n choose k]_ξ`, the Poincaré polynomial of the
/// Grassmannian of `k`-planes in an `n`-dimensional space.
///
/// Computed as `prod (1 - ξ^(n-i)) / prod (1 - ξ^(i+1))` for `i < k` with an
/// exact division.
pub fn grass_poincare(k: i64, n: i64) -> Result<XiPoly> {
    if k < 0 || n < 0 || k > n {
        return Err(Error::GrassmannRange { k, n });
    }
    let one = XiPoly::one();
    let mut num = XiPoly::one();
    let mut den = XiPoly::one();
    for i in 0..k as usize {
        num = num.mul(&one.sub(&XiPoly::monomial(1, n as usize - i)));
        den = den.mul(&one.sub(&XiPoly::monomial(1, i + 1)));
    }
    num.div_exact(&den)
}

/// Poincaré polynomial of the moduli space, summed over its three strata:
///
/// * the open stratum: a `P^9`-bundle over `Grass(2, 4)` minus a `P^1` and a
///   `P^1 x P^1`,
/// * the divisor: the universal `(2, 3)`-curve, a `P^10`-bundle over `P^1 x P^1`,
/// * the closed stratum: `P^11`.
pub fn poincare_moduli() -> XiPoly {
    let p = |n| proj_poincare(n).expect("nonnegative");
    let grass = grass_poincare(2, 4).expect("0 <= 2 <= 4");
    let quadric = p(1).pow(2);
    p(9).mul(&grass)
        .sub(&p(1))
        .sub(&quadric)
        .add(&p(10).mul(&quadric))
        .add(&p(11))
}
