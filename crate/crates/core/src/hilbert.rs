//! Hilbert polynomials on `P1 x P1`.
//!
//! A Hilbert polynomial is a polynomial `P(m, n)` in the two twisting
//! parameters. For a line bundle `O(a, b)` it is `(m + a + 1)(n + b + 1)`;
//! for a sheaf given by a finite resolution by sums of line bundles it is the
//! alternating sum over the terms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Bidegree;
use crate::error::{Error, Result};

/// Largest degree allowed in either variable.
pub const MAX_DEGREE: usize = 4;

/// `sum c[i][j] m^i n^j` with exact rational coefficients.
///
/// The grid is rectangular and trimmed: the last row and the last column
/// each contain a nonzero entry. The zero polynomial has an empty grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    coeffs: Vec<Vec<BigRational>>,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl BiPoly {
    /// Builds a polynomial from a (possibly ragged, untrimmed) grid indexed
    /// `[m-degree][n-degree]`.
    pub fn new(grid: Vec<Vec<BigRational>>) -> Result<Self> {
        let rows = grid.len();
        let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
        let mut coeffs = vec![vec![BigRational::zero(); cols]; rows];
        for (i, row) in grid.into_iter().enumerate() {
            for (j, c) in row.into_iter().enumerate() {
                coeffs[i][j] = c;
            }
        }
        let deg_m = (0..rows).rev().find(|&i| coeffs[i].iter().any(|c| !c.is_zero()));
        let deg_n = (0..cols).rev().find(|&j| coeffs.iter().any(|r| !r[j].is_zero()));
        let (Some(dm), Some(dn)) = (deg_m, deg_n) else {
            return Ok(BiPoly { coeffs: Vec::new() });
        };
        if dm > MAX_DEGREE || dn > MAX_DEGREE {
            return Err(Error::DegreeBound(dm, dn, MAX_DEGREE));
        }
        coeffs.truncate(dm + 1);
        for row in &mut coeffs {
            row.truncate(dn + 1);
        }
        Ok(BiPoly { coeffs })
    }

    pub fn from_ints(grid: &[&[i64]]) -> Result<Self> {
        Self::new(grid.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect())
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![vec![c]]).expect("degree 0")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `m`, `None` for zero.
    pub fn deg_m(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_n(&self) -> Option<usize> {
        self.coeffs.first().and_then(|r| r.len().checked_sub(1))
    }

    /// Coefficient of `m^i n^j`.
    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(BigRational, BigRational) -> BigRational) -> Self {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self.deg_n().max(other.deg_n()).map_or(0, |d| d + 1);
        let grid = (0..rows)
            .map(|i| (0..cols).map(|j| f(self.coeff(i, j), other.coeff(i, j))).collect())
            .collect();
        Self::new(grid).expect("sum of bounded polynomials stays bounded")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|r| r.iter().map(|x| x * c).collect()).collect())
            .expect("scaling never raises the degree")
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (Some(am), Some(an), Some(bm), Some(bn)) = (self.deg_m(), self.deg_n(), other.deg_m(), other.deg_n())
        else {
            return Ok(Self::zero());
        };
        let mut grid = vec![vec![BigRational::zero(); an + bn + 1]; am + bm + 1];
        for (i1, r1) in self.coeffs.iter().enumerate() {
            for (j1, c1) in r1.iter().enumerate() {
                for (i2, r2) in other.coeffs.iter().enumerate() {
                    for (j2, c2) in r2.iter().enumerate() {
                        grid[i1 + i2][j1 + j2] += c1 * c2;
                    }
                }
            }
        }
        Self::new(grid)
    }

    pub fn eval(&self, m: &BigRational, n: &BigRational) -> BigRational {
        // Horner in m over Horner in n.
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, row| {
            let inner = row.iter().rev().fold(BigRational::zero(), |a, c| a * n + c);
            acc * m + inner
        })
    }

    pub fn eval_int(&self, m: i64, n: i64) -> BigRational {
        self.eval(&int(m), &int(n))
    }

    /// `P(m + a, n + b)`, expanded.
    pub fn twist(&self, a: i64, b: i64) -> Self {
        let rows = self.coeffs.len();
        let cols = self.deg_n().map_or(0, |d| d + 1);
        let mut grid = vec![vec![BigRational::zero(); cols]; rows];
        let a_pows = powers(a, rows);
        let b_pows = powers(b, cols);
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                // (m + a)^i (n + b)^j = sum C(i,k) a^(i-k) m^k * C(j,l) b^(j-l) n^l
                for k in 0..=i {
                    for l in 0..=j {
                        let t = c * &a_pows[i - k] * &b_pows[j - l] * int(binom(i, k) * binom(j, l));
                        grid[k][l] += t;
                    }
                }
            }
        }
        Self::new(grid).expect("twisting preserves the degree")
    }
}

fn powers(base: i64, count: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(count.max(1));
    let mut acc = BigRational::one();
    for _ in 0..count.max(1) {
        out.push(acc.clone());
        acc *= int(base);
    }
    out
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

impl fmt::Display for BiPoly {
    /// Compact form such as `3m+2n+2` or `mn+m`, highest total degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(usize, usize, &BigRational)> = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push((i, j, c));
                }
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by_key(|t| std::cmp::Reverse((t.0 + t.1, t.0)));
        for (k, (i, j, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if negative {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let mut vars = String::new();
            for (var, e) in [("m", i), ("n", j)] {
                match e {
                    0 => {}
                    1 => vars.push_str(var),
                    _ => vars.push_str(&format!("{var}^{e}")),
                }
            }
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{vars}")?;
            } else if abs.is_integer() {
                write!(f, "{abs}{vars}")?;
            } else {
                write!(f, "({abs}){vars}")?;
            }
        }
        Ok(())
    }
}

/// The terms of a resolution by sums of line bundles, position `0` being the
/// term that surjects onto the sheaf.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionSpec {
    pub positions: Vec<Vec<Bidegree>>,
}

impl ResolutionSpec {
    pub fn new(positions: Vec<Vec<Bidegree>>) -> Result<Self> {
        let spec = ResolutionSpec { positions };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.positions.is_empty() || self.positions.iter().any(Vec::is_empty) {
            return Err(Error::EmptyResolution);
        }
        Ok(())
    }

    /// Parses `{"positions": [[[a, b], ...], ...]}`. Syntax errors carry
    /// serde's line and column.
    pub fn from_json(s: &str) -> Result<Self> {
        let spec: ResolutionSpec = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    fn from_pairs(positions: &[&[(i32, i32)]]) -> Self {
        ResolutionSpec {
            positions: positions
                .iter()
                .map(|p| p.iter().map(|&d| Bidegree::from(d)).collect())
                .collect(),
        }
    }

    /// `0 -> O(-1,-2) + O(-1,-1) -> 2 O -> F -> 0`.
    pub fn open_stratum() -> Self {
        Self::from_pairs(&[&[(0, 0), (0, 0)], &[(-1, -2), (-1, -1)]])
    }

    /// `0 -> O(-2,-1) + O(-1,-2) -> O(-1,-1) + O(0,1) -> F -> 0`.
    pub fn divisor_stratum() -> Self {
        Self::from_pairs(&[&[(-1, -1), (0, 1)], &[(-2, -1), (-1, -2)]])
    }

    /// `0 -> O(-a,-b) -> O -> O_C -> 0` for a curve `C` of bidegree `(a, b)`.
    pub fn structure_sheaf(a: i32, b: i32) -> Self {
        Self::from_pairs(&[&[(0, 0)], &[(-a, -b)]])
    }

    /// If this is the resolution of a curve's structure sheaf, the curve's
    /// bidegree.
    pub fn curve_bidegree(&self) -> Option<Bidegree> {
        match self.positions.as_slice() {
            [p0, p1] if p0.as_slice() == [Bidegree::new(0, 0)] && p1.len() == 1 => {
                let d = p1[0];
                (d.a <= 0 && d.b <= 0 && (d.a, d.b) != (0, 0)).then(|| Bidegree::new(-d.a, -d.b))
            }
            _ => None,
        }
    }
}

/// Hilbert polynomial of `O(a, b)`: `(m + a + 1)(n + b + 1)`.
pub fn hilb_line(a: i64, b: i64) -> BiPoly {
    BiPoly::from_ints(&[&[(a + 1) * (b + 1), a + 1], &[b + 1, 1]]).expect("bilinear")
}

/// Alternating sum of line-bundle Hilbert polynomials over a resolution.
pub fn hilb_resolution(res: &ResolutionSpec) -> BiPoly {
    res.positions
        .iter()
        .enumerate()
        .flat_map(|(k, terms)| terms.iter().map(move |d| (k, d)))
        .fold(BiPoly::zero(), |acc, (k, d)| {
            let p = hilb_line(d.a as i64, d.b as i64);
            if k % 2 == 0 {
                acc.add(&p)
            } else {
                acc.sub(&p)
            }
        })
}

/// `extra + sum coeffs[i] * hilb_line(twists[i])`.
pub fn hilb_combination(coeffs: &[BigRational], twists: &[Bidegree], extra: &BiPoly) -> Result<BiPoly> {
    if coeffs.len() != twists.len() {
        return Err(Error::LengthMismatch(coeffs.len(), twists.len()));
    }
    Ok(coeffs.iter().zip(twists).fold(extra.clone(), |acc, (c, d)| {
        acc.add(&hilb_line(d.a as i64, d.b as i64).scale(c))
    }))
}

/// `P(0, 0)`.
pub fn euler_char(p: &BiPoly) -> BigRational {
    p.coeff(0, 0)
}

/// Arithmetic genus `1 - chi(O_C)` of a curve whose structure sheaf has
/// Hilbert polynomial `p`.
pub fn genus(p: &BiPoly) -> BigRational {
    BigRational::one() - euler_char(p)
}

/// `3m + 2n + 2`, the Hilbert polynomial shared by every sheaf in the moduli
/// space.
pub fn moduli_polynomial() -> BiPoly {
    BiPoly::from_ints(&[&[2, 2], &[3]]).expect("linear")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(grid: &[&[i64]]) -> BiPoly {
        BiPoly::from_ints(grid).unwrap()
    }

    #[test]
    fn trims_and_bounds() {
        let p = poly(&[&[1, 0, 0], &[0, 0, 0]]);
        assert_eq!(p, poly(&[&[1]]));
        assert_eq!(p.deg_m(), Some(0));
        assert_eq!(poly(&[&[0, 0]]), BiPoly::zero());
        let too_big = BiPoly::from_ints(&[&[0], &[0], &[0], &[0], &[0], &[1]]);
        assert_eq!(too_big, Err(Error::DegreeBound(5, 0, MAX_DEGREE)));
        assert!(hilb_line(1, 1)
            .mul(&hilb_line(1, 1))
            .unwrap()
            .mul(&hilb_line(0, 0))
            .is_ok());
        let p4 = (0..4)
            .try_fold(BiPoly::constant(int(1)), |acc, _| acc.mul(&hilb_line(0, 0)))
            .unwrap();
        assert!(p4.mul(&hilb_line(0, 0)).is_err());
    }

    #[test]
    fn line_bundles() {
        assert_eq!(hilb_line(0, 0), poly(&[&[1, 1], &[1, 1]]));
        assert_eq!(hilb_line(-1, -1), poly(&[&[0, 0], &[0, 1]]));
        assert_eq!(hilb_line(-1, -1).to_string(), "mn");
        // (m - 1)(n - 2) = mn - 2m - n + 2
        assert_eq!(hilb_line(-2, -3), poly(&[&[2, -1], &[-2, 1]]));
    }

    #[test]
    fn display() {
        assert_eq!(moduli_polynomial().to_string(), "3m+2n+2");
        assert_eq!(poly(&[&[-1, 2], &[3]]).to_string(), "3m+2n-1");
        assert_eq!(poly(&[&[0], &[1, 1]]).to_string(), "mn+m");
        assert_eq!(BiPoly::zero().to_string(), "0");
        assert_eq!(poly(&[&[0, 0, -1]]).to_string(), "-n^2");
    }

    #[test]
    fn resolutions() {
        assert_eq!(hilb_resolution(&ResolutionSpec::open_stratum()), moduli_polynomial());
        assert_eq!(hilb_resolution(&ResolutionSpec::divisor_stratum()), moduli_polynomial());
        assert_eq!(
            hilb_resolution(&ResolutionSpec::structure_sheaf(1, 3)),
            poly(&[&[1, 1], &[3]])
        );
        let curve = hilb_resolution(&ResolutionSpec::structure_sheaf(2, 3));
        assert_eq!(curve, poly(&[&[-1, 2], &[3]]));
        assert_eq!(euler_char(&curve), int(-1));
        assert_eq!(genus(&curve), int(2));
    }

    #[test]
    fn combination() {
        let p = hilb_combination(
            &[int(3), int(-2)],
            &[Bidegree::new(-1, -1), Bidegree::new(0, 0)],
            &moduli_polynomial(),
        )
        .unwrap();
        assert_eq!(p.to_string(), "mn+m");
        assert_eq!(p, hilb_line(-1, 0));
        let q = hilb_combination(&[int(1)], &[Bidegree::new(-1, 0)], &BiPoly::zero()).unwrap();
        assert_eq!(q, poly(&[&[0], &[1, 1]]));
        assert_eq!(
            hilb_combination(&[int(1)], &[], &BiPoly::zero()),
            Err(Error::LengthMismatch(1, 0))
        );
    }

    #[test]
    fn twists() {
        let curve = poly(&[&[-1, 2], &[3]]);
        assert_eq!(curve.twist(1, 0), moduli_polynomial());
        assert_eq!(curve.twist(0, 1).to_string(), "3m+2n+1");
        assert_eq!(curve.twist(0, 0), curve);
    }

    #[test]
    fn euler_of_zero() {
        assert_eq!(euler_char(&BiPoly::zero()), int(0));
        assert_eq!(euler_char(&moduli_polynomial()), int(2));
    }

    #[test]
    fn validation() {
        assert_eq!(ResolutionSpec::new(vec![]), Err(Error::EmptyResolution));
        assert_eq!(ResolutionSpec::new(vec![vec![]]), Err(Error::EmptyResolution));
        assert_eq!(
            ResolutionSpec::from_json(r#"{"positions":[]}"#),
            Err(Error::EmptyResolution)
        );
        let err = ResolutionSpec::from_json("{\"positions\": [[[0, 0]]\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let spec = ResolutionSpec::from_json(r#"{"positions":[[[0,0],[0,0]],[[-1,-2],[-1,-1]]]}"#).unwrap();
        assert_eq!(spec, ResolutionSpec::open_stratum());
    }

    #[test]
    fn curve_detection() {
        assert_eq!(
            ResolutionSpec::structure_sheaf(2, 3).curve_bidegree(),
            Some(Bidegree::new(2, 3))
        );
        assert_eq!(ResolutionSpec::open_stratum().curve_bidegree(), None);
        assert_eq!(ResolutionSpec::structure_sheaf(0, 0).curve_bidegree(), None);
    }
}
