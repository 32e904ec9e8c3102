//! Two-dimensional subspaces of the `(1, 1)` forms over `F_p`, and their
//! classification by the rank-one elements they contain.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::supported_field;
use crate::algebra::{coefficient_det, linalg, rank1_test, BiForm, Field, PrimeField, SECOND_COLUMN};
use crate::error::{Error, Result};

/// A plane in the space of `(1, 1)` forms, stored by its reduced row
/// echelon basis (coefficient order `xz, xw, yz, yw`). Each plane has exactly
/// one such representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Plane {
    field: PrimeField,
    rows: [[u32; 4]; 2],
}

impl Plane {
    /// The plane spanned by two `(1, 1)` forms.
    pub fn from_basis(f: &BiForm<PrimeField>, g: &BiForm<PrimeField>) -> Result<Self> {
        for h in [f, g] {
            if h.deg() != SECOND_COLUMN {
                return Err(Error::BidegreeMismatch(SECOND_COLUMN, h.deg()));
            }
        }
        let field = *f.field();
        let mut rows = vec![f.coeffs().to_vec(), g.coeffs().to_vec()];
        if linalg::rref(&field, &mut rows).len() != 2 {
            return Err(Error::DependentColumn);
        }
        let row = |r: &Vec<u32>| [r[0], r[1], r[2], r[3]];
        Ok(Plane {
            field,
            rows: [row(&rows[0]), row(&rows[1])],
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> &[[u32; 4]; 2] {
        &self.rows
    }

    /// The canonical basis as forms.
    pub fn basis(&self) -> [BiForm<PrimeField>; 2] {
        self.rows
            .map(|r| BiForm::new(self.field, SECOND_COLUMN, r.to_vec()).expect("four coefficients"))
    }

    /// Whether the stored basis is in reduced row echelon form.
    pub fn is_rref(&self) -> bool {
        let lead = |r: &[u32; 4]| r.iter().position(|&c| c != 0);
        let (Some(l0), Some(l1)) = (lead(&self.rows[0]), lead(&self.rows[1])) else {
            return false;
        };
        l0 < l1 && self.rows[0][l0] == 1 && self.rows[1][l1] == 1 && self.rows[0][l1] == 0
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.basis().iter().map(BiForm::to_json).collect())
    }
}

/// All planes over `F_p`, each exactly once, ordered by pivot columns and
/// then by free entries.
pub fn enumerate_planes(p: u32) -> Result<impl Iterator<Item = Plane>> {
    let field = supported_field(p)?;
    let pivots = (0..4).flat_map(|c1| (c1 + 1..4).map(move |c2| (c1, c2)));
    Ok(pivots.flat_map(move |(c1, c2)| {
        // Free entries: right of each pivot, excluding the other pivot column.
        let free: Vec<(usize, usize)> = (c1 + 1..4)
            .filter(|&c| c != c2)
            .map(|c| (0, c))
            .chain((c2 + 1..4).map(|c| (1, c)))
            .collect();
        let total = (p as u64).pow(free.len() as u32);
        (0..total).map(move |mut idx| {
            let mut rows = [[0u32; 4]; 2];
            rows[0][c1] = 1;
            rows[1][c2] = 1;
            for &(r, c) in &free {
                rows[r][c] = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            Plane { field, rows }
        })
    }))
}

/// How a plane meets the rank-one `(1, 1)` forms.
///
/// `q(s, t)` is the coefficient determinant of `s * b1 + t * b2`. If it is
/// not identically zero the plane contains at most two rank-one lines. If it
/// vanishes identically every element is a pure tensor and the plane is
/// `V1* ⊗ v` or `v ⊗ V2*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum PlaneType {
    Generic {
        /// Projective zeros of `q` over `F_p`.
        rank1_lines: u8,
    },
    /// `V1* ⊗ v`; `v` holds the normalized `z, w` coefficients.
    SharedRight { v: [u32; 2] },
    /// `v ⊗ V2*`; `v` holds the normalized `x, y` coefficients.
    SharedLeft { v: [u32; 2] },
}

impl PlaneType {
    pub fn is_generic(&self) -> bool {
        matches!(self, PlaneType::Generic { .. })
    }

    /// Points of the determinant locus expected in the fiber over a plane of
    /// this type.
    pub fn expected_detzero(&self, p: u32) -> u64 {
        match self {
            PlaneType::Generic { .. } => 0,
            PlaneType::SharedRight { .. } => 1,
            PlaneType::SharedLeft { .. } => p as u64 + 1,
        }
    }
}

/// Coefficients `[s^2, st, t^2]` of the binary quadratic `q(s, t)`.
pub fn rank_quadratic(plane: &Plane) -> [u32; 3] {
    let k = plane.field;
    let [b1, b2] = plane.basis();
    let (a, b) = (&plane.rows[0], &plane.rows[1]);
    let mixed = k.sub(
        &k.add(&k.mul(&a[0], &b[3]), &k.mul(&a[3], &b[0])),
        &k.add(&k.mul(&a[1], &b[2]), &k.mul(&a[2], &b[1])),
    );
    [coefficient_det(&b1), mixed, coefficient_det(&b2)]
}

pub fn classify_plane(plane: &Plane) -> PlaneType {
    let k = plane.field;
    let q = rank_quadratic(plane);
    if q.iter().any(|c| *c != 0) {
        let eval = |s: u32, t: u32| {
            let terms = [
                k.mul(&q[0], &k.mul(&s, &s)),
                k.mul(&q[1], &k.mul(&s, &t)),
                k.mul(&q[2], &k.mul(&t, &t)),
            ];
            terms.iter().fold(0, |acc, x| k.add(&acc, x))
        };
        let roots = k.elements().filter(|&t| eval(1, t) == 0).count() + usize::from(eval(0, 1) == 0);
        return PlaneType::Generic {
            rank1_lines: roots as u8,
        };
    }
    let [b1, b2] = plane.basis();
    let f1 = rank1_test(&b1)
        .expect("basis vectors are nonzero")
        .expect("q = 0 forces rank one");
    let f2 = rank1_test(&b2)
        .expect("basis vectors are nonzero")
        .expect("q = 0 forces rank one");
    if f1.right == f2.right {
        PlaneType::SharedRight { v: f1.right.coeffs() }
    } else if f1.left == f2.left {
        PlaneType::SharedLeft { v: f1.left.coeffs() }
    } else {
        unreachable!("two pure tensors with distinct factors span a plane with q != 0")
    }
}
