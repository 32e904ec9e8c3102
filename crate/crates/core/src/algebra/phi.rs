//! The 2x2 morphism matrix `phi: O(-1,-2) + O(-1,-1) -> 2 O` and the
//! predicates that cut out the parameter space `W`.

use super::field::Field;
use super::form::{BiForm, Bidegree, LinearV1, LinearV2};
use super::linalg;
use crate::error::{Error, Result};

pub const FIRST_COLUMN: Bidegree = Bidegree::new(1, 2);
pub const SECOND_COLUMN: Bidegree = Bidegree::new(1, 1);
pub const DETERMINANT: Bidegree = Bidegree::new(2, 3);

/// `f = scale * left ⊗ right` with both factors normalized to a leading one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureTensor<F: Field> {
    pub scale: F::Elem,
    pub left: LinearV1<F>,
    pub right: LinearV2<F>,
}

/// Determinant of the 2x2 coefficient matrix of a `(1, 1)` form, rows
/// indexed by `x, y` and columns by `z, w`.
pub fn coefficient_det<F: Field>(f: &BiForm<F>) -> F::Elem {
    let k = f.field();
    let c = f.coeffs();
    k.sub(&k.mul(&c[0], &c[3]), &k.mul(&c[1], &c[2]))
}

fn expect_deg<F: Field>(f: &BiForm<F>, deg: Bidegree) -> Result<()> {
    if f.deg() != deg {
        return Err(Error::BidegreeMismatch(deg, f.deg()));
    }
    Ok(())
}

/// Factors a nonzero `(1, 1)` form as a pure tensor, or returns `None`
/// when its coefficient determinant is nonzero.
pub fn rank1_test<F: Field>(f: &BiForm<F>) -> Result<Option<PureTensor<F>>> {
    expect_deg(f, SECOND_COLUMN)?;
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let k = f.field();
    if !k.is_zero(&coefficient_det(f)) {
        return Ok(None);
    }
    let c = f.coeffs();
    let row = if k.is_zero(&c[0]) && k.is_zero(&c[1]) { 2 } else { 0 };
    let (right, _) = LinearV2::new(c[row].clone(), c[row + 1].clone()).normalized(k);
    // The leading entry of `right` is one, so that column of the coefficient
    // matrix is the left factor itself.
    let col = if k.is_zero(&right.z) { 1 } else { 0 };
    let (left, scale) = LinearV1::new(c[col].clone(), c[2 + col].clone()).normalized(k);
    Ok(Some(PureTensor { scale, left, right }))
}

/// `f * (1 ⊗ u)`, a `(1, 2)` form.
pub fn mul_right_linear<F: Field>(f: &BiForm<F>, u: &LinearV2<F>) -> Result<BiForm<F>> {
    expect_deg(f, SECOND_COLUMN)?;
    Ok(f.mul(&u.to_form(f.field())))
}

/// Whether two forms of equal bidegree are linearly independent.
pub fn linearly_independent<F: Field>(f: &BiForm<F>, g: &BiForm<F>) -> bool {
    let rows = vec![f.coeffs().to_vec(), g.coeffs().to_vec()];
    linalg::rank(f.field(), &rows) == 2
}

/// The matrix `[[phi11, phi12], [phi21, phi22]]`; the first column has
/// bidegree `(1, 2)`, the second `(1, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMatrix<F: Field> {
    phi11: BiForm<F>,
    phi12: BiForm<F>,
    phi21: BiForm<F>,
    phi22: BiForm<F>,
}

impl<F: Field> PhiMatrix<F> {
    pub fn new(phi11: BiForm<F>, phi12: BiForm<F>, phi21: BiForm<F>, phi22: BiForm<F>) -> Result<Self> {
        expect_deg(&phi11, FIRST_COLUMN)?;
        expect_deg(&phi21, FIRST_COLUMN)?;
        expect_deg(&phi12, SECOND_COLUMN)?;
        expect_deg(&phi22, SECOND_COLUMN)?;
        let field = phi11.field();
        for g in [&phi12, &phi21, &phi22] {
            if g.field() != field {
                return Err(Error::FieldMismatch(format!("{field:?}"), format!("{:?}", g.field())));
            }
        }
        Ok(PhiMatrix {
            phi11,
            phi12,
            phi21,
            phi22,
        })
    }

    /// Parses four entries in the order `phi11, phi12, phi21, phi22`.
    pub fn parse(field: F, entries: [&str; 4]) -> Result<Self> {
        let p = |s: &str, d| BiForm::parse_with_degree(field.clone(), d, s);
        Self::new(
            p(entries[0], FIRST_COLUMN)?,
            p(entries[1], SECOND_COLUMN)?,
            p(entries[2], FIRST_COLUMN)?,
            p(entries[3], SECOND_COLUMN)?,
        )
    }

    pub fn field(&self) -> &F {
        self.phi11.field()
    }

    pub fn phi11(&self) -> &BiForm<F> {
        &self.phi11
    }
    pub fn phi12(&self) -> &BiForm<F> {
        &self.phi12
    }
    pub fn phi21(&self) -> &BiForm<F> {
        &self.phi21
    }
    pub fn phi22(&self) -> &BiForm<F> {
        &self.phi22
    }

    /// `phi11 * phi22 - phi21 * phi12`, a `(2, 3)` form.
    pub fn det2(&self) -> BiForm<F> {
        self.phi11
            .mul(&self.phi22)
            .sub(&self.phi21.mul(&self.phi12))
            .expect("both products have bidegree (2, 3)")
    }

    pub fn second_column_independent(&self) -> bool {
        linearly_independent(&self.phi12, &self.phi22)
    }

    /// The unique `u` with `phi11 = phi12 (1 ⊗ u)` and `phi21 = phi22 (1 ⊗ u)`,
    /// if any.
    pub fn factorization_test(&self) -> Result<Option<LinearV2<F>>> {
        if !self.second_column_independent() {
            return Err(Error::DependentColumn);
        }
        let k = self.field();
        let column = |u: LinearV2<F>| -> Vec<F::Elem> {
            let top = self.phi12.mul(&u.to_form(k));
            let bottom = self.phi22.mul(&u.to_form(k));
            top.coeffs().iter().chain(bottom.coeffs()).cloned().collect()
        };
        let columns = [
            column(LinearV2::from_ints(k, 1, 0)),
            column(LinearV2::from_ints(k, 0, 1)),
        ];
        let target: Vec<_> = self.phi11.coeffs().iter().chain(self.phi21.coeffs()).cloned().collect();
        Ok(linalg::solve(k, &columns, &target).map(|x| LinearV2::new(x[0].clone(), x[1].clone())))
    }

    /// Membership in `W`: independent second column and no factorization.
    pub fn in_w(&self) -> bool {
        matches!(self.factorization_test(), Ok(None))
    }

    /// `(phi11 + phi12 (1 ⊗ u), phi21 + phi22 (1 ⊗ u))`.
    pub fn column_operation(&self, u: &LinearV2<F>) -> Self {
        let k = self.field();
        let uf = u.to_form(k);
        PhiMatrix {
            phi11: self.phi11.add(&self.phi12.mul(&uf)).expect("(1, 2)"),
            phi21: self.phi21.add(&self.phi22.mul(&uf)).expect("(1, 2)"),
            ..self.clone()
        }
    }

    pub fn scale_first_column(&self, c: &F::Elem) -> Self {
        PhiMatrix {
            phi11: self.phi11.scale(c),
            phi21: self.phi21.scale(c),
            ..self.clone()
        }
    }
}
