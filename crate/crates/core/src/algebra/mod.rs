//! Exact arithmetic for prime fields and bihomogeneous forms.

mod field;
mod form;
pub mod linalg;
mod phi;

pub use field::{Field, PrimeField, RationalField};
pub use form::{BiForm, Bidegree, LinearV1, LinearV2};
pub use phi::{
    coefficient_det, linearly_independent, mul_right_linear, rank1_test, PhiMatrix, PureTensor, DETERMINANT,
    FIRST_COLUMN, SECOND_COLUMN,
};
