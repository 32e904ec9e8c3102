use thiserror::Error;

use crate::algebra::Bidegree;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),

    #[error("prime {0} is not supported here (supported: {1:?})")]
    UnsupportedPrime(u32, &'static [u32]),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("bidegree mismatch: {0} vs {1}")]
    BidegreeMismatch(Bidegree, Bidegree),

    #[error("bidegree {0} has a negative entry; forms need a, b >= 0")]
    NegativeBidegree(Bidegree),

    #[error("expected {expected} coefficients for bidegree {deg}, found {found}")]
    CoefficientCount {
        deg: Bidegree,
        expected: usize,
        found: usize,
    },

    #[error("the zero form has no rank-one factorization")]
    ZeroForm,

    #[error("second column entries are linearly dependent")]
    DependentColumn,

    #[error("polynomial degree ({0}, {1}) exceeds the bound {2} per variable")]
    DegreeBound(usize, usize, usize),

    #[error("length mismatch: {0} coefficients but {1} twists")]
    LengthMismatch(usize, usize),

    #[error("resolution must have at least one position and no empty position")]
    EmptyResolution,

    #[error("negative projective dimension {0}")]
    NegativeDimension(i64),

    #[error("Grassmannian index out of range: k = {k}, n = {n}")]
    GrassmannRange { k: i64, n: i64 },

    #[error("inexact division: nonzero remainder")]
    InexactDivision,

    #[error("raw oracle sweep over F_{0}^12 is infeasible; use p in {{2, 3}}")]
    InfeasibleOracle(u32),

    #[error("parse error: {0}")]
    Parse(String),
}
