use thiserror::Error;

use crate::grading::Multidegree;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("rank {0} is outside the supported range 0..={max}", max = crate::grading::MAX_RANK)]
    RankOutOfRange(usize),

    #[error("multidegree arithmetic overflowed")]
    DegreeOverflow,

    #[error("monomial {0} has non-positive degree under the grading functional")]
    NonPositiveMonomial(Multidegree),

    #[error("no strictly positive grading functional exists for the given monomials")]
    NoPositiveFunctional,

    #[error("grading functional weights must all be at least 1, got {0:?}")]
    InvalidFunctional(Vec<i64>),

    #[error("truncation bound must be non-negative, got {0}")]
    NegativeBound(i64),

    #[error("region is unbounded outside the positive orthant")]
    UnboundedRegion,

    #[error("factor exponent overflowed")]
    ExponentOverflow,

    #[error("degree {0} lies outside the truncation region")]
    OutsideRegion(Multidegree),

    #[error("zero monomial is not allowed in a product form")]
    ZeroMonomial,

    #[error("truncation specs differ")]
    SpecMismatch,

    #[error("monoid map has an infinite fiber")]
    InfiniteFiber,

    #[error("series stores degree {0} outside the positive orthant of the map domain")]
    OutsideDomain(Multidegree),

    #[error("factor monomial {0} is not supported on a single coordinate")]
    NotCoordinateSplit(Multidegree),

    #[error("factor monomial {0} maps to the zero monomial")]
    ZeroImageMonomial(Multidegree),

    #[error("matrix rows have inconsistent lengths")]
    RaggedMatrix,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
