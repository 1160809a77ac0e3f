use thiserror::Error;
use zkclaim_algebra::AlgebraError;
use zkclaim_poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcsError {
    #[error("srs degree must be at least 1")]
    ZeroDegree,
    #[error("exponent {exp} outside the srs range [-{d}, {d}]")]
    DegreeOverflow { exp: i64, d: usize },
    #[error("restricted commitment requires a zero constant term")]
    NonZeroConstantTerm,
    #[error("evaluation point set is empty or has repeated points")]
    BadPointSet,
    #[error("batch challenge mu lies in the evaluation set")]
    ChallengeInSet,
    #[error("{0} polynomials but {1} point sets / interpolants")]
    LengthMismatch(usize, usize),
    #[error("claimed evaluations are inconsistent (inexact division)")]
    InexactDivision,
    #[error("srs self-check failed: {0}")]
    Inconsistent(&'static str),
    #[error("srs format: {0}")]
    Format(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Poly(PolyError),
}

impl From<PolyError> for PcsError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::InexactDivision => PcsError::InexactDivision,
            other => PcsError::Poly(other),
        }
    }
}
