use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("msm length mismatch: {scalars} scalars vs {points} points")]
    MsmLength { scalars: usize, points: usize },
    #[error("invalid encoding length: expected {expected} bytes, got {got}")]
    Length { expected: usize, got: usize },
    #[error("non-canonical scalar encoding")]
    NonCanonicalScalar,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is not in the prime-order subgroup")]
    NotInSubgroup,
    #[error("coordinate is not a canonical base-field element")]
    NonCanonicalCoordinate,
    #[error("unknown curve id `{0}`")]
    UnknownCurve(String),
    #[error("hex decoding failed: {0}")]
    Hex(String),
}
