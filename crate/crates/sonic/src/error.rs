use thiserror::Error;
use zkclaim_pcs::PcsError;
use zkclaim_scs::ScsError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SonicError {
    #[error("witness does not satisfy the constraint system")]
    Unsatisfied,
    #[error("SRS degree {have} too small, need {need}")]
    DegreeTooSmall { need: usize, have: usize },
    #[error("data source {0}: signature does not verify")]
    SignatureInvalid(usize),
    #[error("data source {0}: commitment does not match the data values")]
    DataMismatch(usize),
    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),
    #[error("malformed proof: {0}")]
    Format(String),
    #[error(transparent)]
    Scs(ScsError),
    #[error(transparent)]
    Pcs(#[from] PcsError),
}

impl From<ScsError> for SonicError {
    fn from(e: ScsError) -> Self {
        match e {
            ScsError::NonZeroConstantTerm => SonicError::Unsatisfied,
            other => SonicError::Scs(other),
        }
    }
}
