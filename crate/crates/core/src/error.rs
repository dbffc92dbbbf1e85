use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RebitError {
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is not symmetric (|m12 - m21| = {0:e})")]
    NotSymmetric(f64),
    #[error("trace is {0}, expected 1")]
    BadTrace(f64),
    #[error("Bloch vector norm {0} exceeds 1")]
    OutsideBlochDisk(f64),
    #[error("polar radius {0} outside [0, 1]")]
    BadRadius(f64),
    #[error("channel output is not a state: Bloch norm {norm}")]
    NotPositive { norm: f64 },
    #[error("matrix is not orthogonal (‖ΩᵗΩ − I‖ = {0:e})")]
    NotOrthogonal(f64),
    #[error("linear part is not diagonal; decompose the channel first")]
    NotDiagonal,
    #[error("map is not completely positive")]
    NotCompletelyPositive,
}

pub type Result<T> = std::result::Result<T, RebitError>;
