use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeoError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not skew-adjoint (residual {0:.3e})")]
    NotSkewAdjoint(f64),
    #[error("complex algebra element has nonzero trace (|Tr| = {0:.3e})")]
    NotTraceless(f64),
    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("not a tangent vector (residual {0:.3e})")]
    NotTangent(f64),
    #[error("element is not in {space} (residual {residual:.3e})")]
    NotInSubspace { space: &'static str, residual: f64 },
    #[error("invalid partition n = {n}, k = {k}")]
    InvalidPartition { n: usize, k: usize },
    #[error("not an orthogonal reflection (residual {0:.3e})")]
    NotReflection(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, GeoError>;
