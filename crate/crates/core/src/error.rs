use thiserror::Error;

/// Errors raised by state construction, the cloner family and the experiments.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Bloch vector: norm {norm} (expected {expected})")]
    InvalidBloch { norm: f64, expected: &'static str },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("input state must be pure (Bloch norm {norm})")]
    RequiresPureInput { norm: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid cloner parameters: {0}")]
    InvalidParams(String),

    #[error("state is not a member of the covariant cloner family (residual {residual:e})")]
    NotInFamily { residual: f64 },

    #[error("grid resolution must be at least 3, got {0}")]
    InvalidResolution(usize),

    #[error("shot count must be at least 1")]
    InvalidShots,

    #[error("output state is not physical (smallest eigenvalue {min_eigenvalue:e})")]
    NotPhysical { min_eigenvalue: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
