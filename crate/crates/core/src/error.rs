use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
