use thiserror::Error;

use crate::density::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {deviation:e} exceeds {tol:e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("not a density matrix: {0}")]
    InvalidDensity(ValidationReport),

    #[error("eigenvalue {min_eig:e} lies below -{tol:e}; entropy is undefined")]
    NegativeSpectrum { min_eig: f64, tol: f64 },

    #[error("invalid rank {rank} for dimension {dim}")]
    InvalidRank { rank: usize, dim: usize },

    #[error("spin projection 2m = {two_m} is not allowed for 2j = {two_j}")]
    Projection { two_j: u32, two_m: i32 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("matrix file: {0}")]
    Format(String),
}
