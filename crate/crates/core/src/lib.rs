//! Entropies of virtual subsystems carved out of a single qudit.
//!
//! A single N-level density matrix has no physical subsystems, but whenever
//! `N = n * m` the matrix can be cut into `n x n` boxes of size `m x m` and
//! read as the state of an artificial bipartite system. The same trick with a
//! zero-padded matrix gives tripartite splits. This crate provides:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`linalg`] | dense complex matrices and a Hermitian Jacobi eigensolver |
//! | [`density`] | validated density matrices, spin labels, random states, matrix files |
//! | [`partition`] | box-partition marginals, padding, tripartite traces, spin-9/2 maps |
//! | [`entropy`] | von Neumann entropy, mutual information, inequality reports |
//! | [`toymodel`] | the one-parameter spin-9/2 family and its information sweep |
//! | [`search`] | seeded random search for violations of the spin-9/2 inequalities |
//!
//! ```
//! use qudit_entropy::density::DensityMatrix;
//! use qudit_entropy::entropy::{von_neumann_entropy, EntropyOptions};
//!
//! let rho = DensityMatrix::maximally_mixed(10);
//! let s = von_neumann_entropy(&rho, &EntropyOptions::default()).unwrap();
//! assert!((s - 10f64.ln()).abs() < 1e-12);
//! ```

pub mod density;
pub mod entropy;
mod error;
pub mod linalg;
pub mod partition;
pub mod search;
pub mod toymodel;

pub use density::{DensityMatrix, SpinLabel, ValidationReport};
pub use entropy::{EntropyOptions, InequalityKind, InequalityReport, LogBase};
pub use error::{Error, Result};
pub use linalg::{Complex64, ComplexMatrix, Matrix};
pub use partition::{BipartiteSplit, FactorSet, PaperMap, TripartiteSplit};
pub use search::{SearchSummary, SearchTarget};
pub use toymodel::{SweepRecord, ToyModelState};
