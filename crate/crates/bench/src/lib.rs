//! Fixtures shared by the criterion benchmarks.

use qudit_entropy::density::{random_density, DensityMatrix};

/// A reproducible batch of random states of mixed rank.
pub fn states(dim: usize, count: usize, seed: u64) -> Vec<DensityMatrix> {
    (0..count)
        .map(|k| random_density(dim, 1 + k % dim, seed + k as u64).expect("valid rank"))
        .collect()
}
