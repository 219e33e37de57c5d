//! Seeded random search over density matrices for violations of the
//! spin-9/2 inequalities that no theorem covers.
//!
//! Trial 0 is always the basis state `|0><0|`. Trial `k >= 1` draws a random
//! state whose rank and entries are fixed by a seed derived from
//! `(seed, k)`, so trials are independent and the whole run is reproducible
//! regardless of how the work is scheduled.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::{random_density, DensityMatrix};
use crate::entropy::{check_extra, check_paper_ssa, EntropyOptions};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchTarget {
    /// Strong subadditivity from the literal spin-9/2 maps.
    PaperSsa,
    /// The `(RHO12, RHO3T)` subadditivity and Araki-Lieb pair; the slack of a
    /// trial is the smaller of the two.
    #[serde(rename = "extra-12-3")]
    Extra12_3,
}

impl SearchTarget {
    pub fn name(&self) -> &'static str {
        match self {
            SearchTarget::PaperSsa => "paper-ssa",
            SearchTarget::Extra12_3 => "extra-12-3",
        }
    }

    pub fn slack(&self, rho: &DensityMatrix, opts: &EntropyOptions) -> Result<f64> {
        match self {
            SearchTarget::PaperSsa => Ok(check_paper_ssa(rho, opts)?.slack),
            SearchTarget::Extra12_3 => {
                let [_, _, sub, al] = check_extra(rho, opts)?;
                Ok(sub.slack.min(al.slack))
            }
        }
    }
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [SearchTarget::PaperSsa, SearchTarget::Extra12_3]
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown search target {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub target: SearchTarget,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub min_slack: f64,
    /// Trial index at which `min_slack` occurred (first one on ties).
    pub argmin_seed_index: usize,
    /// Trials with `slack < -tol`.
    pub violations: usize,
    pub tol: f64,
}

/// Per-trial outcome, in trial order.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchRun {
    pub summary: SearchSummary,
    pub slacks: Vec<f64>,
}

impl SearchRun {
    /// `trial_index,slack` rows.
    pub fn slack_log(&self) -> String {
        self.slacks
            .iter()
            .enumerate()
            .map(|(k, s)| format!("{k},{s:.17e}\n"))
            .collect()
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial `index` of a run with base seed `seed`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    splitmix64(splitmix64(seed) ^ index as u64)
}

/// The state evaluated at trial `index`.
pub fn trial_state(dim: usize, seed: u64, index: usize) -> Result<DensityMatrix> {
    if index == 0 {
        return DensityMatrix::basis_state(dim, 0);
    }
    let s = trial_seed(seed, index);
    let rank = 1 + (s % dim as u64) as usize;
    random_density(dim, rank, s)
}

pub fn run_search(
    target: SearchTarget,
    dim: usize,
    trials: usize,
    seed: u64,
    opts: &EntropyOptions,
) -> Result<SearchRun> {
    if dim != 10 {
        return Err(Error::Dimension(format!("{target} is defined for dim 10, got {dim}")));
    }
    if trials == 0 {
        return Err(Error::OutOfRange("search needs at least one trial".into()));
    }
    let slacks: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|k| target.slack(&trial_state(dim, seed, k)?, opts))
        .collect::<Result<_>>()?;

    let (argmin, min_slack) = slacks
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (k, s)| if s < best.1 { (k, s) } else { best });
    let tol = opts.verdict_tol;
    let violations = slacks.iter().filter(|&&s| s < -tol).count();
    Ok(SearchRun {
        summary: SearchSummary {
            target,
            dim,
            trials,
            seed,
            min_slack,
            argmin_seed_index: argmin,
            violations,
            tol,
        },
        slacks,
    })
}
