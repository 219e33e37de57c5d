//! Von Neumann entropy, mutual information and inequality checks.
//!
//! Every check returns an [`InequalityReport`] carrying the component
//! entropies, both sides of the inequality and the signed slack
//! `rhs - lhs`. A check is satisfied when `slack >= -tol`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{eigvals_hermitian, ComplexMatrix, HERMITIAN_TOL};
use crate::partition::{
    left_marginal, pad, paper_map, right_marginal, tri_marginal, BipartiteSplit, FactorSet, PaperMap,
    TripartiteSplit, SPIN_NINE_HALVES_PADDED,
};

/// Eigenvalues within `[-CLIP_TOL, CLIP_TOL]` count as exact zeros.
pub const CLIP_TOL: f64 = 1e-10;
/// Slack tolerance for inequality verdicts.
pub const VERDICT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyOptions {
    pub log_base: LogBase,
    pub clip_tol: f64,
    pub verdict_tol: f64,
}

impl Default for EntropyOptions {
    fn default() -> Self {
        Self { log_base: LogBase::Natural, clip_tol: CLIP_TOL, verdict_tol: VERDICT_TOL }
    }
}

impl EntropyOptions {
    pub fn with_base(log_base: LogBase) -> Self {
        Self { log_base, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InequalityKind {
    /// `S(12) <= S(1) + S(2)`
    Subadd,
    /// `|S(1) - S(2)| <= S(12)`
    ArakiLieb,
    /// `S(123) + S(2) <= S(12) + S(23)`
    Ssa,
    #[serde(rename = "SUBADD_1_23")]
    Subadd1_23,
    #[serde(rename = "SUBADD_12_3")]
    Subadd12_3,
    #[serde(rename = "AL_1_23")]
    Al1_23,
    #[serde(rename = "AL_12_3")]
    Al12_3,
}

impl fmt::Display for InequalityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InequalityKind::Subadd => "SUBADD",
            InequalityKind::ArakiLieb => "ARAKI_LIEB",
            InequalityKind::Ssa => "SSA",
            InequalityKind::Subadd1_23 => "SUBADD_1_23",
            InequalityKind::Subadd12_3 => "SUBADD_12_3",
            InequalityKind::Al1_23 => "AL_1_23",
            InequalityKind::Al12_3 => "AL_12_3",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub entropies: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    pub satisfied: bool,
    pub tol: f64,
}

impl InequalityReport {
    fn new(kind: InequalityKind, entropies: &[(&str, f64)], lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            kind,
            entropies: entropies.iter().map(|&(k, v)| (k.to_owned(), v)).collect(),
            lhs,
            rhs,
            slack,
            satisfied: slack >= -tol,
            tol,
        }
    }
}

/// `-sum_k lambda_k log(lambda_k)` over the spectrum of a Hermitian matrix.
///
/// Eigenvalues with `|lambda| <= clip_tol` contribute nothing; any eigenvalue
/// below `-clip_tol` is an error.
pub fn matrix_entropy(m: &ComplexMatrix, opts: &EntropyOptions) -> Result<f64> {
    let spectrum = eigvals_hermitian(m, HERMITIAN_TOL)?;
    spectrum_entropy(&spectrum, opts)
}

fn spectrum_entropy(spectrum: &[f64], opts: &EntropyOptions) -> Result<f64> {
    if let Some(&min_eig) = spectrum.iter().find(|&&x| x < -opts.clip_tol) {
        return Err(Error::NegativeSpectrum { min_eig, tol: opts.clip_tol });
    }
    let nats: f64 = spectrum
        .iter()
        .filter(|&&x| x > opts.clip_tol)
        .fold(0.0, |acc, &x| acc - x * x.ln());
    Ok(match opts.log_base {
        LogBase::Natural => nats,
        LogBase::Two => nats / std::f64::consts::LN_2,
    })
}

pub fn von_neumann_entropy(rho: &DensityMatrix, opts: &EntropyOptions) -> Result<f64> {
    matrix_entropy(rho.matrix(), opts)
}

/// `S(left) + S(right) - S(rho)` for the box partition `split`.
pub fn mutual_information(rho: &DensityMatrix, split: BipartiteSplit, opts: &EntropyOptions) -> Result<f64> {
    let s1 = matrix_entropy(&left_marginal(rho.matrix(), split)?, opts)?;
    let s2 = matrix_entropy(&right_marginal(rho.matrix(), split)?, opts)?;
    Ok(s1 + s2 - von_neumann_entropy(rho, opts)?)
}

/// Subadditivity and Araki-Lieb for the box partition `split`.
pub fn check_bipartite(
    rho: &DensityMatrix,
    split: BipartiteSplit,
    opts: &EntropyOptions,
) -> Result<[InequalityReport; 2]> {
    let s12 = von_neumann_entropy(rho, opts)?;
    let s1 = matrix_entropy(&left_marginal(rho.matrix(), split)?, opts)?;
    let s2 = matrix_entropy(&right_marginal(rho.matrix(), split)?, opts)?;
    let named = [("S_12", s12), ("S_1", s1), ("S_2", s2)];
    let tol = opts.verdict_tol;
    Ok([
        InequalityReport::new(InequalityKind::Subadd, &named, s12, s1 + s2, tol),
        InequalityReport::new(InequalityKind::ArakiLieb, &named, (s1 - s2).abs(), s12, tol),
    ])
}

fn ssa_report(s123: f64, s12: f64, s23: f64, s2: f64, tol: f64) -> InequalityReport {
    InequalityReport::new(
        InequalityKind::Ssa,
        &[("S_123", s123), ("S_12", s12), ("S_23", s23), ("S_2", s2)],
        s123 + s2,
        s12 + s23,
        tol,
    )
}

/// Strong subadditivity with all marginals taken under one tripartition.
pub fn check_ssa_consistent(
    rho: &DensityMatrix,
    split: TripartiteSplit,
    opts: &EntropyOptions,
) -> Result<InequalityReport> {
    let m = rho.matrix();
    let s123 = von_neumann_entropy(rho, opts)?;
    let s12 = matrix_entropy(&tri_marginal(m, split, FactorSet::ONE_TWO)?, opts)?;
    let s23 = matrix_entropy(&tri_marginal(m, split, FactorSet::TWO_THREE)?, opts)?;
    let s2 = matrix_entropy(&tri_marginal(m, split, FactorSet::TWO)?, opts)?;
    Ok(ssa_report(s123, s12, s23, s2, opts.verdict_tol))
}

/// Strong subadditivity built from the fixed spin-9/2 maps
/// [`PaperMap::Rho12`], [`PaperMap::Rho23`] and [`PaperMap::Rho2`].
///
/// These marginals mix two labelings of the padded matrix, so no theorem
/// guarantees a nonnegative slack here.
pub fn check_paper_ssa(rho10: &DensityMatrix, opts: &EntropyOptions) -> Result<InequalityReport> {
    let m = rho10.matrix();
    let s123 = matrix_entropy(&pad(m, SPIN_NINE_HALVES_PADDED)?, opts)?;
    let s12 = matrix_entropy(&paper_map(m, PaperMap::Rho12)?, opts)?;
    let s23 = matrix_entropy(&paper_map(m, PaperMap::Rho23)?, opts)?;
    let s2 = matrix_entropy(&paper_map(m, PaperMap::Rho2)?, opts)?;
    Ok(ssa_report(s123, s12, s23, s2, opts.verdict_tol))
}

/// The two extra bipartite pairs on the padded spin-9/2 matrix, in the order
/// `SUBADD_1_23, AL_1_23, SUBADD_12_3, AL_12_3`.
///
/// `(RHO1T, RHO23)` is a genuine `(3,4)` bipartition. `(RHO12, RHO3T)` is not
/// complementary under any single labeling and is reported only.
pub fn check_extra(rho10: &DensityMatrix, opts: &EntropyOptions) -> Result<[InequalityReport; 4]> {
    let m = rho10.matrix();
    let s123 = matrix_entropy(&pad(m, SPIN_NINE_HALVES_PADDED)?, opts)?;
    let s1 = matrix_entropy(&paper_map(m, PaperMap::Rho1T)?, opts)?;
    let s23 = matrix_entropy(&paper_map(m, PaperMap::Rho23)?, opts)?;
    let s12 = matrix_entropy(&paper_map(m, PaperMap::Rho12)?, opts)?;
    let s3 = matrix_entropy(&paper_map(m, PaperMap::Rho3T)?, opts)?;
    let first = [("S_123", s123), ("S_1", s1), ("S_23", s23)];
    let second = [("S_123", s123), ("S_12", s12), ("S_3", s3)];
    let tol = opts.verdict_tol;
    Ok([
        InequalityReport::new(InequalityKind::Subadd1_23, &first, s123, s1 + s23, tol),
        InequalityReport::new(InequalityKind::Al1_23, &first, (s1 - s23).abs(), s123, tol),
        InequalityReport::new(InequalityKind::Subadd12_3, &second, s123, s12 + s3, tol),
        InequalityReport::new(InequalityKind::Al12_3, &second, (s12 - s3).abs(), s123, tol),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_serializes_as_display_name() {
        for kind in [
            InequalityKind::Subadd,
            InequalityKind::ArakiLieb,
            InequalityKind::Ssa,
            InequalityKind::Subadd1_23,
            InequalityKind::Subadd12_3,
            InequalityKind::Al1_23,
            InequalityKind::Al12_3,
        ] {
            assert_eq!(serde_json::to_value(kind).unwrap(), kind.to_string());
        }
    }
    use crate::density::random_density;
    use crate::linalg::Complex64;

    const LN2: f64 = std::f64::consts::LN_2;

    fn opts() -> EntropyOptions {
        EntropyOptions::default()
    }

    fn bell_state() -> DensityMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [h, 0.0, 0.0, h];
        DensityMatrix::new(ComplexMatrix::from_fn(4, |i, j| Complex64::new(psi[i] * psi[j], 0.0))).unwrap()
    }

    #[test]
    fn entropy_of_maximally_mixed() {
        let s = von_neumann_entropy(&DensityMatrix::maximally_mixed(10), &opts()).unwrap();
        assert!((s - 10f64.ln()).abs() < 1e-12);
        let bits = von_neumann_entropy(&DensityMatrix::maximally_mixed(8), &EntropyOptions::with_base(LogBase::Two))
            .unwrap();
        assert!((bits - 3.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_of_pure_states() {
        assert_eq!(von_neumann_entropy(&DensityMatrix::basis_state(10, 3).unwrap(), &opts()).unwrap(), 0.0);
        for seed in 0..10 {
            let s = von_neumann_entropy(&random_density(10, 1, seed).unwrap(), &opts()).unwrap();
            assert!(s.abs() < 1e-8, "{s}");
        }
    }

    #[test]
    fn entropy_of_toy_two_by_two() {
        let p = 1.0 / 90.0;
        let m = ComplexMatrix::from_rows(&[
            vec![Complex64::new(25.0 * p, 0.0), Complex64::new(-2.0 * p, 0.0)],
            vec![Complex64::new(-2.0 * p, 0.0), Complex64::new(1.0 - 25.0 * p, 0.0)],
        ])
        .unwrap();
        // oracle: closed-form 2x2 eigenvalues
        let (a, d, b) = (25.0 * p, 1.0 - 25.0 * p, 2.0 * p);
        let r = (((a - d) / 2.0).powi(2) + b * b).sqrt();
        let (l1, l2) = ((a + d) / 2.0 - r, (a + d) / 2.0 + r);
        let expected = -l1 * l1.ln() - l2 * l2.ln();
        let s = matrix_entropy(&m, &opts()).unwrap();
        assert!((s - expected).abs() < 1e-14);
        assert!((s - 0.58978).abs() < 1e-4, "{s}");
        assert!((s - 0.589_780_143_756_029).abs() < 1e-12);
    }

    #[test]
    fn negative_spectrum_is_an_error() {
        let m = ComplexMatrix::diag(&[1.001, -0.001]);
        assert!(matches!(matrix_entropy(&m, &opts()), Err(Error::NegativeSpectrum { .. })));
        // inside the clip window the eigenvalue is treated as zero
        let m = ComplexMatrix::diag(&[1.0 - 5e-11, 5e-11]);
        let m = m.add(&ComplexMatrix::diag(&[5e-11, -1e-10])).unwrap();
        let s = matrix_entropy(&m, &opts()).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn mutual_information_examples() {
        let split = BipartiteSplit::new(2, 2).unwrap();
        let i = mutual_information(&bell_state(), split, &opts()).unwrap();
        assert!((i - 2.0 * LN2).abs() < 1e-9);

        let a = random_density(3, 2, 1).unwrap();
        let b = random_density(4, 3, 2).unwrap();
        let product = DensityMatrix::new(a.matrix().kron(b.matrix())).unwrap();
        let i = mutual_information(&product, BipartiteSplit::new(3, 4).unwrap(), &opts()).unwrap();
        assert!(i.abs() < 1e-9, "{i}");
    }

    #[test]
    fn bipartite_equality_cases() {
        let [sub, _] =
            check_bipartite(&DensityMatrix::maximally_mixed(10), BipartiteSplit::new(5, 2).unwrap(), &opts())
                .unwrap();
        assert!(sub.slack.abs() < 1e-9 && sub.satisfied);
        for seed in 0..10 {
            let rho = random_density(10, 1, seed).unwrap();
            let [_, al] = check_bipartite(&rho, BipartiteSplit::new(5, 2).unwrap(), &opts()).unwrap();
            assert!(al.slack.abs() < 1e-8, "{}", al.slack);
            assert_eq!(al.entropies.len(), 3);
        }
    }

    #[test]
    fn ssa_consistent_equality_cases() {
        let split = TripartiteSplit::new(3, 2, 2).unwrap();
        let r = check_ssa_consistent(&DensityMatrix::maximally_mixed(12), split, &opts()).unwrap();
        assert!(r.slack.abs() < 1e-9);
        let r = check_ssa_consistent(&DensityMatrix::basis_state(12, 5).unwrap(), split, &opts()).unwrap();
        assert!(r.slack.abs() < 1e-8);
    }

    #[test]
    fn paper_ssa_on_basis_state() {
        let r = check_paper_ssa(&DensityMatrix::basis_state(10, 0).unwrap(), &opts()).unwrap();
        assert!(r.slack.abs() < 1e-8);
        assert_eq!(r.entropies.len(), 4);
        assert!(check_paper_ssa(&DensityMatrix::maximally_mixed(12), &opts()).is_err());
    }

    #[test]
    fn extra_checks() {
        let reports = check_extra(&DensityMatrix::basis_state(10, 0).unwrap(), &opts()).unwrap();
        assert!(reports.iter().all(|r| r.slack.abs() < 1e-8));

        let [sub, ..] = check_extra(&DensityMatrix::maximally_mixed(10), &opts()).unwrap();
        // zero padding leaves the marginals non-uniform:
        // RHO1T = diag(0.4, 0.4, 0.2), RHO23 = diag(0.3, 0.3, 0.2, 0.2)
        let s1 = -2.0 * 0.4 * 0.4f64.ln() - 0.2 * 0.2f64.ln();
        let s23 = -2.0 * 0.3 * 0.3f64.ln() - 2.0 * 0.2 * 0.2f64.ln();
        assert!((sub.slack - (s1 + s23 - 10f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn report_serializes_kind_names() {
        let [sub, al] =
            check_bipartite(&DensityMatrix::maximally_mixed(4), BipartiteSplit::new(2, 2).unwrap(), &opts())
                .unwrap();
        let text = serde_json::to_string(&[sub, al]).unwrap();
        assert!(text.contains("\"SUBADD\"") && text.contains("\"ARAKI_LIEB\""), "{text}");
    }
}
