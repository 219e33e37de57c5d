//! The one-parameter spin-9/2 family `rho(p)`, `0 <= p <= 1/45`.
//!
//! Every entry of `rho(p)` is affine in `p` with small rational
//! coefficients, so the matrix is built symbolically ([`toy_symbolic`]) and
//! the partition maps can be checked on it exactly. Numeric states come from
//! evaluating the symbolic matrix.
//!
//! Canonical form (upper triangle; the lower triangle is the conjugate):
//!
//! - diagonal `rho_ii = (i+1) p` for `i = 0..8`, `rho_99 = 1 - 45 p`
//! - `rho_01 = rho_67 = rho_78 = -p`
//! - `rho_13 = rho_14 = rho_17 = rho_47 = rho_56 = rho_79 = p`, `rho_35 = 2p`
//! - `rho_15 = 0.5 p`, `rho_28 = 0.1 p`, `rho_58 = 0.2 p`
//! - `rho_24 = i p`, `rho_26 = -1.5 i p`
//!
//! The family leaves the PSD cone slightly before `p = 1/45`; see
//! [`psd_boundary`].

use std::ops::Add;

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::{validate, DensityMatrix, PSD_TOL};
use crate::entropy::{matrix_entropy, EntropyOptions};
use crate::error::{Error, Result};
use crate::linalg::{min_eigenvalue, Complex64, ComplexMatrix, Entry, Matrix, HERMITIAN_TOL};
use crate::partition::{pad, paper_map, PaperMap, SPIN_NINE_HALVES_PADDED};

pub type Rational = Ratio<i64>;
pub type ComplexRational = Complex<Rational>;

/// Upper end of the nominal parameter range.
pub const P_MAX: f64 = 1.0 / 45.0;

/// Default number of sweep points.
pub const DEFAULT_STEPS: usize = 200;

/// A matrix entry `constant + slope * p` with exact complex-rational
/// coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub constant: ComplexRational,
    pub slope: ComplexRational,
}

impl Affine {
    /// `(re + i im) p`.
    pub fn linear(re: Rational, im: Rational) -> Self {
        Self { constant: ComplexRational::zero(), slope: Complex::new(re, im) }
    }

    /// `1 - k p`.
    pub fn one_minus(k: i64) -> Self {
        Self {
            constant: Complex::new(Rational::from_integer(1), Rational::zero()),
            slope: Complex::new(Rational::from_integer(-k), Rational::zero()),
        }
    }

    pub fn conj(&self) -> Self {
        Self { constant: self.constant.conj(), slope: self.slope.conj() }
    }

    pub fn at_rational(&self, p: Rational) -> ComplexRational {
        self.constant + self.slope * Complex::new(p, Rational::zero())
    }

    /// Evaluates at a floating-point `p`. Each rational coefficient is applied
    /// as `(numer * p) / denom`.
    pub fn at(&self, p: f64) -> Complex64 {
        let eval = |c: Rational, s: Rational| {
            let base = c.to_f64().expect("small rational");
            if s.is_zero() {
                base
            } else {
                base + (*s.numer() as f64 * p) / *s.denom() as f64
            }
        };
        Complex64::new(eval(self.constant.re, self.slope.re), eval(self.constant.im, self.slope.im))
    }
}

impl Add for Affine {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self { constant: self.constant + rhs.constant, slope: self.slope + rhs.slope }
    }
}

impl Zero for Affine {
    fn zero() -> Self {
        Self { constant: ComplexRational::zero(), slope: ComplexRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.is_zero()
    }
}

impl Entry for Affine {}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// `(row, col, re, im)` of the `p`-coefficients above the diagonal.
fn upper_entries() -> [(usize, usize, Rational, Rational); 15] {
    let zero = Rational::zero();
    [
        (0, 1, int(-1), zero),
        (1, 3, int(1), zero),
        (1, 4, int(1), zero),
        (1, 5, ratio(1, 2), zero),
        (1, 7, int(1), zero),
        (2, 4, zero, int(1)),
        (2, 6, zero, ratio(-3, 2)),
        (2, 8, ratio(1, 10), zero),
        (3, 5, int(2), zero),
        (4, 7, int(1), zero),
        (5, 6, int(1), zero),
        (5, 8, ratio(1, 5), zero),
        (6, 7, int(-1), zero),
        (7, 8, int(-1), zero),
        (7, 9, int(1), zero),
    ]
}

/// The canonical toy matrix with symbolic entries.
pub fn toy_symbolic() -> Matrix<Affine> {
    let mut entries = vec![Affine::zero(); 100];
    for i in 0..9 {
        entries[i * 10 + i] = Affine::linear(int(i as i64 + 1), Rational::zero());
    }
    entries[99] = Affine::one_minus(45);
    for (i, j, re, im) in upper_entries() {
        let a = Affine::linear(re, im);
        entries[i * 10 + j] = a;
        entries[j * 10 + i] = a.conj();
    }
    Matrix::from_vec(10, entries).expect("10x10")
}

/// `rho(p)` evaluated exactly at a rational `p`.
pub fn toy_rational(p: Rational) -> Matrix<ComplexRational> {
    toy_symbolic().map(|a| a.at_rational(p))
}

/// `rho(p)` evaluated in floating point. Does not check the range of `p`.
pub fn toy_matrix(p: f64) -> ComplexMatrix {
    toy_symbolic().map(|a| a.at(p))
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=P_MAX).contains(&p) {
        return Err(Error::OutOfRange(format!("toy parameter p = {p} outside [0, 1/45]")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ToyModelState {
    pub p: f64,
    pub matrix: ComplexMatrix,
    pub min_eig: f64,
    /// `min_eig >= -PSD_TOL`.
    pub valid: bool,
}

impl ToyModelState {
    /// The state as a [`DensityMatrix`], or [`Error::InvalidDensity`] outside
    /// the PSD range.
    pub fn density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.matrix.clone())
    }

    /// Admits the state even past the PSD boundary.
    pub fn density_forced(&self) -> Result<DensityMatrix> {
        DensityMatrix::forced(self.matrix.clone())
    }
}

pub fn toy_density(p: f64) -> Result<ToyModelState> {
    check_p(p)?;
    let matrix = toy_matrix(p);
    let report = validate(&matrix, PSD_TOL);
    Ok(ToyModelState { p, matrix, min_eig: report.min_eig, valid: report.psd })
}

/// A named reduced matrix of `rho(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToyView {
    Full,
    Padded,
    Map(PaperMap),
}

impl ToyView {
    pub fn of(&self, matrix: &ComplexMatrix) -> Result<ComplexMatrix> {
        match self {
            ToyView::Full => Ok(matrix.clone()),
            ToyView::Padded => pad(matrix, SPIN_NINE_HALVES_PADDED),
            ToyView::Map(which) => paper_map(matrix, *which),
        }
    }
}

/// One point of the information sweep. Entropies are `None` for states
/// outside the PSD cone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub p: f64,
    pub s_full: Option<f64>,
    pub s_r1: Option<f64>,
    pub s_r2: Option<f64>,
    pub s_t1: Option<f64>,
    pub s_t2: Option<f64>,
    /// `S(R1) + S(R2) - S(rho)`, the `(5,2)` split.
    pub i: Option<f64>,
    /// `S(RHO1T) + S(RHO23) - S(pad(rho))`, the `(3,4)` split of the padded
    /// matrix.
    pub i_tilde: Option<f64>,
    pub min_eig: f64,
    pub valid: bool,
}

/// Inclusive uniform grid on `[p_min, p_max]`.
pub fn sweep_grid(p_min: f64, p_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(0.0 <= p_min && p_min < p_max && p_max <= P_MAX) {
        return Err(Error::OutOfRange(format!(
            "sweep range [{p_min}, {p_max}] must satisfy 0 <= p_min < p_max <= 1/45"
        )));
    }
    if steps < 2 {
        return Err(Error::OutOfRange(format!("sweep needs at least 2 steps, got {steps}")));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| if k + 1 == steps { p_max } else { p_min + (p_max - p_min) * (k as f64 / last) })
        .collect())
}

pub fn sweep_point(p: f64, opts: &EntropyOptions, psd_tol: f64) -> Result<SweepRecord> {
    check_p(p)?;
    let full = toy_matrix(p);
    let min_eig = min_eigenvalue(&full, HERMITIAN_TOL)?;
    let valid = min_eig >= -psd_tol;
    if !valid {
        return Ok(SweepRecord {
            p,
            s_full: None,
            s_r1: None,
            s_r2: None,
            s_t1: None,
            s_t2: None,
            i: None,
            i_tilde: None,
            min_eig,
            valid,
        });
    }
    // a state admitted under psd_tol must not trip the entropy clip
    let opts = EntropyOptions { clip_tol: opts.clip_tol.max(psd_tol), ..*opts };
    let s = |m: &ComplexMatrix| matrix_entropy(m, &opts);
    let s_full = s(&full)?;
    let s_r1 = s(&paper_map(&full, PaperMap::R1)?)?;
    let s_r2 = s(&paper_map(&full, PaperMap::R2)?)?;
    let s_t1 = s(&paper_map(&full, PaperMap::Rho1T)?)?;
    let s_t2 = s(&paper_map(&full, PaperMap::Rho23)?)?;
    let s_padded = s(&pad(&full, SPIN_NINE_HALVES_PADDED)?)?;
    Ok(SweepRecord {
        p,
        s_full: Some(s_full),
        s_r1: Some(s_r1),
        s_r2: Some(s_r2),
        s_t1: Some(s_t1),
        s_t2: Some(s_t2),
        i: Some(s_r1 + s_r2 - s_full),
        i_tilde: Some(s_t1 + s_t2 - s_padded),
        min_eig,
        valid,
    })
}

/// Evaluates the sweep on the inclusive grid. Points are computed in
/// parallel and returned in grid order.
pub fn toy_sweep(p_min: f64, p_max: f64, steps: usize, opts: &EntropyOptions) -> Result<Vec<SweepRecord>> {
    let grid = sweep_grid(p_min, p_max, steps)?;
    grid.par_iter().map(|&p| sweep_point(p, opts, PSD_TOL)).collect()
}

pub const SWEEP_HEADER: &str = "p,S_full,S_r1,S_r2,S_t1,S_t2,I,I_tilde,min_eig,valid";

fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Delimited table with [`SWEEP_HEADER`], one row per record.
pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in records {
        let opt = |v: Option<f64>| v.map(sig12).unwrap_or_default();
        let fields = [
            sig12(r.p),
            opt(r.s_full),
            opt(r.s_r1),
            opt(r.s_r2),
            opt(r.s_t1),
            opt(r.s_t2),
            opt(r.i),
            opt(r.i_tilde),
            sig12(r.min_eig),
            r.valid.to_string(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Determinant of the `{7, 9}` principal minor, `8p(1 - 45p) - p^2`.
pub fn minor_determinant(p: f64) -> f64 {
    let m = toy_matrix(p);
    (m.get(7, 7) * m.get(9, 9) - m.get(7, 9) * m.get(9, 7)).re
}

/// Where the toy family stops being positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsdBoundary {
    /// Sign change of the `{7, 9}` minor determinant.
    pub minor: f64,
    /// Sign change of the smallest eigenvalue of the full matrix.
    pub spectral: f64,
    /// The smaller of the two; the family is PSD below it.
    pub governing: f64,
}

/// Bisects for the sign change of `f` on `[lo, hi]` with `f(lo) >= 0 > f(hi)`.
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// First sign change of `f` from a scan of `(0, P_MAX]`, refined by bisection.
fn first_crossing(f: impl Fn(f64) -> f64, scan: usize) -> Option<f64> {
    let grid: Vec<f64> = (1..=scan).map(|k| P_MAX * k as f64 / scan as f64).collect();
    let first_neg = grid.iter().position(|&p| f(p) < 0.0)?;
    let lo = if first_neg == 0 { 0.0 } else { grid[first_neg - 1] };
    Some(bisect(lo, grid[first_neg], f))
}

/// Locates the PSD boundary both from the `{7, 9}` minor and from the full
/// spectrum.
pub fn psd_boundary() -> Result<PsdBoundary> {
    let minor = first_crossing(minor_determinant, 1000)
        .ok_or_else(|| Error::OutOfRange("minor determinant never changes sign".into()))?;
    let min_eig = |p: f64| min_eigenvalue(&toy_matrix(p), HERMITIAN_TOL).expect("toy matrix is Hermitian");
    let spectral = first_crossing(min_eig, 1000).unwrap_or(P_MAX);
    Ok(PsdBoundary { minor, spectral, governing: spectral.min(minor) })
}

/// Marginals of `rho(p)` as printed for the published family, with symbolic
/// entries.
pub mod published {
    use super::*;

    fn row(entries: &[Affine]) -> Vec<Affine> {
        entries.to_vec()
    }

    fn lin(re: Rational, im: Rational) -> Affine {
        Affine::linear(re, im)
    }

    fn re(n: i64, d: i64) -> Affine {
        Affine::linear(ratio(n, d), Rational::zero())
    }

    fn zero() -> Affine {
        Affine::zero()
    }

    /// 5x5 left marginal of the `(5,2)` split.
    pub fn rho1() -> Matrix<Affine> {
        Matrix::from_rows(&[
            row(&[re(3, 1), re(1, 1), re(1, 2), re(1, 1), zero()]),
            row(&[re(1, 1), re(7, 1), lin(int(2), int(1)), lin(int(0), ratio(-3, 2)), re(1, 10)]),
            row(&[re(1, 2), lin(int(2), int(-1)), re(11, 1), zero(), zero()]),
            row(&[re(1, 1), lin(int(0), ratio(3, 2)), zero(), re(15, 1), re(1, 1)]),
            row(&[zero(), re(1, 10), zero(), re(1, 1), Affine::one_minus(36)]),
        ])
        .expect("5x5")
    }

    /// 2x2 right marginal of the `(5,2)` split.
    pub fn rho2() -> Matrix<Affine> {
        Matrix::from_rows(&[row(&[re(25, 1), re(-2, 1)]), row(&[re(-2, 1), Affine::one_minus(25)])])
            .expect("2x2")
    }

    /// 3x3 left marginal of the `(3,4)` split of the padded matrix.
    pub fn tilde_rho1() -> Matrix<Affine> {
        Matrix::from_rows(&[
            row(&[re(10, 1), lin(ratio(1, 2), ratio(-3, 2)), zero()]),
            row(&[lin(ratio(1, 2), ratio(3, 2)), re(26, 1), zero()]),
            row(&[zero(), zero(), Affine::one_minus(36)]),
        ])
        .expect("3x3")
    }

    /// 4x4 right marginal of the `(3,4)` split of the padded matrix.
    pub fn tilde_rho2() -> Matrix<Affine> {
        Matrix::from_rows(&[
            row(&[re(15, 1), re(-1, 1), zero(), re(1, 1)]),
            row(&[re(-1, 1), Affine::one_minus(37), re(1, 1), re(1, 1)]),
            row(&[zero(), re(1, 1), re(10, 1), re(-1, 1)]),
            row(&[re(1, 1), re(1, 1), re(-1, 1), re(12, 1)]),
        ])
        .expect("4x4")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::von_neumann_entropy;

    #[test]
    fn p_zero_is_pure_state_on_last_level() {
        let state = toy_density(0.0).unwrap();
        let mut diag = vec![0.0; 10];
        diag[9] = 1.0;
        assert_eq!(state.matrix, ComplexMatrix::diag(&diag));
        let s = von_neumann_entropy(&state.density().unwrap(), &EntropyOptions::default()).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn trace_is_exactly_one_symbolically() {
        let t = toy_symbolic().trace();
        assert_eq!(t, Affine::one_minus(0));
    }

    #[test]
    fn symbolic_matrix_is_hermitian_with_forty_nonzeros() {
        let m = toy_symbolic();
        for i in 0..10 {
            for j in 0..10 {
                assert_eq!(m.get(i, j), m.get(j, i).conj());
            }
        }
        assert_eq!(m.as_slice().iter().filter(|a| !a.is_zero()).count(), 40);
    }

    #[test]
    fn out_of_range_parameter() {
        assert!(toy_density(-1e-3).is_err());
        assert!(toy_density(0.03).is_err());
        assert!(toy_density(P_MAX).is_ok());
    }

    #[test]
    fn flagged_invalid_at_upper_end() {
        let state = toy_density(P_MAX).unwrap();
        assert!(!state.valid && state.min_eig < 0.0);
        assert!(state.density().is_err());
        assert!(state.density_forced().is_ok());
        assert!(toy_density(1.0 / 90.0).unwrap().valid);
    }

    #[test]
    fn minor_determinant_closed_form() {
        for p in [0.001, 0.01, 0.02, P_MAX] {
            let closed = 8.0 * p * (1.0 - 45.0 * p) - p * p;
            assert!((minor_determinant(p) - closed).abs() < 1e-15);
        }
    }

    #[test]
    fn views() {
        let m = toy_matrix(0.01);
        assert_eq!(ToyView::Full.of(&m).unwrap(), m);
        assert_eq!(ToyView::Padded.of(&m).unwrap().dim(), 12);
        assert_eq!(ToyView::Map(PaperMap::R2).of(&m).unwrap().dim(), 2);
    }

    #[test]
    fn grid_is_inclusive() {
        let g = sweep_grid(0.0, P_MAX, 200).unwrap();
        assert_eq!(g.len(), 200);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[199], P_MAX);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(sweep_grid(0.0, P_MAX, 1).is_err());
        assert!(sweep_grid(0.01, 0.005, 10).is_err());
        assert!(sweep_grid(0.0, 0.03, 10).is_err());
    }

    #[test]
    fn sweep_point_at_zero() {
        let r = sweep_point(0.0, &EntropyOptions::default(), PSD_TOL).unwrap();
        assert!(r.valid);
        assert!(r.i.unwrap().abs() < 1e-9 && r.i_tilde.unwrap().abs() < 1e-9);
    }

    #[test]
    fn invalid_sweep_point_has_no_entropies() {
        let r = sweep_point(P_MAX, &EntropyOptions::default(), PSD_TOL).unwrap();
        assert!(!r.valid && r.i.is_none() && r.s_full.is_none());
        let csv = sweep_csv(&[r]);
        let row = csv.lines().nth(1).unwrap();
        assert!(row.contains(",,,,,,,"), "{row}");
        assert!(row.ends_with(",false"));
    }

    #[test]
    fn csv_uses_twelve_significant_digits() {
        let r = sweep_point(0.01, &EntropyOptions::default(), PSD_TOL).unwrap();
        let csv = sweep_csv(&[r]);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_HEADER);
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields.len(), 10);
        assert_eq!(fields[0], "1.00000000000e-2");
    }

    #[test]
    fn sweep_point_rejects_bad_p() {
        assert!(sweep_point(0.5, &EntropyOptions::default(), PSD_TOL).is_err());
    }
}
