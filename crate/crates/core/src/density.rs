//! Density matrices, spin-projection labels, random states and the matrix
//! file format.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigvals_hermitian, Complex64, ComplexMatrix, HERMITIAN_TOL};

/// Default tolerance below zero admitted for the smallest eigenvalue.
pub const PSD_TOL: f64 = 1e-9;
/// Allowed deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-9;

/// Outcome of [`validate`]. Failures are carried here rather than returned
/// as errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub hermitian: bool,
    /// `|trace - 1|`.
    pub trace_dev: f64,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eig: f64,
    pub psd: bool,
    pub psd_tol: f64,
}

impl ValidationReport {
    /// Hermitian, unit trace and PSD within tolerance.
    pub fn is_valid(&self) -> bool {
        self.hermitian && self.trace_dev <= TRACE_TOL && self.psd
    }

    /// Hermitian and unit trace; the spectrum may dip below `-psd_tol`.
    pub fn is_admissible_forced(&self) -> bool {
        self.hermitian && self.trace_dev <= TRACE_TOL
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hermitian={} trace_dev={:e} min_eig={:e} psd={} (psd_tol={:e})",
            self.hermitian, self.trace_dev, self.min_eig, self.psd, self.psd_tol
        )
    }
}

/// Checks Hermiticity, unit trace and positive semidefiniteness.
pub fn validate(m: &ComplexMatrix, psd_tol: f64) -> ValidationReport {
    let hermitian = m.is_hermitian(HERMITIAN_TOL);
    let trace_dev = (m.trace() - Complex64::new(1.0, 0.0)).norm();
    // the Hermitian part always diagonalizes, so a spectrum is reported even
    // for matrices that fail the Hermiticity check
    let min_eig = eigvals_hermitian(&m.hermitian_part(), HERMITIAN_TOL)
        .expect("Hermitian part is Hermitian")[0];
    ValidationReport { hermitian, trace_dev, min_eig, psd: min_eig >= -psd_tol, psd_tol }
}

/// A validated density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    psd_tol: f64,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, PSD_TOL)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, psd_tol: f64) -> Result<Self> {
        let report = validate(&matrix, psd_tol);
        if !report.is_valid() {
            return Err(Error::InvalidDensity(report));
        }
        Ok(Self { matrix, psd_tol })
    }

    /// Admits a Hermitian unit-trace matrix whose spectrum may be negative.
    /// Entropy routines still refuse eigenvalues below their clip tolerance.
    pub fn forced(matrix: ComplexMatrix) -> Result<Self> {
        let report = validate(&matrix, PSD_TOL);
        if !report.is_admissible_forced() {
            return Err(Error::InvalidDensity(report));
        }
        Ok(Self { matrix, psd_tol: PSD_TOL })
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let matrix = ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        Self { matrix, psd_tol: PSD_TOL }
    }

    /// `|index><index|`.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::OutOfRange(format!("basis index {index} for dimension {dim}")));
        }
        let mut diag = vec![0.0; dim];
        diag[index] = 1.0;
        Ok(Self { matrix: ComplexMatrix::diag(&diag), psd_tol: PSD_TOL })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn psd_tol(&self) -> f64 {
        self.psd_tol
    }
}

/// A spin projection `m` of a spin `j`, both stored doubled so they stay
/// integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinLabel {
    pub two_j: u32,
    pub two_m: i32,
}

/// Spin-9/2 projections in index order: `-9/2, 9/2, -7/2, 7/2, ..., -1/2, 1/2`.
const SPIN_NINE_HALVES_ORDER: [i32; 10] = [-9, 9, -7, 7, -5, 5, -3, 3, -1, 1];

impl SpinLabel {
    pub fn new(two_j: u32, two_m: i32) -> Result<Self> {
        if two_j.is_multiple_of(2) || two_m % 2 == 0 || two_m.unsigned_abs() > two_j {
            return Err(Error::Projection { two_j, two_m });
        }
        Ok(Self { two_j, two_m })
    }

    pub fn nine_halves(two_m: i32) -> Result<Self> {
        Self::new(9, two_m)
    }
}

/// Basis index of a spin-9/2 projection in the interleaved ordering, where
/// each `-|m|` is followed by `+|m|` starting from `|m| = 9/2`.
pub fn index_of_projection(label: SpinLabel) -> Result<usize> {
    if label.two_j != 9 {
        return Err(Error::Projection { two_j: label.two_j, two_m: label.two_m });
    }
    SPIN_NINE_HALVES_ORDER
        .iter()
        .position(|&m| m == label.two_m)
        .ok_or(Error::Projection { two_j: label.two_j, two_m: label.two_m })
}

/// Inverse of [`index_of_projection`].
pub fn projection_of_index(index: usize) -> Result<SpinLabel> {
    SPIN_NINE_HALVES_ORDER
        .get(index)
        .map(|&two_m| SpinLabel { two_j: 9, two_m })
        .ok_or_else(|| Error::OutOfRange(format!("spin-9/2 index {index} outside 0..10")))
}

/// Random density matrix `G G† / tr(G G†)` with `G` a `dim x rank` matrix of
/// independent complex Gaussians. Deterministic in `seed`.
pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::InvalidRank { rank, dim });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g: Vec<Complex64> = (0..dim * rank)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect();

    let mut w = vec![Complex64::zero(); dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let z: Complex64 =
                (0..rank).map(|k| g[i * rank + k] * g[j * rank + k].conj()).sum();
            w[i * dim + j] = z;
            w[j * dim + i] = z.conj();
        }
        w[i * dim + i].im = 0.0;
    }
    let trace: f64 = (0..dim).map(|i| w[i * dim + i].re).sum();
    for z in &mut w {
        *z /= trace;
    }
    let matrix = ComplexMatrix::from_vec(dim, w)?;
    Ok(DensityMatrix { matrix, psd_tol: PSD_TOL })
}

#[derive(Serialize, Deserialize)]
struct MatrixDocument {
    dim: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

/// Serializes a matrix as `{"dim": N, "matrix": [[[re, im], ...], ...]}` with
/// 17 significant digits per component.
pub fn write_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    out.push_str(&format!("{{\n  \"dim\": {},\n  \"matrix\": [\n", m.dim()));
    for (r, row) in m.rows().enumerate() {
        out.push_str("    [");
        for (c, z) in row.iter().enumerate() {
            if c > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("[{:.16e}, {:.16e}]", z.re, z.im));
        }
        out.push(']');
        if r + 1 < m.dim() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ]\n}\n");
    out
}

/// Parses the format produced by [`write_matrix`].
pub fn read_matrix(text: &str) -> Result<ComplexMatrix> {
    let doc: MatrixDocument = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if doc.matrix.len() != doc.dim {
        return Err(Error::Dimension(format!(
            "dim is {} but matrix has {} rows",
            doc.dim,
            doc.matrix.len()
        )));
    }
    let mut entries = Vec::with_capacity(doc.dim * doc.dim);
    for (r, row) in doc.matrix.iter().enumerate() {
        if row.len() != doc.dim {
            return Err(Error::Dimension(format!(
                "row {r} has {} entries, expected {}",
                row.len(),
                doc.dim
            )));
        }
        entries.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
    }
    ComplexMatrix::from_vec(doc.dim, entries)
}
