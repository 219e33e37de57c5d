//! Dense square matrices and a Hermitian eigensolver.
//!
//! [`Matrix`] is generic over its entry type so the partition maps can run on
//! exact rational or symbolic entries as well as on `Complex64`. Arithmetic
//! and the eigensolver are only provided for [`ComplexMatrix`].

use std::fmt;
use std::ops::Add;

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;
pub type ComplexMatrix = Matrix<Complex64>;

/// Default absolute tolerance for the Hermiticity precondition.
pub const HERMITIAN_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// An entry type the matrix container can hold.
pub trait Entry: Copy + Zero + Add<Output = Self> + PartialEq + fmt::Debug {
    fn is_finite(&self) -> bool {
        true
    }
}

impl Entry for f64 {
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Entry for Complex64 {
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Entry for Ratio<i64> {}
impl Entry for Complex<Ratio<i64>> {}

/// Dense square matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Entry> Matrix<T> {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn from_vec(dim: usize, data: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("matrix dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { row: k / dim, col: k % dim });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::Dimension(format!(
                "row of length {} in a {dim}-row matrix",
                bad.len()
            )));
        }
        Self::from_vec(dim, rows.concat())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self { dim, data: vec![T::zero(); dim * dim] }
    }

    /// Builds a matrix by evaluating `f(row, col)`.
    ///
    /// Panics if `f` produces a non-finite value.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let data = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self::from_vec(dim, data).expect("from_fn produced an invalid matrix")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.dim + col]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.dim)
    }

    pub fn map<U: Entry>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix::from_vec(self.dim, self.data.iter().map(f).collect())
            .expect("map produced an invalid matrix")
    }

    pub fn trace(&self) -> T {
        (0..self.dim).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "cannot add {0}x{0} and {1}x{1}",
                self.dim, other.dim
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        Self::from_vec(self.dim, data)
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for row in self.data.chunks(self.dim) {
            list.entry(&row);
        }
        list.finish()
    }
}

impl ComplexMatrix {
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::zero() })
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::zero()
            }
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map(|&x| x * factor)
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.dim, other.dim
            )));
        }
        let n = self.dim;
        Ok(Self::from_fn(n, |i, j| (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum()))
    }

    /// Kronecker product; block `(i, j)` of the result is `self[i, j] * other`.
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.dim;
        Self::from_fn(self.dim * m, |r, c| self.get(r / m, c / m) * other.get(r % m, c % m))
    }

    pub fn mat_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `max |a(i,j) - conj(a(j,i))|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `(a + a†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self.get(i, j) + self.get(j, i).conj()) * 0.5)
    }
}

/// Eigenvalues and orthonormal eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Fails with [`Error::NotHermitian`] when `max |a(i,j) - conj(a(j,i))| > tol`.
/// The matrix is symmetrized before diagonalization.
pub fn eigvals_hermitian(a: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    Ok(jacobi(a, tol, false)?.values)
}

/// Like [`eigvals_hermitian`] but also returns the eigenvectors.
pub fn eigh_hermitian(a: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    jacobi(a, tol, true)
}

/// Cyclic complex Jacobi. Each rotation first rotates the phase of column
/// `q` so that `a[p][q]` becomes real, then applies the real symmetric
/// rotation that annihilates it.
fn jacobi(a: &ComplexMatrix, tol: f64, want_vectors: bool) -> Result<HermitianEigen> {
    let deviation = a.hermitian_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation, tol });
    }
    let n = a.dim();
    let sym = a.hermitian_part();
    let mut m: Vec<Vec<Complex64>> = sym.rows().map(<[_]>::to_vec).collect();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(row[i].re, 0.0);
    }
    let mut v: Vec<Vec<Complex64>> = if want_vectors {
        ComplexMatrix::identity(n).rows().map(<[_]>::to_vec).collect()
    } else {
        Vec::new()
    };

    let scale = sym.frobenius_norm_sqr().sqrt();
    let target = f64::EPSILON * scale;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= target || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = m[p][q].norm();
                if g == 0.0 || g <= f64::EPSILON * 1e-3 * (m[p][p].re.abs() + m[q][q].re.abs()) {
                    m[p][q] = Complex64::zero();
                    m[q][p] = Complex64::zero();
                    continue;
                }
                let phase = m[p][q] / g;
                let theta = (m[q][q].re - m[p][p].re) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let phase_conj = phase.conj();

                // columns: A <- A U
                for row in m.iter_mut() {
                    let (xp, xq) = (row[p], row[q]);
                    row[p] = xp * c - xq * phase_conj * s;
                    row[q] = xp * s + xq * phase_conj * c;
                }
                // rows: A <- U† A
                #[allow(clippy::needless_range_loop)]
                for k in 0..n {
                    let (xp, xq) = (m[p][k], m[q][k]);
                    m[p][k] = xp * c - xq * phase * s;
                    m[q][k] = xp * s + xq * phase * c;
                }
                m[p][q] = Complex64::zero();
                m[q][p] = Complex64::zero();
                m[p][p].im = 0.0;
                m[q][q].im = 0.0;

                for row in v.iter_mut() {
                    let (xp, xq) = (row[p], row[q]);
                    row[p] = xp * c - xq * phase_conj * s;
                    row[q] = xp * s + xq * phase_conj * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i][i].re.total_cmp(&m[j][j].re));
    let values = order.iter().map(|&i| m[i][i].re).collect();
    let vectors = if want_vectors {
        order.iter().map(|&k| v.iter().map(|row| row[k]).collect()).collect()
    } else {
        Vec::new()
    };
    Ok(HermitianEigen { values, vectors })
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &ComplexMatrix, tol: f64) -> Result<f64> {
    Ok(eigvals_hermitian(a, tol)?[0])
}
