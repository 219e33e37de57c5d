//! Virtual subsystems from block partitions.
//!
//! A matrix of dimension `N = n * m` is read as an `n x n` grid of `m x m`
//! boxes `R_ij`. The left marginal has entries `tr R_ij`; the right marginal
//! is `sum_i R_ii`. Under the big-endian labeling `k = m * i + a` these are
//! ordinary partial traces over the second and first factor.
//!
//! Tripartite splits use `k = d2 * d3 * i1 + d3 * i2 + i3`.
//!
//! [`paper_map`] implements the fixed spin-9/2 reductions. Note that
//! [`PaperMap::Rho12`] is the `{1,2}` marginal of a `(2,2,3)` split of the
//! padded matrix, while [`PaperMap::Rho23`] and [`PaperMap::Rho2`] come from a
//! `(3,2,2)` split. They are not marginals of one common tripartition.
//!
//! All maps are generic over [`Entry`] so they run unchanged on exact
//! rational or symbolic matrices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Entry, Matrix};

/// Padded dimension used by the spin-9/2 tripartite maps.
pub const SPIN_NINE_HALVES_PADDED: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteSplit {
    pub n_left: usize,
    pub m_right: usize,
}

impl BipartiteSplit {
    pub fn new(n_left: usize, m_right: usize) -> Result<Self> {
        if n_left == 0 || m_right == 0 {
            return Err(Error::Dimension(format!("split ({n_left},{m_right}) has an empty factor")));
        }
        Ok(Self { n_left, m_right })
    }

    pub fn dim(&self) -> usize {
        self.n_left * self.m_right
    }

    fn check(&self, dim: usize) -> Result<()> {
        if self.n_left == 0 || self.m_right == 0 || self.dim() != dim {
            return Err(Error::Dimension(format!(
                "split ({},{}) does not factor dimension {dim}",
                self.n_left, self.m_right
            )));
        }
        Ok(())
    }

    /// Every `(n, m)` with `n * m = dim`, including the trivial ones.
    pub fn divisors_of(dim: usize) -> Vec<Self> {
        (1..=dim)
            .filter(|&n| dim.is_multiple_of(n))
            .map(|n| Self { n_left: n, m_right: dim / n })
            .collect()
    }
}

impl fmt::Display for BipartiteSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n_left, self.m_right)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripartiteSplit {
    pub d1: usize,
    pub d2: usize,
    pub d3: usize,
}

impl TripartiteSplit {
    pub fn new(d1: usize, d2: usize, d3: usize) -> Result<Self> {
        if d1 == 0 || d2 == 0 || d3 == 0 {
            return Err(Error::Dimension(format!("split ({d1},{d2},{d3}) has an empty factor")));
        }
        Ok(Self { d1, d2, d3 })
    }

    pub fn dim(&self) -> usize {
        self.d1 * self.d2 * self.d3
    }

    fn dims(&self) -> [usize; 3] {
        [self.d1, self.d2, self.d3]
    }

    fn check(&self, dim: usize) -> Result<()> {
        if self.dims().contains(&0) || self.dim() != dim {
            return Err(Error::Dimension(format!(
                "split ({},{},{}) does not factor dimension {dim}",
                self.d1, self.d2, self.d3
            )));
        }
        Ok(())
    }
}

impl fmt::Display for TripartiteSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.d1, self.d2, self.d3)
    }
}

/// A non-empty subset of the factors `{1, 2, 3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FactorSet(u8);

impl FactorSet {
    pub const ONE: Self = Self(0b001);
    pub const TWO: Self = Self(0b010);
    pub const THREE: Self = Self(0b100);
    pub const ONE_TWO: Self = Self(0b011);
    pub const TWO_THREE: Self = Self(0b110);
    pub const ONE_THREE: Self = Self(0b101);
    pub const ALL: Self = Self(0b111);

    /// Builds the set from 1-based factor numbers.
    pub fn from_factors(factors: &[usize]) -> Result<Self> {
        let mut bits = 0u8;
        for &f in factors {
            if !(1..=3).contains(&f) {
                return Err(Error::OutOfRange(format!("factor {f} is not one of 1, 2, 3")));
            }
            bits |= 1 << (f - 1);
        }
        if bits == 0 {
            return Err(Error::OutOfRange("keep set must be non-empty".into()));
        }
        Ok(Self(bits))
    }

    pub fn contains(&self, factor: usize) -> bool {
        (1..=3).contains(&factor) && self.0 & (1 << (factor - 1)) != 0
    }
}

impl FromStr for FactorSet {
    type Err = Error;

    /// Accepts `"2"`, `"1,2"`, `"12"` or `"{2,3}"`.
    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .chars()
            .filter(|c| !matches!(c, ',' | ' ' | '{' | '}'))
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::OutOfRange(format!("bad keep set {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_factors(&factors)
    }
}

impl fmt::Display for FactorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = (1..=3).filter(|&k| self.contains(k)).map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// `n x n` matrix of box traces: `(i, j) = sum_k rho(m i + k, m j + k)`.
pub fn left_marginal<T: Entry>(rho: &Matrix<T>, split: BipartiteSplit) -> Result<Matrix<T>> {
    split.check(rho.dim())?;
    let m = split.m_right;
    Ok(Matrix::from_fn(split.n_left, |i, j| {
        (0..m).fold(T::zero(), |acc, k| acc + rho.get(m * i + k, m * j + k))
    }))
}

/// `m x m` sum of diagonal boxes: `(a, b) = sum_i rho(m i + a, m i + b)`.
pub fn right_marginal<T: Entry>(rho: &Matrix<T>, split: BipartiteSplit) -> Result<Matrix<T>> {
    split.check(rho.dim())?;
    let m = split.m_right;
    Ok(Matrix::from_fn(m, |a, b| {
        (0..split.n_left).fold(T::zero(), |acc, i| acc + rho.get(m * i + a, m * i + b))
    }))
}

/// Embeds `rho` in the top-left corner of a zero `new_dim x new_dim` matrix.
pub fn pad<T: Entry>(rho: &Matrix<T>, new_dim: usize) -> Result<Matrix<T>> {
    let dim = rho.dim();
    if new_dim < dim {
        return Err(Error::Dimension(format!("cannot pad a {dim}x{dim} matrix down to {new_dim}")));
    }
    Ok(Matrix::from_fn(new_dim, |i, j| if i < dim && j < dim { rho.get(i, j) } else { T::zero() }))
}

/// Partial trace over the factors not in `keep`.
pub fn tri_marginal<T: Entry>(rho: &Matrix<T>, split: TripartiteSplit, keep: FactorSet) -> Result<Matrix<T>> {
    split.check(rho.dim())?;
    let dims = split.dims();
    let kept: Vec<usize> = (0..3).filter(|&f| keep.contains(f + 1)).collect();
    let traced: Vec<usize> = (0..3).filter(|&f| !keep.contains(f + 1)).collect();
    let out_dim: usize = kept.iter().map(|&f| dims[f]).product();
    let traced_count: usize = traced.iter().map(|&f| dims[f]).product();

    // scatter big-endian digits of `value` over the listed factors
    let scatter = |value: usize, factors: &[usize], digits: &mut [usize; 3]| {
        let mut rest = value;
        for &f in factors.iter().rev() {
            digits[f] = rest % dims[f];
            rest /= dims[f];
        }
    };
    let flat = |digits: &[usize; 3]| (digits[0] * dims[1] + digits[1]) * dims[2] + digits[2];

    Ok(Matrix::from_fn(out_dim, |u, v| {
        let mut row = [0usize; 3];
        let mut col = [0usize; 3];
        scatter(u, &kept, &mut row);
        scatter(v, &kept, &mut col);
        (0..traced_count).fold(T::zero(), |acc, t| {
            scatter(t, &traced, &mut row);
            scatter(t, &traced, &mut col);
            acc + rho.get(flat(&row), flat(&col))
        })
    }))
}

/// The fixed spin-9/2 reductions of a 10x10 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PaperMap {
    /// 5x5 box traces of the `(5,2)` split.
    R1,
    /// 2x2 diagonal-box sum of the `(5,2)` split.
    R2,
    /// 4x4 box traces of the padded matrix with 3x3 boxes.
    Rho12,
    /// 4x4 diagonal-box sum of the padded matrix with 4x4 boxes.
    Rho23,
    /// 2x2 box traces of [`PaperMap::Rho23`].
    Rho2,
    /// 3x3 box traces of the padded matrix with 4x4 boxes.
    Rho1T,
    /// 2x2 diagonal-box sum of the padded matrix with 2x2 boxes.
    Rho3T,
}

impl PaperMap {
    pub const ALL: [PaperMap; 7] = [
        PaperMap::R1,
        PaperMap::R2,
        PaperMap::Rho12,
        PaperMap::Rho23,
        PaperMap::Rho2,
        PaperMap::Rho1T,
        PaperMap::Rho3T,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PaperMap::R1 => "R1",
            PaperMap::R2 => "R2",
            PaperMap::Rho12 => "RHO12",
            PaperMap::Rho23 => "RHO23",
            PaperMap::Rho2 => "RHO2",
            PaperMap::Rho1T => "RHO1T",
            PaperMap::Rho3T => "RHO3T",
        }
    }
}

impl fmt::Display for PaperMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PaperMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PaperMap::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::OutOfRange(format!("unknown map {s:?}")))
    }
}

fn split2(n: usize, m: usize) -> BipartiteSplit {
    BipartiteSplit { n_left: n, m_right: m }
}

/// Applies one of the fixed spin-9/2 reductions to a 10x10 matrix, padding to
/// 12x12 where the map needs it.
pub fn paper_map<T: Entry>(rho10: &Matrix<T>, which: PaperMap) -> Result<Matrix<T>> {
    if rho10.dim() != 10 {
        return Err(Error::Dimension(format!(
            "{which} is defined on 10x10 matrices, got {0}x{0}",
            rho10.dim()
        )));
    }
    let padded = || pad(rho10, SPIN_NINE_HALVES_PADDED);
    match which {
        PaperMap::R1 => left_marginal(rho10, split2(5, 2)),
        PaperMap::R2 => right_marginal(rho10, split2(5, 2)),
        PaperMap::Rho12 => left_marginal(&padded()?, split2(4, 3)),
        PaperMap::Rho23 => right_marginal(&padded()?, split2(3, 4)),
        PaperMap::Rho2 => left_marginal(&right_marginal(&padded()?, split2(3, 4))?, split2(2, 2)),
        PaperMap::Rho1T => left_marginal(&padded()?, split2(3, 4)),
        PaperMap::Rho3T => right_marginal(&padded()?, split2(6, 2)),
    }
}
