//! Dense complex linear algebra over `C1`.
//!
//! Everything the bicomplex layer needs reduces to computations on the two
//! component matrices: determinants, ranks, nullspaces, column spaces and
//! eigen-decompositions.

mod eigen;
mod factor;

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::is_finite;
use crate::Complex;

pub use eigen::{cluster_eigenvalues, eigen_decompose, eigenvalues, EigenDecomposition, EigenSet};
pub use factor::{column_space, determinant, is_singular_matrix, nullspace, nullspace_min_dim, rank};

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if !data.iter().all(|&z| is_finite(z)) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::from_row_major(rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Complex>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, &z) in col.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        Ok(m)
    }

    /// Convenience constructor from real entries.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn matmul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &CMatrix, f: impl Fn(Complex, Complex) -> Complex) -> Result<CMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, a: Complex) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| a * z).collect(),
        }
    }

    /// `self - lambda * I`.
    pub fn shifted(&self, lambda: Complex) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] -= lambda;
        }
        Ok(out)
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.cols + j]
    }
}

pub fn vec_norm(v: &[Complex]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian inner product `<u, v> = sum conj(u_i) v_i`.
pub fn dot(u: &[Complex], v: &[Complex]) -> Complex {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// A subspace of `C1^n` held by an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CSubspace {
    ambient_dim: usize,
    basis: Vec<Vec<Complex>>,
}

impl CSubspace {
    pub fn zero(ambient_dim: usize) -> Self {
        CSubspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut e = vec![ZERO; ambient_dim];
                e[i] = ONE;
                e
            })
            .collect();
        CSubspace { ambient_dim, basis }
    }

    /// Caller guarantees the vectors are orthonormal.
    pub(crate) fn from_orthonormal(ambient_dim: usize, basis: Vec<Vec<Complex>>) -> Self {
        debug_assert!(basis.iter().all(|v| v.len() == ambient_dim));
        CSubspace { ambient_dim, basis }
    }

    /// Orthonormalizes an arbitrary spanning set (rank decided at `tol`).
    pub fn span(ambient_dim: usize, vectors: &[Vec<Complex>], tol: f64) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let m = CMatrix::from_columns(ambient_dim, vectors)?;
        Ok(column_space(&m, tol))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Complex>] {
        &self.basis
    }

    /// Distance from `v` to its orthogonal projection onto the subspace.
    pub fn distance(&self, v: &[Complex]) -> f64 {
        let mut r = v.to_vec();
        for b in &self.basis {
            let c = dot(b, &r);
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= c * bi;
            }
        }
        vec_norm(&r)
    }

    /// `dim(self + other)` from the rank of the stacked bases.
    pub fn sum_dim(&self, other: &CSubspace, tol: f64) -> Result<usize> {
        self.check_ambient(other)?;
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().cloned());
        if cols.is_empty() {
            return Ok(0);
        }
        Ok(rank(&CMatrix::from_columns(self.ambient_dim, &cols)?, tol))
    }

    /// Intersection from the nullspace of `[U | -W]`: every null vector
    /// `(x, y)` gives the common element `U x = W y`.
    pub fn intersection(&self, other: &CSubspace, tol: f64) -> Result<CSubspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|z| -z).collect::<Vec<_>>()));
        let stacked = CMatrix::from_columns(self.ambient_dim, &cols)?;
        let null = nullspace(&stacked, tol);
        let k = self.dim();
        let common: Vec<Vec<Complex>> = null
            .basis()
            .iter()
            .map(|x| {
                let mut v = vec![ZERO; self.ambient_dim];
                for (coef, u) in x[..k].iter().zip(&self.basis) {
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi += coef * ui;
                    }
                }
                v
            })
            .collect();
        CSubspace::span(self.ambient_dim, &common, tol)
    }

    fn check_ambient(&self, other: &CSubspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }
}
