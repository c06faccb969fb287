//! Householder QR with column pivoting, and partially pivoted LU.

use super::{vec_norm, CMatrix, CSubspace, ONE, ZERO};
use crate::error::Result;
use crate::Complex;

struct PivotedQr {
    rows: usize,
    /// Householder vectors, reflector `k` acts on rows `k..`.
    reflectors: Vec<Vec<Complex>>,
    /// `|R[k][k]|`, nonincreasing up to rounding.
    rdiag: Vec<f64>,
}

impl PivotedQr {
    fn new(a: &CMatrix) -> Self {
        let (m, n) = (a.rows(), a.cols());
        let mut cols: Vec<Vec<Complex>> = (0..n).map(|j| a.column(j)).collect();
        let steps = m.min(n);
        let mut reflectors = Vec::with_capacity(steps);
        let mut rdiag = Vec::with_capacity(steps);

        for k in 0..steps {
            let (pivot, _) = (k..n)
                .map(|j| (j, vec_norm(&cols[j][k..])))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            cols.swap(k, pivot);

            let x = &cols[k][k..];
            let norm = vec_norm(x);
            if norm == 0.0 {
                // remaining block is exactly zero
                rdiag.extend(std::iter::repeat_n(0.0, steps - k));
                break;
            }
            let phase = if x[0] == ZERO { ONE } else { x[0] / x[0].norm() };
            let alpha = -phase * norm;
            let mut v = x.to_vec();
            v[0] -= alpha;
            let vnorm = vec_norm(&v);
            for z in v.iter_mut() {
                *z /= vnorm;
            }
            for col in cols.iter_mut().skip(k) {
                reflect(&v, &mut col[k..]);
            }
            rdiag.push(alpha.norm());
            reflectors.push(v);
        }
        PivotedQr { rows: m, reflectors, rdiag }
    }

    fn rank(&self, threshold: f64) -> usize {
        self.rdiag.iter().take_while(|&&r| r > threshold).count()
    }

    /// Column `j` of the full unitary factor `Q = H_0 H_1 ... H_{k-1}`.
    fn q_column(&self, j: usize) -> Vec<Complex> {
        let mut e = vec![ZERO; self.rows];
        e[j] = ONE;
        for (k, v) in self.reflectors.iter().enumerate().rev() {
            reflect(v, &mut e[k..]);
        }
        e
    }
}

/// `y <- (I - 2 v v^H) y` for unit `v`.
fn reflect(v: &[Complex], y: &mut [Complex]) {
    let s: Complex = v.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum::<Complex>() * 2.0;
    for (yi, vi) in y.iter_mut().zip(v) {
        *yi -= s * vi;
    }
}

fn rank_threshold(a: &CMatrix, tol: f64) -> f64 {
    tol * a.frobenius_norm().max(1.0) * a.rows().max(a.cols()) as f64
}

/// Numerical rank: number of pivots above `tol * max(||A||_F, 1) * max(rows, cols)`.
pub fn rank(a: &CMatrix, tol: f64) -> usize {
    PivotedQr::new(a).rank(rank_threshold(a, tol))
}

/// Orthonormal basis of `{v : A v ~ 0}`.
pub fn nullspace(a: &CMatrix, tol: f64) -> CSubspace {
    nullspace_min_dim(a, tol, 0)
}

/// Like [`nullspace`], but always returns at least `min_dim` directions (the
/// ones with the smallest pivots). Used when the caller already knows the
/// matrix is singular, e.g. `A - lambda I` at a computed eigenvalue.
pub fn nullspace_min_dim(a: &CMatrix, tol: f64, min_dim: usize) -> CSubspace {
    nullspace_clamped(a, tol, min_dim, a.cols())
}

/// Nullspace whose dimension is clamped into `[min_dim, max_dim]`.
pub(crate) fn nullspace_clamped(a: &CMatrix, tol: f64, min_dim: usize, max_dim: usize) -> CSubspace {
    let n = a.cols();
    // null(A) is the orthogonal complement of range(A^H)
    let qr = PivotedQr::new(&a.adjoint());
    let r = qr
        .rank(rank_threshold(a, tol))
        .min(n.saturating_sub(min_dim))
        .max(n.saturating_sub(max_dim));
    let basis = (r..n).map(|j| qr.q_column(j)).collect();
    CSubspace::from_orthonormal(n, basis)
}

/// Orthonormal basis of the column space of `A`.
pub fn column_space(a: &CMatrix, tol: f64) -> CSubspace {
    let qr = PivotedQr::new(a);
    let r = qr.rank(rank_threshold(a, tol));
    let basis = (0..r).map(|j| qr.q_column(j)).collect();
    CSubspace::from_orthonormal(a.rows(), basis)
}

struct Lu {
    diag: Vec<Complex>,
    swaps: usize,
}

fn lu(a: &CMatrix) -> Result<Lu> {
    let n = a.require_square()?;
    let mut m = a.clone();
    let mut swaps = 0;
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[(i, k)].norm().total_cmp(&m[(j, k)].norm()))
            .unwrap_or(k);
        if p != k {
            for j in 0..n {
                let t = m[(k, j)];
                m[(k, j)] = m[(p, j)];
                m[(p, j)] = t;
            }
            swaps += 1;
        }
        let pivot = m[(k, k)];
        diag.push(pivot);
        if pivot == ZERO {
            continue;
        }
        for i in k + 1..n {
            let f = m[(i, k)] / pivot;
            if f == ZERO {
                continue;
            }
            for j in k..n {
                let t = m[(k, j)];
                m[(i, j)] -= f * t;
            }
        }
    }
    Ok(Lu { diag, swaps })
}

pub fn determinant(a: &CMatrix) -> Result<Complex> {
    let f = lu(a)?;
    let prod: Complex = f.diag.iter().product();
    Ok(if f.swaps % 2 == 1 { -prod } else { prod })
}

/// Singularity test on the determinant, relative to Hadamard's bound with the
/// largest column norm replaced by `max(||A||_F, 1)`:
/// `|det A| <= tol * max(||A||_F, 1) * prod_j ||a_j|| / max_j ||a_j||`.
/// The floor matches [`rank`], so roundoff-sized matrices count as singular.
/// Evaluated in log space so that large dimensions neither overflow nor
/// underflow.
pub fn is_singular_matrix(a: &CMatrix, tol: f64) -> Result<bool> {
    let n = a.require_square()?;
    let f = lu(a)?;
    if f.diag.contains(&ZERO) {
        return Ok(true);
    }
    let log_det: f64 = f.diag.iter().map(|d| d.norm().ln()).sum();
    let logs: Vec<f64> = (0..n).map(|j| vec_norm(&a.column(j)).ln()).collect();
    let largest = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let log_bound = logs.iter().sum::<f64>() - largest + a.frobenius_norm().max(1.0).ln() + tol.ln();
    Ok(log_det <= log_bound)
}
