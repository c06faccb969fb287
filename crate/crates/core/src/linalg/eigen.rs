//! Eigenvalues by Householder reduction to Hessenberg form followed by
//! single-shift complex QR iteration with deflation. Eigenvectors come from
//! the nullspace of `A - lambda I` at each clustered eigenvalue.

use serde::{Deserialize, Serialize};

use super::factor::nullspace_clamped;
use super::{dot, vec_norm, CMatrix, CSubspace, ONE, ZERO};
use crate::error::{Error, Result};
use crate::{Complex, Tolerances};

/// A finite spectrum with algebraic multiplicities.
///
/// `threshold` is the absolute clustering radius the set was built with;
/// membership tests use it inclusively.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSet {
    values: Vec<(Complex, usize)>,
    threshold: f64,
}

impl EigenSet {
    /// Clusters raw eigenvalues: any two entries within `threshold` merge
    /// into their multiplicity-weighted mean, repeated until the survivors
    /// are pairwise farther apart than `threshold`.
    pub fn from_raw(raw: &[Complex], threshold: f64) -> Self {
        let mut clusters: Vec<(Complex, usize)> = raw.iter().map(|&z| (z, 1)).collect();
        'merge: loop {
            for i in 0..clusters.len() {
                for j in i + 1..clusters.len() {
                    if (clusters[i].0 - clusters[j].0).norm() <= threshold {
                        let (zj, mj) = clusters.swap_remove(j);
                        let (zi, mi) = clusters[i];
                        let total = mi + mj;
                        clusters[i] = ((zi * mi as f64 + zj * mj as f64) / total as f64, total);
                        continue 'merge;
                    }
                }
            }
            break;
        }
        clusters.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
        EigenSet {
            values: clusters,
            threshold,
        }
    }

    pub fn values(&self) -> &[(Complex, usize)] {
        &self.values
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.values.iter().map(|&(_, m)| m).sum()
    }

    /// Index of the closest member within the threshold; ties at exactly the
    /// threshold count as members.
    pub fn position(&self, z: Complex) -> Option<usize> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &(v, _))| (i, (v - z).norm()))
            .filter(|&(_, d)| d <= self.threshold)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
    }

    pub fn contains(&self, z: Complex) -> bool {
        self.position(z).is_some()
    }

    /// Multiset union: values from both sets, merged at the larger of the
    /// two thresholds with multiplicities added.
    pub fn union(&self, other: &EigenSet) -> EigenSet {
        let threshold = self.threshold.max(other.threshold);
        let mut clusters: Vec<(Complex, usize)> = self.values.clone();
        for &(z, m) in &other.values {
            match clusters
                .iter()
                .position(|&(v, _)| (v - z).norm() <= threshold)
            {
                Some(i) => clusters[i].1 += m,
                None => clusters.push((z, m)),
            }
        }
        clusters.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
        EigenSet {
            values: clusters,
            threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: EigenSet,
    /// Geometric eigenspace per entry of `eigenvalues`, in the same order.
    pub eigenspaces: Vec<CSubspace>,
}

/// Clustering radius `cluster * (1 + ||A||_F)` for `a`.
pub(crate) fn cluster_threshold(a: &CMatrix, tol: &Tolerances) -> f64 {
    tol.cluster * (1.0 + a.frobenius_norm())
}

/// Largest gap at which a defective pair may still be merged: `sqrt(cluster)`
/// relative to the clustering scale.
fn defective_gap(a: &CMatrix, tol: &Tolerances) -> f64 {
    tol.cluster.sqrt() * (1.0 + a.frobenius_norm())
}

/// Eigenvectors at angle below this count as parallel.
const PARALLEL_COS: f64 = 1.0 - 1e-6;

/// Clusters raw eigenvalues of `a`. Besides the plain radius of
/// [`EigenSet::from_raw`], two values closer than [`defective_gap`] whose
/// eigenvectors are parallel merge as well: roundoff splits a Jordan block of
/// size `k` by roughly `eps^(1/k)`, but the split values share an eigenvector.
pub fn cluster_eigenvalues(a: &CMatrix, raw: &[Complex], tol: &Tolerances) -> Result<EigenSet> {
    let threshold = cluster_threshold(a, tol);
    let gap = defective_gap(a, tol);
    let mut clusters: Vec<(Complex, usize, Vec<Complex>)> = raw
        .iter()
        .map(|&z| {
            let v = nullspace_clamped(&a.shifted(z)?, tol.singular, 1, 1).basis()[0].clone();
            Ok((z, 1, v))
        })
        .collect::<Result<_>>()?;
    'merge: loop {
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let d = (clusters[i].0 - clusters[j].0).norm();
                let parallel = || dot(&clusters[i].2, &clusters[j].2).norm() >= PARALLEL_COS;
                if d <= threshold || (d <= gap && parallel()) {
                    let (zj, mj, _) = clusters.swap_remove(j);
                    let (zi, mi, _) = &mut clusters[i];
                    let total = *mi + mj;
                    *zi = (*zi * *mi as f64 + zj * mj as f64) / total as f64;
                    *mi = total;
                    continue 'merge;
                }
            }
        }
        break;
    }
    let mut values: Vec<(Complex, usize)> = clusters.into_iter().map(|(z, m, _)| (z, m)).collect();
    values.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    Ok(EigenSet { values, threshold })
}

pub fn eigen_decompose(a: &CMatrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    let raw = eigenvalues(a)?;
    let set = cluster_eigenvalues(a, &raw, tol)?;
    let eigenspaces = set
        .values()
        .iter()
        .map(|&(lambda, mult)| {
            let shifted = a.shifted(lambda)?;
            Ok(nullspace_clamped(&shifted, tol.singular, 1, mult))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenDecomposition {
        eigenvalues: set,
        eigenspaces,
    })
}

/// Raw (unclustered) eigenvalues of a square matrix.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex>> {
    let n = a.require_square()?;
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut h = a.clone();
    reduce_to_hessenberg(&mut h);
    hessenberg_qr(&mut h)
}

fn reduce_to_hessenberg(h: &mut CMatrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex> = (k + 1..n).map(|i| h[(i, k)]).collect();
        if vec_norm(&x[1..]) == 0.0 {
            continue;
        }
        let norm = vec_norm(&x);
        let phase = if x[0] == ZERO { ONE } else { x[0] / x[0].norm() };
        let alpha = -phase * norm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = vec_norm(&v);
        v.iter_mut().for_each(|z| *z /= vnorm);

        // H <- P H with P = I - 2 v v^H on rows k+1..
        for j in k..n {
            let s: Complex = (0..v.len()).map(|t| v[t].conj() * h[(k + 1 + t, j)]).sum::<Complex>() * 2.0;
            for t in 0..v.len() {
                h[(k + 1 + t, j)] -= s * v[t];
            }
        }
        // H <- H P on columns k+1..
        for i in 0..n {
            let s: Complex = (0..v.len()).map(|t| h[(i, k + 1 + t)] * v[t]).sum::<Complex>() * 2.0;
            for t in 0..v.len() {
                h[(i, k + 1 + t)] -= s * v[t].conj();
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}

/// Complex Givens rotation `G = [[c, s], [-conj(s), c]]` with `G [a; b] = [r; 0]`.
fn givens(a: Complex, b: Complex) -> (f64, Complex) {
    let r = a.norm().hypot(b.norm());
    if r == 0.0 {
        return (1.0, ZERO);
    }
    if a == ZERO {
        return (0.0, ONE);
    }
    let c = a.norm() / r;
    let s = (a / a.norm()) * b.conj() / r;
    (c, s)
}

/// Eigenvalue of the trailing 2x2 block closer to its last diagonal entry.
fn wilkinson_shift(a: Complex, b: Complex, c: Complex, d: Complex) -> Complex {
    let mid = (a + d) * 0.5;
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let (l1, l2) = (mid + disc, mid - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn hessenberg_qr(h: &mut CMatrix) -> Result<Vec<Complex>> {
    let n = h.rows();
    let max_sweeps = 30 * n;
    let scale = h.frobenius_norm();
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut sweeps = 0;
    let mut since_deflation = 0;

    loop {
        if hi == 0 {
            eigs.push(h[(0, 0)]);
            break;
        }
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == 0.0 {
                s = scale;
            }
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eigs.push(h[(hi, hi)]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if sweeps >= max_sweeps {
            return Err(Error::ConvergenceFailure { iterations: sweeps });
        }
        sweeps += 1;
        since_deflation += 1;

        let shift = if since_deflation % 10 == 0 {
            // exceptional shift to break cycles
            let sub = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + Complex::new(0.75 * sub, -0.4375 * sub)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        qr_sweep(h, lo, hi, shift);
    }
    Ok(eigs)
}

/// One explicit shifted QR step `H - mu I = QR, H <- RQ + mu I` on the
/// active window `lo..=hi`.
fn qr_sweep(h: &mut CMatrix, lo: usize, hi: usize, shift: Complex) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let (x, y) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = x * c + s * y;
            h[(k + 1, j)] = -s.conj() * x + y * c;
        }
        h[(k + 1, k)] = ZERO;
        rotations.push((c, s));
    }
    for (k, &(c, s)) in (lo..hi).zip(&rotations) {
        for i in lo..=(k + 1).min(hi) {
            let (x, y) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = x * c + y * s.conj();
            h[(i, k + 1)] = -x * s + y * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}
