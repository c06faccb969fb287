//! Structure-blind reference computations.
//!
//! Nothing here goes through the idempotent split theorems: operators are
//! embedded as `2n x 2n` block matrices, nullspaces come from Gaussian
//! elimination with complete pivoting (not the pivoted QR in [`crate::linalg`]),
//! determinants from cofactor expansion, and eigenvalues from characteristic
//! polynomial roots. Agreement with the main implementation is therefore
//! evidence rather than a tautology.

use rand::{Rng as _, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, vec_norm, CMatrix, CSubspace, ONE, ZERO};
use crate::operator::{BicomplexOperator, BicomplexVector};
use crate::scalar::Bicomplex;
use crate::Complex;

/// The worked two-dimensional operator `T1(x, y) = (x, 0)`, `T2 = I`, so that
/// `T(xi, eta) = (xi, eta*e2)`.
pub fn example_operator() -> BicomplexOperator {
    let t1 = CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).expect("static shape");
    BicomplexOperator::new(t1, CMatrix::identity(2)).expect("static shape")
}

/// Deterministic generator (xoshiro256++), bit-identical across platforms.
#[derive(Debug, Clone)]
pub struct Rng {
    inner: Xoshiro256PlusPlus,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    /// Independent stream `index` derived from `seed`.
    pub fn stream(seed: u64, index: u64) -> Self {
        Self::new(seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.inner.random::<f64>()
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.inner.random::<bool>()
    }

    /// Uniform on the square `[-1, 1]^2`.
    pub fn complex(&mut self) -> Complex {
        Complex::new(self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0))
    }

    pub fn complex_in(&mut self, radius: f64) -> Complex {
        self.complex() * radius
    }

    pub fn bicomplex(&mut self) -> Bicomplex {
        Bicomplex::raw(self.complex(), self.complex())
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> CMatrix {
        let data = (0..rows * cols).map(|_| self.complex()).collect();
        CMatrix::from_row_major(rows, cols, data).expect("finite by construction")
    }

    pub fn complex_vec(&mut self, n: usize) -> Vec<Complex> {
        (0..n).map(|_| self.complex()).collect()
    }

    pub fn operator(&mut self, n: usize) -> BicomplexOperator {
        BicomplexOperator::new(self.matrix(n, n), self.matrix(n, n)).expect("square")
    }

    pub fn vector(&mut self, n: usize) -> BicomplexVector {
        BicomplexVector::new(self.complex_vec(n), self.complex_vec(n)).expect("finite")
    }

    /// Random unitary from Gram-Schmidt on a random matrix.
    pub fn unitary(&mut self, n: usize) -> CMatrix {
        loop {
            let cols: Vec<Vec<Complex>> = (0..n).map(|_| self.complex_vec(n)).collect();
            let q = gram_schmidt(&cols, 1e-6);
            if q.len() == n {
                return CMatrix::from_columns(n, &q).expect("square");
            }
        }
    }
}

/// Which structure [`random_operator`] plants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectrumProfile {
    /// Dense random components, no planted structure.
    Generic,
    /// The value 2 planted in both component spectra.
    SharedEigenvalue,
    /// Zero planted as an eigenvalue in one or both components.
    RankDeficient,
    /// A 2x2 Jordan block in one or both components.
    Defective,
}

impl SpectrumProfile {
    pub const ALL: [SpectrumProfile; 4] = [
        SpectrumProfile::Generic,
        SpectrumProfile::SharedEigenvalue,
        SpectrumProfile::RankDeficient,
        SpectrumProfile::Defective,
    ];
}

/// A planted eigenvalue with known multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlantedEigenvalue {
    pub value: Complex,
    pub algebraic: usize,
    pub geometric: usize,
}

/// Ground truth for one component matrix.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ComponentTruth {
    /// Full spectrum with multiplicity, when the component was built from a
    /// triangular factor.
    pub spectrum: Option<Vec<Complex>>,
    pub planted: Option<PlantedEigenvalue>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedOperator {
    pub operator: BicomplexOperator,
    pub profile: SpectrumProfile,
    pub t1: ComponentTruth,
    pub t2: ComponentTruth,
}

/// Value planted by [`SpectrumProfile::SharedEigenvalue`].
pub const SHARED_EIGENVALUE: Complex = Complex::new(2.0, 0.0);

pub fn random_operator(rng: &mut Rng, n: usize, profile: SpectrumProfile) -> PlantedOperator {
    assert!(n >= 1, "operators need n >= 1");
    let (truth1, truth2) = match profile {
        SpectrumProfile::Generic => (None, None),
        SpectrumProfile::SharedEigenvalue => {
            let k1 = 1 + rng.below(n.min(2));
            let k2 = 1 + rng.below(n.min(2));
            (
                Some(PlantedEigenvalue { value: SHARED_EIGENVALUE, algebraic: k1, geometric: k1 }),
                Some(PlantedEigenvalue { value: SHARED_EIGENVALUE, algebraic: k2, geometric: k2 }),
            )
        }
        SpectrumProfile::RankDeficient => {
            let pick = |rng: &mut Rng| {
                let k = 1 + rng.below(n);
                PlantedEigenvalue { value: ZERO, algebraic: k, geometric: k }
            };
            match rng.below(3) {
                0 => (Some(pick(rng)), None),
                1 => (None, Some(pick(rng))),
                _ => (Some(pick(rng)), Some(pick(rng))),
            }
        }
        SpectrumProfile::Defective if n >= 2 => {
            let pick = |rng: &mut Rng| PlantedEigenvalue {
                value: rng.complex_in(2.0),
                algebraic: 2,
                geometric: 1,
            };
            match rng.below(3) {
                0 => (Some(pick(rng)), None),
                1 => (None, Some(pick(rng))),
                _ => (Some(pick(rng)), Some(pick(rng))),
            }
        }
        SpectrumProfile::Defective => {
            let p = PlantedEigenvalue { value: rng.complex_in(2.0), algebraic: 1, geometric: 1 };
            (Some(p), None)
        }
    };
    let (m1, t1) = planted_component(rng, n, truth1);
    let (m2, t2) = planted_component(rng, n, truth2);
    PlantedOperator {
        operator: BicomplexOperator::new(m1, m2).expect("same shape"),
        profile,
        t1,
        t2,
    }
}

/// A component with a prescribed eigenvalue, or a dense random matrix when
/// nothing is planted.
pub fn planted_component(
    rng: &mut Rng,
    n: usize,
    plant: Option<PlantedEigenvalue>,
) -> (CMatrix, ComponentTruth) {
    match plant {
        None => (rng.matrix(n, n), ComponentTruth::default()),
        Some(p) => {
            let (m, spectrum) = similar_triangular(rng, n, p);
            (
                m,
                ComponentTruth {
                    spectrum: Some(spectrum),
                    planted: Some(p),
                },
            )
        }
    }
}

/// `Q U Q^H` with `U` upper triangular: the planted value fills the first
/// `algebraic` diagonal slots with `algebraic - geometric` superdiagonal ones
/// inside that block, the rest of the diagonal is well separated from it and
/// from itself, and the remaining strict upper part is random.
fn similar_triangular(rng: &mut Rng, n: usize, p: PlantedEigenvalue) -> (CMatrix, Vec<Complex>) {
    assert!(p.geometric >= 1 && p.geometric <= p.algebraic && p.algebraic <= n);
    let mut diag = vec![p.value; p.algebraic];
    while diag.len() < n {
        let z = rng.complex_in(3.0);
        if diag.iter().all(|d| (d - z).norm() > 0.3) {
            diag.push(z);
        }
    }
    let mut u = CMatrix::from_diagonal(&diag);
    let k = p.algebraic;
    for i in 0..k - p.geometric {
        u[(i, i + 1)] = ONE;
    }
    for i in 0..n {
        for j in i + 1..n {
            if j >= k {
                u[(i, j)] = rng.complex();
            }
        }
    }
    let q = rng.unitary(n);
    let m = q.matmul(&u).and_then(|qu| qu.matmul(&q.adjoint())).expect("square");
    (m, diag)
}

/// `diag(T1, T2)`: the action of `T` on `(minus || plus)` in `C1^{2n}`.
pub fn block_embed(t: &BicomplexOperator) -> CMatrix {
    t.t1().direct_sum(t.t2())
}

/// `||T v - kappa v||` over the concatenated components.
pub fn residual(t: &BicomplexOperator, kappa: Bicomplex, v: &BicomplexVector) -> Result<f64> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let b = block_embed(t);
    let x = v.concat();
    let n = v.len();
    let bx = b.mul_vec(&x)?;
    let r: Vec<Complex> = bx
        .iter()
        .zip(&x)
        .enumerate()
        .map(|(i, (y, xi))| {
            let k = if i < n { kappa.minus() } else { kappa.plus() };
            y - k * xi
        })
        .collect();
    Ok(vec_norm(&r))
}

/// Nullspace of the shifted block system `diag(T1 - k1 I, T2 - k2 I)`, as a
/// subspace of `C1^{2n}`.
pub fn brute_modified_eigenspace(t: &BicomplexOperator, kappa: Bicomplex, tol: f64) -> Result<CSubspace> {
    Ok(brute_nullspace(&block_embed(&t.shift(kappa)?), tol))
}

/// Nullspace by reduction to row echelon form with complete pivoting.
/// Pivots at or below `tol * max(||A||_F, 1) * max(rows, cols)` are treated as zero.
pub fn brute_nullspace(a: &CMatrix, tol: f64) -> CSubspace {
    let (rows, cols) = (a.rows(), a.cols());
    let threshold = tol * a.frobenius_norm().max(1.0) * rows.max(cols) as f64;
    let mut m = a.to_rows();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    while rank < rows.min(cols) {
        let mut best = (rank, rank, -1.0);
        for (i, row) in m.iter().enumerate().skip(rank) {
            for (j, z) in row.iter().enumerate().skip(rank) {
                if z.norm() > best.2 {
                    best = (i, j, z.norm());
                }
            }
        }
        if best.2 <= threshold {
            break;
        }
        m.swap(rank, best.0);
        for row in m.iter_mut() {
            row.swap(rank, best.1);
        }
        perm.swap(rank, best.1);
        let pivot = m[rank][rank];
        let pivot_row: Vec<Complex> = m[rank].iter().map(|z| z / pivot).collect();
        m[rank] = pivot_row.clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank {
                continue;
            }
            let f = row[rank];
            if f != ZERO {
                for (z, p) in row.iter_mut().zip(&pivot_row) {
                    *z -= f * p;
                }
            }
        }
        rank += 1;
    }
    // reduced form [I F; 0 0] in permuted columns; null vectors are (-F e_j, e_j)
    let mut vectors = Vec::with_capacity(cols - rank);
    for free in rank..cols {
        let mut x = vec![ZERO; cols];
        x[perm[free]] = ONE;
        for (i, row) in m.iter().enumerate().take(rank) {
            x[perm[i]] = -row[free];
        }
        vectors.push(x);
    }
    CSubspace::from_orthonormal(cols, gram_schmidt(&vectors, 1e-12))
}

/// Modified Gram-Schmidt with one reorthogonalization pass; vectors whose
/// remainder falls below `drop_tol` relative to their length are skipped.
pub fn gram_schmidt(vectors: &[Vec<Complex>], drop_tol: f64) -> Vec<Vec<Complex>> {
    let mut out: Vec<Vec<Complex>> = Vec::new();
    for v in vectors {
        let len = vec_norm(v);
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = dot(q, &r);
                for (ri, qi) in r.iter_mut().zip(q) {
                    *ri -= c * qi;
                }
            }
        }
        let nr = vec_norm(&r);
        if nr > drop_tol * len && nr > 0.0 {
            out.push(r.iter().map(|z| z / nr).collect());
        }
    }
    out
}

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_determinant(a: &CMatrix) -> Complex {
    fn expand(m: &[Vec<Complex>]) -> Complex {
        match m.len() {
            0 => ONE,
            1 => m[0][0],
            n => (0..n)
                .map(|j| {
                    let minor: Vec<Vec<Complex>> = m[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &z)| z).collect())
                        .collect();
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    m[0][j] * expand(&minor) * sign
                })
                .sum(),
        }
    }
    expand(&a.to_rows())
}

/// Singularity of `z1 + i2*z2` decided from `|z1^2 + z2^2|` and
/// `|z1|^2 + |z2|^2` only, without forming idempotent components.
///
/// With `p = |z1^2 + z2^2|` and `q = 2(|z1|^2 + |z2|^2)`, the component moduli
/// are the two nonnegative numbers with product `p` and squares summing to
/// `q`; the element is singular when the smaller one is within
/// `tol * max(larger, 1)` of zero.
pub fn is_singular_by_modulus(z1: Complex, z2: Complex, tol: f64) -> bool {
    let p = (z1 * z1 + z2 * z2).norm();
    let q = 2.0 * (z1.norm_sqr() + z2.norm_sqr());
    let disc = (q * q - 4.0 * p * p).max(0.0).sqrt();
    let larger = ((q + disc) / 2.0).sqrt();
    let smaller = if larger > 0.0 { p / larger } else { 0.0 };
    smaller <= tol * larger.max(1.0)
}

/// Characteristic polynomial coefficients `c_0..=c_n` (monic, `c_n = 1`) by
/// the Faddeev-LeVerrier recursion.
pub fn characteristic_polynomial(a: &CMatrix) -> Result<Vec<Complex>> {
    let n = a.require_square()?;
    let mut coeffs = vec![ZERO; n + 1];
    coeffs[n] = ONE;
    let mut m = CMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.matmul(&m)?;
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        let am = a.matmul(&next)?;
        let trace: Complex = (0..n).map(|i| am[(i, i)]).sum();
        coeffs[n - k] = -trace / k as f64;
        m = next;
    }
    Ok(coeffs)
}

/// Monic polynomial `prod (x - r_i)` as coefficients `c_0..=c_n`.
pub fn polynomial_from_roots(roots: &[Complex]) -> Vec<Complex> {
    let mut coeffs = vec![ONE];
    for &r in roots {
        let mut next = vec![ZERO; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= r * c;
        }
        coeffs = next;
    }
    coeffs
}

/// Companion matrix of a monic polynomial given as `c_0..=c_n`.
pub fn companion_matrix(coeffs: &[Complex]) -> CMatrix {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut m = CMatrix::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = -coeffs[n - 1 - j] / lead;
    }
    for i in 1..n {
        m[(i, i - 1)] = ONE;
    }
    m
}

/// All roots by Aberth-Ehrlich iteration.
pub fn polynomial_roots(coeffs: &[Complex]) -> Vec<Complex> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex> = coeffs.iter().map(|c| c / lead).collect();
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex::new(0.4, 0.9);
    let mut roots: Vec<Complex> = (0..n).map(|k| seed.powu(k as u32 + 1) * bound * 0.5).collect();
    let eval = |x: Complex| {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(roots[i]);
            if p == ZERO {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex = (0..n)
                .filter(|&j| j != i)
                .map(|j| ONE / (roots[i] - roots[j]))
                .sum();
            let step = ratio / (ONE - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                roots[i] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved <= 1e-15 * bound {
            break;
        }
    }
    roots
}

/// Smallest achievable maximum distance over all pairings of two equally
/// long lists (exhaustive; intended for `n <= 8`).
pub fn matched_distance(a: &[Complex], b: &[Complex]) -> f64 {
    fn go(a: &[Complex], b: &[Complex], used: &mut Vec<bool>, i: usize, worst: f64, best: &mut f64) {
        if worst >= *best {
            return;
        }
        if i == a.len() {
            *best = worst;
            return;
        }
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                go(a, b, used, i + 1, worst.max((a[i] - b[j]).norm()), best);
                used[j] = false;
            }
        }
    }
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut best = f64::INFINITY;
    go(a, b, &mut vec![false; b.len()], 0, 0.0, &mut best);
    best
}

/// Expands an eigen-set into a flat multiset.
pub fn flatten(values: &[(Complex, usize)]) -> Vec<Complex> {
    values
        .iter()
        .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
        .collect()
}
