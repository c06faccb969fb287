//! Vectors and matrices over `C2`, and operators `T = e1*T1 + e2*T2`.
//!
//! A vector `(x_1, ..., x_n)` in `C2^n` is stored as its two idempotent
//! component vectors, so `x = minus*e1 + plus*e2`. An operator is the pair of
//! complex matrices `(T1, T2)` acting on those components independently.

use crate::error::{Error, Result};
use crate::linalg::{column_space, is_singular_matrix, nullspace, vec_norm, CMatrix, CSubspace, ZERO};
use crate::scalar::{is_finite, Bicomplex, IdealClass};
use crate::Complex;

/// Classification of a bicomplex vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum VectorClass {
    Zero,
    /// Nonzero, but every entry is a zero divisor.
    SingularNonzero,
    /// At least one entry is invertible.
    NonSingular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BicomplexVector {
    minus: Vec<Complex>,
    plus: Vec<Complex>,
}

impl BicomplexVector {
    pub fn new(minus: Vec<Complex>, plus: Vec<Complex>) -> Result<Self> {
        if minus.len() != plus.len() {
            return Err(Error::DimensionMismatch {
                expected: minus.len(),
                found: plus.len(),
            });
        }
        if !minus.iter().chain(&plus).all(|&z| is_finite(z)) {
            return Err(Error::NonFinite("vector entries"));
        }
        Ok(BicomplexVector { minus, plus })
    }

    pub fn zeros(n: usize) -> Self {
        BicomplexVector {
            minus: vec![ZERO; n],
            plus: vec![ZERO; n],
        }
    }

    pub fn from_entries(entries: &[Bicomplex]) -> Self {
        BicomplexVector {
            minus: entries.iter().map(Bicomplex::minus).collect(),
            plus: entries.iter().map(Bicomplex::plus).collect(),
        }
    }

    /// `e1 * u`.
    pub fn e1(u: &[Complex]) -> Self {
        BicomplexVector {
            minus: u.to_vec(),
            plus: vec![ZERO; u.len()],
        }
    }

    /// `e2 * w`.
    pub fn e2(w: &[Complex]) -> Self {
        BicomplexVector {
            minus: vec![ZERO; w.len()],
            plus: w.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minus.is_empty()
    }

    pub fn minus(&self) -> &[Complex] {
        &self.minus
    }

    pub fn plus(&self) -> &[Complex] {
        &self.plus
    }

    pub fn entry(&self, i: usize) -> Bicomplex {
        Bicomplex::raw(self.minus[i], self.plus[i])
    }

    pub fn entries(&self) -> Vec<Bicomplex> {
        (0..self.len()).map(|i| self.entry(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.minus.iter().chain(&self.plus).all(|&z| z == ZERO)
    }

    /// `kappa * self`, entrywise.
    pub fn scale(&self, kappa: Bicomplex) -> Self {
        BicomplexVector {
            minus: self.minus.iter().map(|z| kappa.minus() * z).collect(),
            plus: self.plus.iter().map(|z| kappa.plus() * z).collect(),
        }
    }

    pub fn sub(&self, other: &BicomplexVector) -> Result<Self> {
        check_len(self.len(), other.len())?;
        Ok(BicomplexVector {
            minus: self.minus.iter().zip(&other.minus).map(|(a, b)| a - b).collect(),
            plus: self.plus.iter().zip(&other.plus).map(|(a, b)| a - b).collect(),
        })
    }

    /// Euclidean norm of the concatenation `(minus || plus)`.
    pub fn norm(&self) -> f64 {
        vec_norm(&self.minus).hypot(vec_norm(&self.plus))
    }

    /// `(minus || plus)` as one vector of length `2n`.
    pub fn concat(&self) -> Vec<Complex> {
        self.minus.iter().chain(&self.plus).copied().collect()
    }

    pub fn classify(&self, tol: f64) -> VectorClass {
        let classes: Vec<IdealClass> = self.entries().iter().map(|x| x.classify(tol)).collect();
        if classes.iter().all(|&c| c == IdealClass::Zero) {
            VectorClass::Zero
        } else if classes.contains(&IdealClass::NonSingular) {
            VectorClass::NonSingular
        } else {
            VectorClass::SingularNonzero
        }
    }
}

/// Matrix over `C2`, held as `A = e1*A_minus + e2*A_plus`.
#[derive(Debug, Clone, PartialEq)]
pub struct BicomplexMatrix {
    minus: CMatrix,
    plus: CMatrix,
}

impl BicomplexMatrix {
    pub fn new(minus: CMatrix, plus: CMatrix) -> Result<Self> {
        if minus.rows() != plus.rows() || minus.cols() != plus.cols() {
            return Err(Error::DimensionMismatch {
                expected: minus.rows() * minus.cols(),
                found: plus.rows() * plus.cols(),
            });
        }
        Ok(BicomplexMatrix { minus, plus })
    }

    pub fn from_entries(rows: &[Vec<Bicomplex>]) -> Result<Self> {
        let minus: Vec<Vec<Complex>> = rows.iter().map(|r| r.iter().map(Bicomplex::minus).collect()).collect();
        let plus: Vec<Vec<Complex>> = rows.iter().map(|r| r.iter().map(Bicomplex::plus).collect()).collect();
        Self::new(CMatrix::from_rows(&minus)?, CMatrix::from_rows(&plus)?)
    }

    pub fn minus(&self) -> &CMatrix {
        &self.minus
    }

    pub fn plus(&self) -> &CMatrix {
        &self.plus
    }

    pub fn entry(&self, i: usize, j: usize) -> Bicomplex {
        Bicomplex::raw(self.minus[(i, j)], self.plus[(i, j)])
    }

    pub fn into_operator(self) -> BicomplexOperator {
        BicomplexOperator {
            t1: self.minus,
            t2: self.plus,
        }
    }
}

/// `T = e1*T1 + e2*T2` acting on `C2^n` through the standard basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BicomplexOperator {
    t1: CMatrix,
    t2: CMatrix,
}

impl BicomplexOperator {
    /// Both components must share a shape. Spectral operations additionally
    /// require them to be square.
    pub fn new(t1: CMatrix, t2: CMatrix) -> Result<Self> {
        if t1.rows() != t2.rows() || t1.cols() != t2.cols() {
            return Err(Error::DimensionMismatch {
                expected: t1.rows() * t1.cols(),
                found: t2.rows() * t2.cols(),
            });
        }
        if t1.rows() == 0 || t1.cols() == 0 {
            return Err(Error::Empty);
        }
        Ok(BicomplexOperator { t1, t2 })
    }

    pub fn identity(n: usize) -> Self {
        BicomplexOperator {
            t1: CMatrix::identity(n),
            t2: CMatrix::identity(n),
        }
    }

    pub fn zero(n: usize) -> Self {
        BicomplexOperator {
            t1: CMatrix::zeros(n, n),
            t2: CMatrix::zeros(n, n),
        }
    }

    pub fn t1(&self) -> &CMatrix {
        &self.t1
    }

    pub fn t2(&self) -> &CMatrix {
        &self.t2
    }

    pub fn rows(&self) -> usize {
        self.t1.rows()
    }

    pub fn cols(&self) -> usize {
        self.t1.cols()
    }

    /// Dimension `n` of a square operator on `C2^n`.
    pub fn dim(&self) -> Result<usize> {
        self.t1.require_square()
    }

    pub fn as_matrix(&self) -> BicomplexMatrix {
        BicomplexMatrix {
            minus: self.t1.clone(),
            plus: self.t2.clone(),
        }
    }

    pub fn apply(&self, v: &BicomplexVector) -> Result<BicomplexVector> {
        Ok(BicomplexVector {
            minus: self.t1.mul_vec(&v.minus)?,
            plus: self.t2.mul_vec(&v.plus)?,
        })
    }

    pub fn add(&self, other: &BicomplexOperator) -> Result<Self> {
        Ok(BicomplexOperator {
            t1: self.t1.add(&other.t1)?,
            t2: self.t2.add(&other.t2)?,
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(Complex::new(-1.0, 0.0))
    }

    pub fn scale(&self, a: Complex) -> Self {
        BicomplexOperator {
            t1: self.t1.scale(a),
            t2: self.t2.scale(a),
        }
    }

    /// `eta * T = e1*(eta_minus T1) + e2*(eta_plus T2)`.
    pub fn scale_bicomplex(&self, eta: Bicomplex) -> Self {
        BicomplexOperator {
            t1: self.t1.scale(eta.minus()),
            t2: self.t2.scale(eta.plus()),
        }
    }

    /// `T - kappa*I = e1*(T1 - kappa_minus I) + e2*(T2 - kappa_plus I)`.
    pub fn shift(&self, kappa: Bicomplex) -> Result<Self> {
        Ok(BicomplexOperator {
            t1: self.t1.shifted(kappa.minus())?,
            t2: self.t2.shifted(kappa.plus())?,
        })
    }

    /// Kernel as `ker T1 x_e ker T2`.
    pub fn kernel(&self, tol: f64) -> SplitSubspace {
        SplitSubspace {
            minus: nullspace(&self.t1, tol),
            plus: nullspace(&self.t2, tol),
        }
    }

    /// Image as `Im T1 x_e Im T2`.
    pub fn image(&self, tol: f64) -> SplitSubspace {
        SplitSubspace {
            minus: column_space(&self.t1, tol),
            plus: column_space(&self.t2, tol),
        }
    }

    /// Singular iff `T1` or `T2` is, decided on the component determinants.
    pub fn is_singular(&self, tol: f64) -> Result<bool> {
        Ok(is_singular_matrix(&self.t1, tol)? || is_singular_matrix(&self.t2, tol)?)
    }

    /// Frobenius norms `||T1|| + ||T2||`.
    pub fn norm(&self) -> f64 {
        self.t1.frobenius_norm() + self.t2.frobenius_norm()
    }
}

/// A subspace `S1 x_e S2 = {e1*u + e2*w : u in S1, w in S2}` of `C2^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitSubspace {
    pub minus: CSubspace,
    pub plus: CSubspace,
}

impl SplitSubspace {
    /// Dimension over `C1`: `dim S1 + dim S2`.
    pub fn dim(&self) -> usize {
        self.minus.dim() + self.plus.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Explicit basis `{e1*u_k} ∪ {e2*w_j}`.
    pub fn assemble(&self) -> Vec<BicomplexVector> {
        self.minus
            .basis()
            .iter()
            .map(|u| BicomplexVector::e1(u))
            .chain(self.plus.basis().iter().map(|w| BicomplexVector::e2(w)))
            .collect()
    }

    pub fn distance(&self, v: &BicomplexVector) -> f64 {
        self.minus.distance(v.minus()).hypot(self.plus.distance(v.plus()))
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;
    use crate::oracle::{self, Rng};
    use crate::DEFAULT_SINGULAR_TOL as TOL;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn example_operator_fixes_one_e2() {
        let t = oracle::example_operator();
        let v = BicomplexVector::from_entries(&[Bicomplex::ONE, Bicomplex::E2]);
        assert_eq!(v.minus(), &[ONE, ZERO]);
        assert_eq!(v.plus(), &[ONE, ONE]);
        assert_eq!(t.apply(&v).unwrap(), v);

        let id = BicomplexOperator::identity(2);
        assert_eq!(id.apply(&v).unwrap(), v);
        assert!(t.apply(&BicomplexVector::zeros(3)).is_err());
    }

    #[test]
    fn apply_matches_schoolbook_product() {
        let mut rng = Rng::new(5);
        for _ in 0..20 {
            let t = rng.operator(3);
            let v = rng.vector(3);
            let m = t.as_matrix();
            let got = t.apply(&v).unwrap();
            for i in 0..3 {
                let want = (0..3).fold(Bicomplex::ZERO, |acc, j| acc + m.entry(i, j) * v.entry(j));
                assert!((got.entry(i) - want).minus().norm() < 1e-12);
                assert!((got.entry(i) - want).plus().norm() < 1e-12);
            }
        }
    }

    #[test]
    fn linear_combinations() {
        let mut rng = Rng::new(9);
        let t = rng.operator(3);
        let s = t.scale_bicomplex(Bicomplex::E1);
        assert_eq!(s.t1(), t.t1());
        assert_eq!(s.t2(), &CMatrix::zeros(3, 3));
        let z = t.add(&t.neg()).unwrap();
        assert_eq!(z, BicomplexOperator::zero(3));

        for _ in 0..100 {
            let eta = rng.bicomplex();
            let v = rng.vector(3);
            let lhs = t.scale_bicomplex(eta).apply(&v).unwrap();
            let rhs = t.apply(&v).unwrap().scale(eta);
            assert!(lhs.sub(&rhs).unwrap().norm() <= 1e-12 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn shift_examples() {
        let t = oracle::example_operator();
        assert_eq!(t.shift(Bicomplex::ZERO).unwrap(), t);
        let kappa = Bicomplex::new(c(1.0, 0.0), c(2.0, 0.0)).unwrap();
        let s = t.shift(kappa).unwrap();
        assert_eq!(s.t1(), &CMatrix::from_real_rows(&[&[0.0, 0.0], &[0.0, -1.0]]).unwrap());
        assert_eq!(s.t2(), &CMatrix::from_real_rows(&[&[-1.0, 0.0], &[0.0, -1.0]]).unwrap());
        let lam = Bicomplex::from_complex(c(0.5, 1.0)).unwrap();
        let s = t.shift(lam).unwrap();
        assert_eq!(s.t1()[(0, 0)], c(0.5, -1.0));
        assert_eq!(s.t2()[(0, 0)], c(0.5, -1.0));
    }

    #[test]
    fn kernel_and_image_of_example() {
        let t = oracle::example_operator();
        let k = t.kernel(TOL);
        assert_eq!((k.minus.dim(), k.plus.dim()), (1, 0));
        assert!(k.minus.distance(&[ZERO, ONE]) < 1e-14);
        let basis = k.assemble();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].plus(), &[ZERO, ZERO]);

        let im = t.image(TOL);
        assert_eq!((im.minus.dim(), im.plus.dim()), (1, 2));
        assert!(im.minus.distance(&[ONE, ZERO]) < 1e-14);

        assert_eq!(BicomplexOperator::identity(3).kernel(TOL).dim(), 0);
        assert_eq!(BicomplexOperator::zero(3).image(TOL).dim(), 0);
    }

    #[test]
    fn rectangular_kernel_and_image() {
        let t1 = CMatrix::from_real_rows(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]).unwrap();
        let t2 = CMatrix::zeros(2, 3);
        let t = BicomplexOperator::new(t1, t2).unwrap();
        assert_eq!(t.kernel(TOL).dim(), 1 + 3);
        assert_eq!(t.image(TOL).dim(), 2);
        assert!(t.dim().is_err());
    }

    #[test]
    fn singular_operator() {
        assert!(oracle::example_operator().is_singular(TOL).unwrap());
        assert!(!BicomplexOperator::identity(2).is_singular(TOL).unwrap());
        let mut rng = Rng::new(21);
        let t = rng.operator(4);
        assert!(!t.is_singular(TOL).unwrap());
        let deficient = rng.matrix(4, 2).matmul(&rng.matrix(2, 4)).unwrap();
        let t = BicomplexOperator::new(t.t1().clone(), deficient).unwrap();
        assert!(t.is_singular(TOL).unwrap());
        assert_eq!(t.kernel(TOL).dim(), 2);
    }

    #[test]
    fn vector_classes() {
        let mut entries = vec![Bicomplex::E1, Bicomplex::E2];
        entries.extend(std::iter::repeat_n(Bicomplex::ZERO, 3));
        let v = BicomplexVector::from_entries(&entries);
        assert_eq!(v.classify(TOL), VectorClass::SingularNonzero);
        // both components are nonzero vectors, yet the vector is singular
        assert!(v.minus().iter().any(|z| *z != ZERO) && v.plus().iter().any(|z| *z != ZERO));

        let mut entries = vec![Bicomplex::ONE];
        entries.extend(std::iter::repeat_n(Bicomplex::ZERO, 3));
        assert_eq!(BicomplexVector::from_entries(&entries).classify(TOL), VectorClass::NonSingular);
        assert_eq!(BicomplexVector::zeros(3).classify(TOL), VectorClass::Zero);
    }

    #[test]
    fn vector_constructor_validates() {
        assert!(BicomplexVector::new(vec![ONE], vec![]).is_err());
        assert!(BicomplexVector::new(vec![c(f64::NAN, 0.0)], vec![ONE]).is_err());
        assert!(BicomplexOperator::new(CMatrix::identity(2), CMatrix::identity(3)).is_err());
    }
}
