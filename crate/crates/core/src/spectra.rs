//! Eigenvalues, modified eigenvalues and eigenspaces of `T = e1*T1 + e2*T2`.
//!
//! Write `U1`, `U2` for the spectra of `T1`, `T2`. A complex `lambda` is an
//! eigenvalue of `T` iff `lambda ∈ U1 ∪ U2`. A bicomplex `kappa = k1*e1 + k2*e2`
//! is a modified eigenvalue iff `k1 ∈ U1` or `k2 ∈ U2`, so the modified
//! spectrum is the union of cylinders `(U1 x_e C1) ∪ (C1 x_e U2)`. It is
//! infinite and is only ever represented through `(U1, U2)`.
//!
//! The modified eigenspace at `kappa` is `E1(k1) x_e E2(k2)`, with `{0}` on
//! any side whose component is not an eigenvalue.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigen_decompose, nullspace_min_dim, CSubspace, EigenSet};
use crate::operator::{BicomplexOperator, BicomplexVector, SplitSubspace, VectorClass};
use crate::scalar::Bicomplex;
use crate::{Complex, Tolerances};

/// Which side(s) of `kappa` hit a component spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModifiedCase {
    /// `k1 ∈ U1`, `k2 ∉ U2`.
    OnlyMinus,
    /// `k1 ∉ U1`, `k2 ∈ U2`.
    OnlyPlus,
    /// `k1 ∈ U1` and `k2 ∈ U2`.
    Both,
}

impl ModifiedCase {
    fn from_membership(minus: bool, plus: bool) -> Option<Self> {
        match (minus, plus) {
            (true, false) => Some(ModifiedCase::OnlyMinus),
            (false, true) => Some(ModifiedCase::OnlyPlus),
            (true, true) => Some(ModifiedCase::Both),
            (false, false) => None,
        }
    }

    pub fn is_one_sided(self) -> bool {
        self != ModifiedCase::Both
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub upsilon1: EigenSet,
    pub upsilon2: EigenSet,
    /// `U1 ∪ U2` with multiplicities added where the sets overlap.
    pub eigenvalues: EigenSet,
    pub eigenspaces1: Vec<CSubspace>,
    pub eigenspaces2: Vec<CSubspace>,
}

impl SpectrumReport {
    pub fn is_eigenvalue(&self, lambda: Complex) -> bool {
        self.upsilon1.contains(lambda) || self.upsilon2.contains(lambda)
    }

    pub fn modified_case(&self, kappa: Bicomplex) -> Option<ModifiedCase> {
        ModifiedCase::from_membership(self.upsilon1.contains(kappa.minus()), self.upsilon2.contains(kappa.plus()))
    }

    pub fn upsilon(&self) -> UpsilonDescription {
        UpsilonDescription {
            upsilon1: self.upsilon1.clone(),
            upsilon2: self.upsilon2.clone(),
        }
    }
}

/// Every eigenvalue computation in this module starts here.
pub fn component_spectra(t: &BicomplexOperator, tol: &Tolerances) -> Result<SpectrumReport> {
    t.dim()?;
    let d1 = eigen_decompose(t.t1(), tol)?;
    let d2 = eigen_decompose(t.t2(), tol)?;
    Ok(SpectrumReport {
        eigenvalues: d1.eigenvalues.union(&d2.eigenvalues),
        upsilon1: d1.eigenvalues,
        upsilon2: d2.eigenvalues,
        eigenspaces1: d1.eigenspaces,
        eigenspaces2: d2.eigenspaces,
    })
}

pub fn is_eigenvalue(t: &BicomplexOperator, lambda: Complex, tol: &Tolerances) -> Result<bool> {
    Ok(component_spectra(t, tol)?.is_eigenvalue(lambda))
}

/// `Some(case)` when `kappa` is a modified eigenvalue.
pub fn is_modified_eigenvalue(
    t: &BicomplexOperator,
    kappa: Bicomplex,
    tol: &Tolerances,
) -> Result<Option<ModifiedCase>> {
    Ok(component_spectra(t, tol)?.modified_case(kappa))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModifiedEigenvalue {
    pub kappa: Bicomplex,
    pub case: ModifiedCase,
}

/// The family `base*e1 + w*e2` (or `w*e1 + base*e2` when `from_minus` is
/// false) over the given samples `w`. Every member is a modified eigenvalue
/// as soon as `base` lies in the corresponding component spectrum.
pub fn modified_family(
    t: &BicomplexOperator,
    from_minus: bool,
    base: Complex,
    samples: &[Complex],
    tol: &Tolerances,
) -> Result<Vec<ModifiedEigenvalue>> {
    let report = component_spectra(t, tol)?;
    let anchor = if from_minus { &report.upsilon1 } else { &report.upsilon2 };
    if !anchor.contains(base) {
        return Err(Error::BaseNotEigenvalue);
    }
    samples
        .iter()
        .map(|&w| {
            let kappa = if from_minus { Bicomplex::new(base, w)? } else { Bicomplex::new(w, base)? };
            let case = report.modified_case(kappa).expect("anchored side is a member");
            Ok(ModifiedEigenvalue { kappa, case })
        })
        .collect()
}

/// Intensional description of the modified spectrum as
/// `(U1 x_e C1) ∪ (C1 x_e U2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpsilonDescription {
    pub upsilon1: EigenSet,
    pub upsilon2: EigenSet,
}

impl UpsilonDescription {
    pub fn contains(&self, kappa: Bicomplex) -> bool {
        self.upsilon1.contains(kappa.minus()) || self.upsilon2.contains(kappa.plus())
    }

    pub fn is_empty(&self) -> bool {
        self.upsilon1.is_empty() && self.upsilon2.is_empty()
    }
}

fn fmt_set(f: &mut fmt::Formatter<'_>, set: &EigenSet) -> fmt::Result {
    write!(f, "{{")?;
    for (i, (z, _)) in set.values().iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{}", fmt_complex(*z))?;
    }
    write!(f, "}}")
}

/// Compact rendering: drops zero imaginary parts.
pub fn fmt_complex(z: Complex) -> String {
    let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

impl fmt::Display for UpsilonDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_set(f, &self.upsilon1)?;
        write!(f, " x_e C1) ∪ (C1 x_e ")?;
        fmt_set(f, &self.upsilon2)?;
        write!(f, ")")
    }
}

pub fn upsilon_description(t: &BicomplexOperator, tol: &Tolerances) -> Result<UpsilonDescription> {
    Ok(component_spectra(t, tol)?.upsilon())
}

/// Outcome of checking `U1 x_e U2 ⊂ Upsilon` on one operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentRecord {
    pub pairs_checked: usize,
    pub pairs_passed: usize,
    /// A modified eigenvalue outside `U1 x_e U2`, proving the containment is proper.
    pub witness: Option<Bicomplex>,
    pub witness_case: Option<ModifiedCase>,
}

impl ContainmentRecord {
    pub fn holds(&self) -> bool {
        self.pairs_checked == self.pairs_passed && self.witness.is_some()
    }
}

pub fn contains_idempotent_product(t: &BicomplexOperator, tol: &Tolerances) -> Result<ContainmentRecord> {
    let report = component_spectra(t, tol)?;
    let mut checked = 0;
    let mut passed = 0;
    for &(k1, _) in report.upsilon1.values() {
        for &(k2, _) in report.upsilon2.values() {
            checked += 1;
            if report.modified_case(Bicomplex::new(k1, k2)?) == Some(ModifiedCase::Both) {
                passed += 1;
            }
        }
    }
    // any value larger in modulus than all of U2 lies outside it
    let witness = match report.upsilon1.values().first() {
        Some(&(k1, _)) => {
            let far = 1.0
                + report.upsilon2.threshold()
                + report.upsilon2.values().iter().map(|(z, _)| z.norm()).fold(0.0, f64::max);
            Some(Bicomplex::new(k1, Complex::new(far, 0.0))?)
        }
        None => None,
    };
    let witness_case = witness.and_then(|w| report.modified_case(w));
    Ok(ContainmentRecord {
        pairs_checked: checked,
        pairs_passed: passed,
        witness: witness.filter(|_| witness_case == Some(ModifiedCase::OnlyMinus)),
        witness_case,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModifiedEigenspace {
    pub kappa: Bicomplex,
    pub case: ModifiedCase,
    pub space: SplitSubspace,
    /// `{e1*u_k} ∪ {e2*w_j}`.
    pub assembled: Vec<BicomplexVector>,
    /// True exactly in the one-sided cases: every nonzero member is then a
    /// multiple of `e1` or `e2`.
    pub all_eigenvectors_singular: bool,
}

impl ModifiedEigenspace {
    pub fn minus_basis(&self) -> &CSubspace {
        &self.space.minus
    }

    pub fn plus_basis(&self) -> &CSubspace {
        &self.space.plus
    }

    /// Dimension over `C1`.
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, v: &BicomplexVector, tol: f64) -> bool {
        self.space.distance(v) <= tol * (1.0 + v.norm())
    }

    /// Largest residual `||T v - kappa v||` over the assembled basis.
    pub fn max_residual(&self, t: &BicomplexOperator) -> Result<f64> {
        self.assembled.iter().try_fold(0.0f64, |acc, v| {
            let r = t.apply(v)?.sub(&v.scale(self.kappa))?.norm();
            Ok(acc.max(r))
        })
    }

    pub fn basis_classes(&self, tol: f64) -> Vec<VectorClass> {
        self.assembled.iter().map(|v| v.classify(tol)).collect()
    }
}

/// Residual bound for assembled eigenvectors: `cluster * (1 + ||T1|| + ||T2||)`.
pub fn residual_bound(t: &BicomplexOperator, tol: &Tolerances) -> f64 {
    tol.cluster * (1.0 + t.norm())
}

pub fn modified_eigenspace(t: &BicomplexOperator, kappa: Bicomplex, tol: &Tolerances) -> Result<ModifiedEigenspace> {
    let report = component_spectra(t, tol)?;
    modified_eigenspace_with(t, &report, kappa, tol)
}

/// Same as [`modified_eigenspace`] with precomputed spectra.
pub fn modified_eigenspace_with(
    t: &BicomplexOperator,
    report: &SpectrumReport,
    kappa: Bicomplex,
    tol: &Tolerances,
) -> Result<ModifiedEigenspace> {
    let n = t.dim()?;
    let case = report.modified_case(kappa).ok_or(Error::NotModifiedEigenvalue)?;
    let side = |hit: bool, m: &crate::CMatrix, k: Complex| -> Result<CSubspace> {
        if hit {
            // a member of the spectrum always has at least one eigenvector
            Ok(nullspace_min_dim(&m.shifted(k)?, tol.singular, 1))
        } else {
            Ok(CSubspace::zero(n))
        }
    };
    let space = SplitSubspace {
        minus: side(case != ModifiedCase::OnlyPlus, t.t1(), kappa.minus())?,
        plus: side(case != ModifiedCase::OnlyMinus, t.t2(), kappa.plus())?,
    };
    Ok(ModifiedEigenspace {
        kappa,
        case,
        assembled: space.assemble(),
        space,
        all_eigenvectors_singular: case.is_one_sided(),
    })
}

pub fn eigenspace(t: &BicomplexOperator, lambda: Complex, tol: &Tolerances) -> Result<ModifiedEigenspace> {
    let report = component_spectra(t, tol)?;
    if !report.is_eigenvalue(lambda) {
        return Err(Error::NotEigenvalue);
    }
    modified_eigenspace_with(t, &report, Bicomplex::from_complex(lambda)?, tol)
}

/// Dimensions of `ME(kappa) + ME(kappa')` and `ME(kappa) ∩ ME(kappa')`.
///
/// Both spaces split as products over the idempotent components, so sums and
/// intersections are taken side by side and the dimensions added.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenspaceSum {
    pub dim_first: usize,
    pub dim_second: usize,
    pub sum_dim: usize,
    pub intersection_dim: usize,
    pub is_direct: bool,
}

pub fn eigenspace_sum(
    t: &BicomplexOperator,
    kappa: Bicomplex,
    kappa_prime: Bicomplex,
    tol: &Tolerances,
) -> Result<EigenspaceSum> {
    if kappa == kappa_prime {
        return Err(Error::IdenticalKappa);
    }
    let report = component_spectra(t, tol)?;
    let a = modified_eigenspace_with(t, &report, kappa, tol)?;
    let b = modified_eigenspace_with(t, &report, kappa_prime, tol)?;
    let sum_dim = a.space.minus.sum_dim(&b.space.minus, tol.singular)? + a.space.plus.sum_dim(&b.space.plus, tol.singular)?;
    let intersection_dim = a.space.minus.intersection(&b.space.minus, tol.singular)?.dim()
        + a.space.plus.intersection(&b.space.plus, tol.singular)?.dim();
    Ok(EigenspaceSum {
        dim_first: a.dim(),
        dim_second: b.dim(),
        sum_dim,
        intersection_dim,
        is_direct: intersection_dim == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ONE, ZERO};
    use crate::oracle::{self, example_operator, Rng};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn k(m: Complex, p: Complex) -> Bicomplex {
        Bicomplex::new(m, p).unwrap()
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn example_spectra() {
        let r = component_spectra(&example_operator(), &tol()).unwrap();
        assert_eq!(r.upsilon1.values(), &[(ZERO, 1), (ONE, 1)]);
        assert_eq!(r.upsilon2.values(), &[(ONE, 2)]);
        assert_eq!(r.eigenvalues.values(), &[(ZERO, 1), (ONE, 3)]);
        assert_eq!(r.upsilon().to_string(), "({0, 1} x_e C1) ∪ (C1 x_e {1})");

        let z = component_spectra(&BicomplexOperator::zero(2), &tol()).unwrap();
        assert_eq!(z.upsilon1.values(), &[(ZERO, 2)]);
        assert_eq!(z.upsilon2.values(), &[(ZERO, 2)]);
    }

    #[test]
    fn triangular_components_expose_diagonals() {
        let t1 = crate::CMatrix::from_rows(&[
            vec![c(1.0, 1.0), c(3.0, 0.0), c(0.0, 2.0)],
            vec![ZERO, c(-2.0, 0.0), c(1.0, 0.0)],
            vec![ZERO, ZERO, c(0.5, -0.5)],
        ])
        .unwrap();
        let t2 = crate::CMatrix::from_rows(&[
            vec![c(4.0, 0.0), ONE, ONE],
            vec![ZERO, c(0.0, 3.0), ONE],
            vec![ZERO, ZERO, c(4.0, 0.0)],
        ])
        .unwrap();
        let r = component_spectra(&BicomplexOperator::new(t1, t2).unwrap(), &tol()).unwrap();
        let got1 = oracle::flatten(r.upsilon1.values());
        assert!(oracle::matched_distance(&got1, &[c(1.0, 1.0), c(-2.0, 0.0), c(0.5, -0.5)]) < 1e-10);
        let got2 = oracle::flatten(r.upsilon2.values());
        assert!(oracle::matched_distance(&got2, &[c(4.0, 0.0), c(0.0, 3.0), c(4.0, 0.0)]) < 1e-7);
    }

    #[test]
    fn eigenvalue_membership() {
        let t = example_operator();
        assert!(is_eigenvalue(&t, ONE, &tol()).unwrap());
        assert!(!is_eigenvalue(&t, c(2.0, 0.0), &tol()).unwrap());
        let shifted = t.shift(Bicomplex::from_complex(c(2.0, 0.0)).unwrap()).unwrap();
        assert!(!shifted.is_singular(tol().singular).unwrap());
        assert!(is_eigenvalue(&BicomplexOperator::identity(3), ONE, &tol()).unwrap());
    }

    #[test]
    fn modified_membership() {
        let t = example_operator();
        assert_eq!(
            is_modified_eigenvalue(&t, k(ONE, c(2.0, 0.0)), &tol()).unwrap(),
            Some(ModifiedCase::OnlyMinus)
        );
        for r in [ZERO, c(5.0, 0.0), c(0.0, 1.0)] {
            assert!(is_modified_eigenvalue(&t, k(ONE, r), &tol()).unwrap().is_some());
        }
        assert_eq!(is_modified_eigenvalue(&t, k(c(7.0, 0.0), c(9.0, 0.0)), &tol()).unwrap(), None);
        assert!(!t.shift(k(c(7.0, 0.0), c(9.0, 0.0))).unwrap().is_singular(1e-10).unwrap());
        assert_eq!(is_modified_eigenvalue(&t, k(ONE, ONE), &tol()).unwrap(), Some(ModifiedCase::Both));
        assert_eq!(
            is_modified_eigenvalue(&t, k(c(3.0, 0.0), ONE), &tol()).unwrap(),
            Some(ModifiedCase::OnlyPlus)
        );
    }

    #[test]
    fn families() {
        let t = example_operator();
        let samples = [ZERO, c(2.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)];
        let fam = modified_family(&t, true, ONE, &samples, &tol()).unwrap();
        assert_eq!(fam.len(), 4);
        for m in &fam {
            assert!(is_modified_eigenvalue(&t, m.kappa, &tol()).unwrap().is_some());
        }
        let fam = modified_family(&t, true, ZERO, &[c(3.0, 0.0)], &tol()).unwrap();
        assert_eq!(fam[0].kappa, k(ZERO, c(3.0, 0.0)));
        assert_eq!(fam[0].case, ModifiedCase::OnlyMinus);
        assert_eq!(
            modified_family(&t, true, c(5.0, 0.0), &samples, &tol()),
            Err(Error::BaseNotEigenvalue)
        );
        assert_eq!(modified_family(&t, false, ONE, &[c(9.0, 0.0)], &tol()).unwrap()[0].case, ModifiedCase::OnlyPlus);
    }

    #[test]
    fn containment() {
        let rec = contains_idempotent_product(&example_operator(), &tol()).unwrap();
        assert_eq!((rec.pairs_checked, rec.pairs_passed), (2, 2));
        assert!(rec.holds());
        let rec = contains_idempotent_product(&BicomplexOperator::identity(2), &tol()).unwrap();
        assert_eq!((rec.pairs_checked, rec.pairs_passed), (1, 1));
        assert!(rec.witness.is_some());
    }

    #[test]
    fn one_sided_eigenspace() {
        let t = example_operator();
        let me = modified_eigenspace(&t, k(ONE, c(2.0, 0.0)), &tol()).unwrap();
        assert_eq!(me.case, ModifiedCase::OnlyMinus);
        assert_eq!((me.minus_basis().dim(), me.plus_basis().dim()), (1, 0));
        assert!(me.all_eigenvectors_singular);
        let target = BicomplexVector::from_entries(&[Bicomplex::E1, Bicomplex::ZERO]);
        assert!(me.contains(&target, 1e-12));
        assert_eq!(me.basis_classes(1e-10), vec![VectorClass::SingularNonzero]);
        assert!(me.max_residual(&t).unwrap() < 1e-14);
    }

    #[test]
    fn two_sided_eigenspace() {
        let t = example_operator();
        let me = modified_eigenspace(&t, Bicomplex::ONE, &tol()).unwrap();
        assert_eq!(me.case, ModifiedCase::Both);
        assert_eq!(me.dim(), 3);
        assert!(!me.all_eigenvectors_singular);
        let v = BicomplexVector::from_entries(&[Bicomplex::ONE, Bicomplex::E2]);
        assert!(me.contains(&v, 1e-12));
        assert_eq!(v.classify(1e-10), VectorClass::NonSingular);

        let z = modified_eigenspace(&t, Bicomplex::ZERO, &tol()).unwrap();
        assert_eq!(z.dim(), 1);
        assert!(z.minus_basis().distance(&[ZERO, ONE]) < 1e-14);
        assert!(z.plus_basis().is_zero());

        assert_eq!(
            modified_eigenspace(&t, k(c(7.0, 0.0), c(9.0, 0.0)), &tol()).unwrap_err(),
            Error::NotModifiedEigenvalue
        );
    }

    #[test]
    fn eigenspaces_of_lambda() {
        let t = example_operator();
        assert_eq!(eigenspace(&t, ONE, &tol()).unwrap().dim(), 3);
        let zero = eigenspace(&t, ZERO, &tol()).unwrap();
        assert_eq!(zero.dim(), 1);
        assert_eq!(zero.case, ModifiedCase::OnlyMinus);
        assert_eq!(eigenspace(&BicomplexOperator::identity(3), ONE, &tol()).unwrap().dim(), 6);
        assert_eq!(eigenspace(&t, c(2.0, 0.0), &tol()).unwrap_err(), Error::NotEigenvalue);
    }

    #[test]
    fn sums_of_modified_eigenspaces() {
        let t = example_operator();
        let s = eigenspace_sum(&t, k(ONE, c(2.0, 0.0)), k(ONE, c(3.0, 0.0)), &tol()).unwrap();
        assert_eq!((s.dim_first, s.dim_second, s.sum_dim, s.intersection_dim), (1, 1, 1, 1));
        assert!(!s.is_direct);

        let s = eigenspace_sum(&t, k(ONE, c(2.0, 0.0)), k(c(7.0, 0.0), ONE), &tol()).unwrap();
        assert_eq!((s.dim_first, s.dim_second, s.sum_dim, s.intersection_dim), (1, 2, 3, 0));
        assert!(s.is_direct);

        let kap = k(ONE, c(2.0, 0.0));
        assert_eq!(eigenspace_sum(&t, kap, kap, &tol()), Err(Error::IdenticalKappa));
        assert_eq!(
            eigenspace_sum(&t, kap, k(c(7.0, 0.0), c(9.0, 0.0)), &tol()),
            Err(Error::NotModifiedEigenvalue)
        );
    }

    #[test]
    fn similarity_keeps_membership() {
        let mut rng = Rng::new(17);
        for n in 1..=5 {
            let t = rng.operator(n);
            let report = component_spectra(&t, &tol()).unwrap();
            let p = rng.unitary(n);
            let conj = |m: &crate::CMatrix| p.matmul(m).unwrap().matmul(&p.adjoint()).unwrap();
            let s = BicomplexOperator::new(conj(t.t1()), conj(t.t2())).unwrap();
            let report_s = component_spectra(&s, &tol()).unwrap();
            for &(z, _) in report.upsilon1.values() {
                let kap = k(z, rng.complex_in(10.0));
                assert_eq!(report.modified_case(kap), report_s.modified_case(kap));
            }
        }
    }
}
