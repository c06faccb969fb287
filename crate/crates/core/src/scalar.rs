//! Single bicomplex numbers.
//!
//! The canonical storage is the idempotent pair `(minus, plus)` with
//! `x = minus*e1 + plus*e2`. The cartesian view `z1 + i2*z2` and the real view
//! `u1 + i1*u2 + i2*u3 + i1*i2*u4` are conversions only. Inside each component
//! the imaginary unit of [`Complex`] plays the role of `i1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Complex;

const I: Complex = Complex::new(0.0, 1.0);

pub(crate) fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Bicomplex {
    minus: Complex,
    plus: Complex,
}

/// Position of a bicomplex number relative to the principal ideals
/// `I1 = C2*e1` and `I2 = C2*e2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdealClass {
    Zero,
    /// Nonzero multiple of `e1` (the plus component vanishes).
    InI1,
    /// Nonzero multiple of `e2` (the minus component vanishes).
    InI2,
    NonSingular,
}

impl IdealClass {
    pub fn is_singular(self) -> bool {
        self != IdealClass::NonSingular
    }
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex::raw(Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
    pub const ONE: Bicomplex = Bicomplex::raw(Complex::new(1.0, 0.0), Complex::new(1.0, 0.0));
    pub const E1: Bicomplex = Bicomplex::raw(Complex::new(1.0, 0.0), Complex::new(0.0, 0.0));
    pub const E2: Bicomplex = Bicomplex::raw(Complex::new(0.0, 0.0), Complex::new(1.0, 0.0));

    pub(crate) const fn raw(minus: Complex, plus: Complex) -> Self {
        Bicomplex { minus, plus }
    }

    /// Builds `minus*e1 + plus*e2`.
    pub fn new(minus: Complex, plus: Complex) -> Result<Self> {
        if !is_finite(minus) || !is_finite(plus) {
            return Err(Error::NonFinite("bicomplex components"));
        }
        Ok(Bicomplex { minus, plus })
    }

    /// Embeds a complex scalar diagonally as `a*e1 + a*e2`.
    pub fn from_complex(a: Complex) -> Result<Self> {
        Self::new(a, a)
    }

    /// Converts `z1 + i2*z2` to idempotent form: `minus = z1 - i*z2`, `plus = z1 + i*z2`.
    pub fn from_cartesian(z1: Complex, z2: Complex) -> Result<Self> {
        if !is_finite(z1) || !is_finite(z2) {
            return Err(Error::NonFinite("cartesian components"));
        }
        Self::new(z1 - I * z2, z1 + I * z2)
    }

    /// Converts `u1 + i1*u2 + i2*u3 + i1*i2*u4`.
    pub fn from_real(u1: f64, u2: f64, u3: f64, u4: f64) -> Result<Self> {
        if ![u1, u2, u3, u4].iter().all(|u| u.is_finite()) {
            return Err(Error::NonFinite("real components"));
        }
        Self::from_cartesian(Complex::new(u1, u2), Complex::new(u3, u4))
    }

    pub fn minus(&self) -> Complex {
        self.minus
    }

    pub fn plus(&self) -> Complex {
        self.plus
    }

    /// Returns `(z1, z2)` with `self = z1 + i2*z2`.
    pub fn to_cartesian(&self) -> (Complex, Complex) {
        let z1 = (self.minus + self.plus) * 0.5;
        let z2 = I * (self.minus - self.plus) * 0.5;
        (z1, z2)
    }

    /// Returns `[u1, u2, u3, u4]`.
    pub fn to_real(&self) -> [f64; 4] {
        let (z1, z2) = self.to_cartesian();
        [z1.re, z1.im, z2.re, z2.im]
    }

    pub fn scale(&self, a: Complex) -> Bicomplex {
        Bicomplex::raw(a * self.minus, a * self.plus)
    }

    pub fn is_zero(&self) -> bool {
        self.minus == Complex::new(0.0, 0.0) && self.plus == Complex::new(0.0, 0.0)
    }

    /// Threshold below which a component counts as vanishing.
    pub fn threshold(&self, tol: f64) -> f64 {
        tol * self.minus.norm().max(self.plus.norm()).max(1.0)
    }

    pub fn classify(&self, tol: f64) -> IdealClass {
        let t = self.threshold(tol);
        match (self.minus.norm() <= t, self.plus.norm() <= t) {
            (true, true) => IdealClass::Zero,
            (false, true) => IdealClass::InI1,
            (true, false) => IdealClass::InI2,
            (false, false) => IdealClass::NonSingular,
        }
    }

    pub fn inverse(&self, tol: f64) -> Result<Bicomplex> {
        if self.classify(tol).is_singular() {
            return Err(Error::SingularElement);
        }
        Ok(Bicomplex::raw(self.minus.inv(), self.plus.inv()))
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::raw(self.minus + rhs.minus, self.plus + rhs.plus)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::raw(self.minus - rhs.minus, self.plus - rhs.plus)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex::raw(-self.minus, -self.plus)
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::raw(self.minus * rhs.minus, self.plus * rhs.plus)
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})e1 + ({})e2", self.minus, self.plus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn bc(m: Complex, p: Complex) -> Bicomplex {
        Bicomplex::new(m, p).unwrap()
    }

    // schoolbook product of z1 + i2 z2 and w1 + i2 w2
    fn cartesian_mul(a: (Complex, Complex), b: (Complex, Complex)) -> (Complex, Complex) {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
    }

    #[test]
    fn cartesian_conversions() {
        let e1 = Bicomplex::from_cartesian(c(0.5, 0.0), c(0.0, 0.5)).unwrap();
        assert_eq!(e1, Bicomplex::E1);
        assert_eq!(Bicomplex::from_cartesian(c(1.0, 0.0), c(0.0, 0.0)).unwrap(), Bicomplex::ONE);

        let i2 = Bicomplex::from_cartesian(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(i2, bc(c(0.0, -1.0), c(0.0, 1.0)));
        // i2 = -i e1 + i e2 expands back to z2 = 1
        let expanded = Bicomplex::E1.scale(c(0.0, -1.0)) + Bicomplex::E2.scale(c(0.0, 1.0));
        assert_eq!(expanded.to_cartesian(), (c(0.0, 0.0), c(1.0, 0.0)));

        assert_eq!(Bicomplex::E1.to_cartesian(), (c(0.5, 0.0), c(0.0, 0.5)));
        assert_eq!(Bicomplex::ONE.to_cartesian(), (c(1.0, 0.0), c(0.0, 0.0)));
        assert_eq!(i2.to_cartesian(), (c(0.0, 0.0), c(1.0, 0.0)));
    }

    #[test]
    fn real_form() {
        assert_eq!(Bicomplex::from_real(1.0, 0.0, 0.0, 0.0).unwrap(), Bicomplex::ONE);
        assert_eq!(Bicomplex::from_real(0.5, 0.0, 0.0, 0.5).unwrap(), Bicomplex::E1);
        assert_eq!(
            Bicomplex::from_real(0.0, 1.0, 0.0, 0.0).unwrap(),
            bc(c(0.0, 1.0), c(0.0, 1.0))
        );
        assert_eq!(Bicomplex::E1.to_real(), [0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn non_finite_rejected() {
        assert_eq!(
            Bicomplex::from_real(f64::NAN, 0.0, 0.0, 0.0),
            Err(Error::NonFinite("real components"))
        );
        assert!(Bicomplex::from_cartesian(c(f64::INFINITY, 0.0), c(0.0, 0.0)).is_err());
        assert!(Bicomplex::new(c(0.0, 0.0), c(0.0, f64::NEG_INFINITY)).is_err());
    }

    #[test]
    fn idempotent_identities() {
        assert_eq!(Bicomplex::E1 * Bicomplex::E2, Bicomplex::ZERO);
        assert_eq!(Bicomplex::E2 * Bicomplex::E1, Bicomplex::ZERO);
        assert_eq!(Bicomplex::E1 + Bicomplex::E2, Bicomplex::ONE);
        assert_eq!(Bicomplex::E1 * Bicomplex::E1, Bicomplex::E1);
        assert_eq!(-Bicomplex::E1 + Bicomplex::E1, Bicomplex::ZERO);
    }

    #[test]
    fn product_agrees_with_cartesian_route() {
        let x = bc(c(2.0, 0.0), c(3.0, 0.0));
        let y = bc(c(5.0, 0.0), c(7.0, 0.0));
        assert_eq!(x * y, bc(c(10.0, 0.0), c(21.0, 0.0)));
        let (z1, z2) = cartesian_mul(x.to_cartesian(), y.to_cartesian());
        let via = Bicomplex::from_cartesian(z1, z2).unwrap();
        assert!((via.minus() - c(10.0, 0.0)).norm() < 1e-14);
        assert!((via.plus() - c(21.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn scalar_action() {
        let x = bc(c(1.5, -2.0), c(0.25, 4.0));
        assert_eq!(x.scale(c(0.0, 0.0)), Bicomplex::ZERO);
        assert_eq!(x.scale(c(1.0, 0.0)), x);
        let a = c(0.0, 1.0);
        assert_eq!(Bicomplex::E1.scale(a), bc(a, c(0.0, 0.0)));
        let embedded = Bicomplex::from_cartesian(a, c(0.0, 0.0)).unwrap();
        assert_eq!(embedded * Bicomplex::E1, Bicomplex::E1.scale(a));
    }

    #[test]
    fn inverse_cases() {
        let tol = crate::DEFAULT_SINGULAR_TOL;
        assert_eq!(Bicomplex::ONE.inverse(tol).unwrap(), Bicomplex::ONE);
        assert_eq!(Bicomplex::E1.inverse(tol), Err(Error::SingularElement));

        let x = Bicomplex::from_cartesian(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(x, bc(c(1.0, -1.0), c(1.0, 1.0)));
        let inv = x.inverse(tol).unwrap();
        let prod = x * inv;
        assert!((prod.minus() - c(1.0, 0.0)).norm() < 1e-14);
        assert!((prod.plus() - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn classification() {
        let tol = crate::DEFAULT_SINGULAR_TOL;
        assert_eq!(Bicomplex::E1.classify(tol), IdealClass::InI1);
        assert_eq!(Bicomplex::E2.classify(tol), IdealClass::InI2);
        assert_eq!(Bicomplex::ZERO.classify(tol), IdealClass::Zero);
        assert_eq!(Bicomplex::ONE.classify(tol), IdealClass::NonSingular);

        let (z1, z2) = (c(1.0, 0.0), c(0.0, 1.0));
        let x = Bicomplex::from_cartesian(z1, z2).unwrap();
        assert_eq!(x, bc(c(2.0, 0.0), c(0.0, 0.0)));
        assert_eq!(x.classify(tol), IdealClass::InI1);
        assert_eq!((z1 * z1 + z2 * z2).norm(), 0.0);

        // tiny components below the floor of 1 count as zero
        let tiny = bc(c(1e-12, 0.0), c(0.0, 1e-12));
        assert_eq!(tiny.classify(tol), IdealClass::Zero);
        // a relatively small plus component on a large number
        let big = bc(c(1e6, 0.0), c(1e-5, 0.0));
        assert_eq!(big.classify(tol), IdealClass::InI1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn complex() -> impl Strategy<Value = Complex> {
            (-1e3..1e3f64, -1e3..1e3f64).prop_map(|(re, im)| Complex::new(re, im))
        }

        fn bicomplex() -> impl Strategy<Value = Bicomplex> {
            (complex(), complex()).prop_map(|(m, p)| Bicomplex::new(m, p).unwrap())
        }

        fn ulps(a: f64, b: f64) -> u64 {
            if a == b {
                return 0;
            }
            if a.signum() != b.signum() {
                return u64::MAX;
            }
            (a.to_bits() as i64 - b.to_bits() as i64).unsigned_abs()
        }

        proptest! {
            #[test]
            fn cartesian_multiplication_agrees(x in bicomplex(), y in bicomplex()) {
                let (z1, z2) = cartesian_mul(x.to_cartesian(), y.to_cartesian());
                let via = Bicomplex::from_cartesian(z1, z2).unwrap();
                let direct = x * y;
                let scale = 1.0 + x.minus().norm().max(x.plus().norm()) * y.minus().norm().max(y.plus().norm());
                prop_assert!((via.minus() - direct.minus()).norm() <= 1e-12 * scale);
                prop_assert!((via.plus() - direct.plus()).norm() <= 1e-12 * scale);
            }

            #[test]
            fn ring_axioms(x in bicomplex(), y in bicomplex(), z in bicomplex()) {
                prop_assert_eq!(x * y, y * x);
                prop_assert_eq!(x + y, y + x);
                let lhs = (x * y) * z;
                let rhs = x * (y * z);
                let s = 1e-12 * (1.0 + lhs.minus().norm().max(lhs.plus().norm()));
                prop_assert!((lhs - rhs).minus().norm() <= s && (lhs - rhs).plus().norm() <= s);
                let d = x * (y + z) - (x * y + x * z);
                let s = 1e-12 * 1e6;
                prop_assert!(d.minus().norm() <= s && d.plus().norm() <= s);
            }

            #[test]
            fn round_trip_within_two_ulp(x in bicomplex()) {
                let (z1, z2) = x.to_cartesian();
                let back = Bicomplex::from_cartesian(z1, z2).unwrap();
                // cancellation makes ulp distance meaningless near zero; compare against the magnitude
                let mag = x.minus().norm().max(x.plus().norm());
                for (a, b) in [(back.minus().re, x.minus().re), (back.minus().im, x.minus().im),
                               (back.plus().re, x.plus().re), (back.plus().im, x.plus().im)] {
                    prop_assert!(ulps(a, b) <= 2 || (a - b).abs() <= 2.0 * f64::EPSILON * mag);
                }
            }

            #[test]
            fn inverse_iff_nonsingular(x in bicomplex()) {
                let tol = crate::DEFAULT_SINGULAR_TOL;
                match x.inverse(tol) {
                    Ok(inv) => {
                        prop_assert_eq!(x.classify(tol), IdealClass::NonSingular);
                        let p = x * inv;
                        prop_assert!((p.minus() - Complex::new(1.0, 0.0)).norm() <= 1e-12);
                        prop_assert!((p.plus() - Complex::new(1.0, 0.0)).norm() <= 1e-12);
                    }
                    Err(_) => prop_assert!(x.classify(tol).is_singular()),
                }
            }
        }
    }
}
