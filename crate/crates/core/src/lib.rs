//! Bicomplex numbers and the spectral theory of operators `T = e1*T1 + e2*T2`.
//!
//! A bicomplex number `u1 + i1*u2 + i2*u3 + i1*i2*u4` is stored by its
//! idempotent components `(minus, plus)`, so that `x = minus*e1 + plus*e2`
//! with `e1 = (1 + i1*i2)/2` and `e2 = (1 - i1*i2)/2`. Every algebraic
//! operation is componentwise in that basis, and the same split carries over
//! to vectors, matrices and operators on `C2^n`.
//!
//! Modules:
//!
//! * [`scalar`]: single bicomplex numbers, conversions, zero-divisor tests.
//! * [`linalg`]: dense complex linear algebra (determinant, nullspace,
//!   Hessenberg/QR eigensolver) that realizes every componentwise computation.
//! * [`operator`]: vectors, matrices and operators over `C2`, kernel/image.
//! * [`spectra`]: eigenvalues, modified eigenvalues and their eigenspaces.
//! * [`oracle`]: structure-blind reference computations used for checking.
//! * [`verify`]: seeded theorem suites comparing the two routes.
//! * [`io`]: JSON encodings shared by the CLI and tests.

pub mod error;
pub mod io;
pub mod linalg;
pub mod operator;
pub mod oracle;
pub mod scalar;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CSubspace, EigenDecomposition, EigenSet};
pub use num_complex::Complex64 as Complex;
pub use operator::{BicomplexMatrix, BicomplexOperator, BicomplexVector, VectorClass};
pub use scalar::{Bicomplex, IdealClass};
pub use spectra::{ModifiedCase, ModifiedEigenspace, SpectrumReport};

/// Default relative tolerance for singularity and rank decisions.
pub const DEFAULT_SINGULAR_TOL: f64 = 1e-10;
/// Default relative tolerance for eigenvalue clustering and membership.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// The two tolerance knobs used throughout the crate.
///
/// `singular` scales rank and determinant thresholds; `cluster` is scaled by
/// `1 + ||A||` to decide when two eigenvalues coincide and whether a scalar
/// belongs to a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    pub singular: f64,
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            singular: DEFAULT_SINGULAR_TOL,
            cluster: DEFAULT_CLUSTER_TOL,
        }
    }
}

impl Tolerances {
    pub fn new(singular: f64, cluster: f64) -> Result<Self> {
        if !(singular > 0.0 && singular.is_finite()) {
            return Err(Error::InvalidTolerance(singular));
        }
        if !(cluster > 0.0 && cluster.is_finite()) {
            return Err(Error::InvalidTolerance(cluster));
        }
        Ok(Tolerances { singular, cluster })
    }
}
