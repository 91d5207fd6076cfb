//! Eigenvalues `mu_kl(lambda)` of the angular Dirac operator `A_k(lambda)`
//! on `(0, pi)` for real and complex `lambda`, massless (2-spinor) and
//! massive (4-spinor) variants.
//!
//! The operator family is `A_k(zeta, xi, nu) = A(zeta) D_k + B(zeta, xi, nu)`
//! in the parameters `zeta = a^2 Lambda/3`, `xi = a lambda`, `nu = a m`.
//! The discretization expands in the exact eigenbasis of the `a = 0`
//! operator `D_k` (half-angle Jacobi spinors), which makes `A_k(0,0,0)`
//! exactly diagonal and gives spectral accuracy for the multiplicative
//! perturbations `A(zeta)`, `B`.

mod basis;
mod discretize;
mod eigen;
mod squared;

pub use basis::SpinBasis;
pub use discretize::{AngularDiscretization, MassiveBasis, DEFAULT_N, MIN_N, NU0};
pub use eigen::{
    eigenvalue, eigenvalue_default, eigenvalue_with_derivative, mu_bound_constants,
    mu_bounds_hold, AngularEigenvalue,
};
pub use squared::{p_plus_spectrum, squared_operator_check};

use crate::error::CoreError;
use crate::Result;
use serde::Serialize;

/// Azimuthal half-integer `k` stored as `2k` (odd integer).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HalfInt(i32);

impl HalfInt {
    pub fn from_twice(twice: i32) -> Result<Self> {
        if twice % 2 == 0 {
            return Err(CoreError::Refused(format!(
                "k must be a half-integer; got 2k = {twice}"
            )));
        }
        Ok(Self(twice))
    }

    /// Nearest half-integer representation of a float (errors if not within
    /// 1e-9 of an odd multiple of 1/2).
    pub fn from_f64(k: f64) -> Result<Self> {
        let twice = (2.0 * k).round();
        if ((2.0 * k) - twice).abs() > 1e-9 || (twice as i64) % 2 == 0 {
            return Err(CoreError::Refused(format!("k = {k} is not a half-integer")));
        }
        Ok(Self(twice as i32))
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn abs(self) -> f64 {
        self.value().abs()
    }
}

/// Mode index `(k, l)` with `k` half-integer and `l` a nonzero integer whose
/// sign selects the spectral branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AngularMode {
    pub k: HalfInt,
    pub l: i32,
}

impl AngularMode {
    pub fn new(k: HalfInt, l: i32) -> Result<Self> {
        if l == 0 {
            return Err(CoreError::Refused("l must be nonzero".into()));
        }
        Ok(Self { k, l })
    }
}

/// Exact `a = 0` spectrum: `mu_kl(0,0) = sgn(l) (|k| - 1/2 + |l|)`.
pub fn exact_eigenvalue_a0(mode: AngularMode) -> f64 {
    let s = if mode.l > 0 { 1.0 } else { -1.0 };
    s * (mode.k.abs() - 0.5 + mode.l.abs() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_a0_values() {
        let k12 = HalfInt::from_f64(0.5).unwrap();
        let k32 = HalfInt::from_f64(1.5).unwrap();
        assert_eq!(exact_eigenvalue_a0(AngularMode::new(k12, 1).unwrap()), 1.0);
        assert_eq!(exact_eigenvalue_a0(AngularMode::new(k32, 2).unwrap()), 3.0);
        assert_eq!(
            exact_eigenvalue_a0(AngularMode::new(k12, -1).unwrap()),
            -1.0
        );
    }

    #[test]
    fn half_integer_guard() {
        assert!(HalfInt::from_f64(1.0).is_err());
        assert!(HalfInt::from_f64(0.5).is_ok());
        assert!(HalfInt::from_f64(-2.5).is_ok());
        assert!(AngularMode::new(HalfInt::from_f64(0.5).unwrap(), 0).is_err());
    }

    #[test]
    fn sign_symmetry() {
        let k = HalfInt::from_f64(2.5).unwrap();
        for l in 1..6 {
            let plus = exact_eigenvalue_a0(AngularMode::new(k, l).unwrap());
            let minus = exact_eigenvalue_a0(AngularMode::new(k, -l).unwrap());
            assert_eq!(plus, -minus);
        }
    }
}
