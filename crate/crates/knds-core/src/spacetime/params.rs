//! Physical parameter record and the admissibility test for the horizon
//! structure (three positive simple roots plus one negative root).

use crate::error::CoreError;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Bound on `a^2 Lambda / 3` below which the discriminant of the critical
/// mass pair stays real for all charges in range: `7 - 4 sqrt(3)`.
pub const ROTATION_BOUND: f64 = 7.0 - 4.0 * 1.732_050_807_568_877_2;

/// Parameters of the black hole plus the Dirac field (geometric units,
/// `G = c = 1`; `M` is a free length scale).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlackHoleParams {
    /// Black-hole mass `M > 0`.
    pub mass: f64,
    /// Electric charge `Q` of the black hole.
    pub charge: f64,
    /// Angular momentum per unit mass `a`.
    pub spin: f64,
    /// Cosmological constant `Lambda > 0`.
    pub lambda: f64,
    /// Charge of the Dirac field.
    pub field_charge: f64,
    /// Mass of the Dirac field (non-negative).
    pub field_mass: f64,
}

/// Diagnostics of the admissibility test.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub rotation_ratio: f64,
    pub rotation_bound: f64,
    pub m_crit_minus: f64,
    pub m_crit_plus: f64,
    /// Name of the first violated inequality, empty when admissible.
    pub violated: &'static str,
}

impl BlackHoleParams {
    pub fn new(mass: f64, charge: f64, spin: f64, lambda: f64) -> Self {
        Self {
            mass,
            charge,
            spin,
            lambda,
            field_charge: 0.0,
            field_mass: 0.0,
        }
    }

    pub fn with_field(mut self, field_charge: f64, field_mass: f64) -> Self {
        self.field_charge = field_charge;
        self.field_mass = field_mass;
        self
    }

    /// `E = 1 + a^2 Lambda / 3 >= 1`.
    pub fn big_e(&self) -> f64 {
        1.0 + self.spin * self.spin * self.lambda / 3.0
    }

    /// `Delta_r(r) = (r^2 + a^2)(1 - Lambda r^2 / 3) - 2 M r + Q^2`.
    pub fn delta_r(&self, r: f64) -> f64 {
        (r * r + self.spin * self.spin) * (1.0 - self.lambda * r * r / 3.0) - 2.0 * self.mass * r
            + self.charge * self.charge
    }

    pub fn delta_r_prime(&self, r: f64) -> f64 {
        2.0 * r * (1.0 - self.lambda * r * r / 3.0)
            - (r * r + self.spin * self.spin) * 2.0 * self.lambda * r / 3.0
            - 2.0 * self.mass
    }

    /// Quartic coefficients of `Delta_r` in descending powers
    /// `[-Lambda/3, 0, 1 - a^2 Lambda/3, -2M, a^2 + Q^2]`.
    pub fn delta_r_coeffs(&self) -> [f64; 5] {
        [
            -self.lambda / 3.0,
            0.0,
            1.0 - self.spin * self.spin * self.lambda / 3.0,
            -2.0 * self.mass,
            self.spin * self.spin + self.charge * self.charge,
        ]
    }

    /// `Delta_theta(theta) = 1 + (a^2 Lambda / 3) cos^2 theta`.
    pub fn delta_theta(&self, theta: f64) -> f64 {
        1.0 + self.spin * self.spin * self.lambda / 3.0 * theta.cos().powi(2)
    }

    /// `F(r) = 1 - 2M/r + Q^2/r^2 - Lambda r^2/3` (the `a = 0` lapse).
    pub fn lapse_f(&self, r: f64) -> f64 {
        1.0 - 2.0 * self.mass / r + self.charge * self.charge / (r * r)
            - self.lambda * r * r / 3.0
    }

    pub fn lapse_f_prime(&self, r: f64) -> f64 {
        2.0 * self.mass / (r * r) - 2.0 * self.charge * self.charge / (r * r * r)
            - 2.0 * self.lambda * r / 3.0
    }

    /// Critical mass pair `(M_crit^-, M_crit^+)`. A double root of
    /// `Delta_r` occurs exactly when `Lambda r^4 - E_- r^2 + (a^2+Q^2) = 0`
    /// together with `Delta_r'(r) = 0`; eliminating `r` gives
    /// `M_crit^+- = r_+- (E_- - (2 Lambda/3) r_+-^2)` with
    /// `r_+-^2 = (E_- +- sqrt(E_-^2 - F)) / (2 Lambda)`,
    /// `E_- = 1 - a^2 Lambda/3`, `F = 4 Lambda (a^2 + Q^2)`.
    pub fn critical_masses(&self) -> Option<(f64, f64)> {
        let em = 1.0 - self.spin * self.spin * self.lambda / 3.0;
        let f = 4.0 * self.lambda * (self.spin * self.spin + self.charge * self.charge);
        let disc = em * em - f;
        if disc < 0.0 {
            return None;
        }
        let s = disc.sqrt();
        let m_of = |r2: f64| {
            if r2 <= 0.0 {
                return 0.0;
            }
            let r = r2.sqrt();
            r * (em - 2.0 * self.lambda / 3.0 * r2)
        };
        let r2p = (em + s) / (2.0 * self.lambda);
        let r2m = (em - s) / (2.0 * self.lambda);
        Some((m_of(r2m), m_of(r2p)))
    }

    /// Admissibility verdict with diagnostics.
    pub fn validate(&self) -> Result<AdmissibilityReport> {
        if self.mass <= 0.0 {
            return Err(CoreError::Nonphysical(format!("M = {} <= 0", self.mass)));
        }
        if self.lambda <= 0.0 {
            return Err(CoreError::Nonphysical(format!(
                "Lambda = {} <= 0",
                self.lambda
            )));
        }
        if self.field_mass < 0.0 {
            return Err(CoreError::Nonphysical(format!(
                "field mass = {} < 0",
                self.field_mass
            )));
        }
        let ratio = self.spin * self.spin * self.lambda / 3.0;
        if ratio > ROTATION_BOUND {
            return Ok(AdmissibilityReport {
                admissible: false,
                rotation_ratio: ratio,
                rotation_bound: ROTATION_BOUND,
                m_crit_minus: f64::NAN,
                m_crit_plus: f64::NAN,
                violated: "a^2 Lambda / 3 <= 7 - 4 sqrt(3)",
            });
        }
        let Some((m_minus, m_plus)) = self.critical_masses() else {
            return Ok(AdmissibilityReport {
                admissible: false,
                rotation_ratio: ratio,
                rotation_bound: ROTATION_BOUND,
                m_crit_minus: f64::NAN,
                m_crit_plus: f64::NAN,
                violated: "E_-^2 - 4 Lambda (a^2 + Q^2) >= 0",
            });
        };
        let ok = m_minus < self.mass && self.mass < m_plus;
        Ok(AdmissibilityReport {
            admissible: ok,
            rotation_ratio: ratio,
            rotation_bound: ROTATION_BOUND,
            m_crit_minus: m_minus,
            m_crit_plus: m_plus,
            violated: if ok { "" } else { "M_crit^- < M < M_crit^+" },
        })
    }

    /// Validate and error out unless admissible.
    pub fn require_admissible(&self) -> Result<AdmissibilityReport> {
        let rep = self.validate()?;
        if !rep.admissible {
            return Err(CoreError::Inadmissible(format!(
                "{} (M_crit^- = {:.6e}, M = {:.6e}, M_crit^+ = {:.6e}, a^2 Lambda/3 = {:.6e})",
                rep.violated, rep.m_crit_minus, self.mass, rep.m_crit_plus, rep.rotation_ratio
            )));
        }
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_set_is_admissible() {
        let p = BlackHoleParams::new(1.0, 0.0, 0.0, 0.04);
        let rep = p.validate().unwrap();
        assert!(rep.admissible, "{rep:?}");
        // Q = a = 0: M_crit^- = 0, M_crit^+ = 1/(3 sqrt(Lambda))
        assert!(rep.m_crit_minus.abs() < 1e-15);
        assert!((rep.m_crit_plus - 1.0 / (3.0 * 0.04f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn rotation_bound_rejected() {
        // a^2 Lambda / 3 = 0.08 > 7 - 4 sqrt(3)
        let a = (0.08f64 * 3.0 / 0.04).sqrt();
        let p = BlackHoleParams::new(1.0, 0.0, a, 0.04);
        let rep = p.validate().unwrap();
        assert!(!rep.admissible);
        assert_eq!(rep.violated, "a^2 Lambda / 3 <= 7 - 4 sqrt(3)");
    }

    #[test]
    fn nonphysical_rejected_with_distinct_error() {
        assert!(matches!(
            BlackHoleParams::new(-1.0, 0.0, 0.0, 0.04).validate(),
            Err(CoreError::Nonphysical(_))
        ));
        assert!(matches!(
            BlackHoleParams::new(1.0, 0.0, 0.0, -0.1).validate(),
            Err(CoreError::Nonphysical(_))
        ));
    }

    #[test]
    fn critical_mass_bracket_matches_root_structure() {
        // a touch below M_crit^+ the quartic has 4 real roots; above, 2.
        let p0 = BlackHoleParams::new(1.0, 0.2, 0.05, 0.06);
        let (_, mp) = p0.critical_masses().unwrap();
        let count_real = |m: f64| {
            let p = BlackHoleParams::new(m, 0.2, 0.05, 0.06);
            // sample sign changes of Delta_r on a fine grid
            let mut roots = 0;
            let mut prev = p.delta_r(-30.0);
            let mut r = -30.0;
            while r < 30.0 {
                r += 1e-3;
                let v = p.delta_r(r);
                if prev.signum() != v.signum() {
                    roots += 1;
                }
                prev = v;
            }
            roots
        };
        assert_eq!(count_real(mp * 0.995), 4);
        assert_eq!(count_real(mp * 1.005), 2);
    }

    #[test]
    fn mass_above_critical_inadmissible() {
        let p = BlackHoleParams::new(2.0, 0.0, 0.0, 0.04); // M_crit^+ ~ 1.667
        let rep = p.validate().unwrap();
        assert!(!rep.admissible);
        assert_eq!(rep.violated, "M_crit^- < M < M_crit^+");
    }

    #[test]
    fn big_e_at_least_one() {
        let p = BlackHoleParams::new(1.0, 0.1, 0.2, 0.04);
        assert!(p.big_e() >= 1.0);
    }
}
