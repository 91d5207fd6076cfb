//! Horizon roots of the quartic `Delta_r`, surface gravities, and the
//! horizon-limit coefficients of `c(x,k)`.

use super::BlackHoleParams;
use crate::error::CoreError;
use crate::numeric::eig::{eigenvalues, CMat};
use crate::Result;
use num_complex::Complex64;

/// Which horizon an expansion is anchored at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HorizonSide {
    /// Event horizon `r_-` (spatial infinity `x -> -infinity`).
    Event,
    /// Cosmological horizon `r_+` (`x -> +infinity`).
    Cosmological,
}

impl HorizonSide {
    pub fn sign(self) -> f64 {
        match self {
            HorizonSide::Event => -1.0,
            HorizonSide::Cosmological => 1.0,
        }
    }
}

/// The four real roots `r_n < 0 < r_c < r_- < r_+` of `Delta_r` with their
/// surface gravities `kappa_sigma = Delta_r'(r_sigma) / (2 (r_sigma^2+a^2))`.
#[derive(Debug, Clone)]
pub struct HorizonSet {
    pub params: BlackHoleParams,
    pub r_neg: f64,
    pub r_cauchy: f64,
    pub r_event: f64,
    pub r_cosmo: f64,
    pub kappa_neg: f64,
    pub kappa_cauchy: f64,
    pub kappa_event: f64,
    pub kappa_cosmo: f64,
}

impl HorizonSet {
    /// Roots via companion-matrix eigenvalues plus one Newton polish each.
    pub fn compute(params: &BlackHoleParams) -> Result<Self> {
        params.require_admissible()?;
        let c = params.delta_r_coeffs();
        let mut roots = quartic_roots(c)?;
        // Newton polish
        for r in roots.iter_mut() {
            for _ in 0..3 {
                let f = params.delta_r(*r);
                let d = params.delta_r_prime(*r);
                if d.abs() < 1e-300 {
                    break;
                }
                *r -= f / d;
            }
        }
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let [rn, rc, rm, rp] = roots;
        if !(rn < 0.0 && rc > 0.0 && rc < rm && rm < rp) {
            return Err(CoreError::DegenerateHorizons(format!(
                "unexpected ordering {roots:?}"
            )));
        }
        let min_gap = (rc - rn).min(rm - rc).min(rp - rm);
        if min_gap < 1e-10 * rp.abs() {
            return Err(CoreError::DegenerateHorizons(format!(
                "near-multiple roots, min gap {min_gap:.3e}"
            )));
        }
        let kap = |r: f64| params.delta_r_prime(r) / (2.0 * (r * r + params.spin * params.spin));
        Ok(Self {
            params: *params,
            r_neg: rn,
            r_cauchy: rc,
            r_event: rm,
            r_cosmo: rp,
            kappa_neg: kap(rn),
            kappa_cauchy: kap(rc),
            kappa_event: kap(rm),
            kappa_cosmo: kap(rp),
        })
    }

    pub fn radius(&self, side: HorizonSide) -> f64 {
        match side {
            HorizonSide::Event => self.r_event,
            HorizonSide::Cosmological => self.r_cosmo,
        }
    }

    /// `kappa_-` (> 0) or `kappa_+` (< 0).
    pub fn kappa(&self, side: HorizonSide) -> f64 {
        match side {
            HorizonSide::Event => self.kappa_event,
            HorizonSide::Cosmological => self.kappa_cosmo,
        }
    }

    /// `Omega_pm(k) = (a E k + q Q r_pm) / (r_pm^2 + a^2)`.
    pub fn omega(&self, side: HorizonSide, k: f64) -> f64 {
        let p = &self.params;
        let r = self.radius(side);
        (p.spin * p.big_e() * k + p.field_charge * p.charge * r) / (r * r + p.spin * p.spin)
    }

    /// Roots in ascending order.
    pub fn roots(&self) -> [f64; 4] {
        [self.r_neg, self.r_cauchy, self.r_event, self.r_cosmo]
    }

    pub fn kappas(&self) -> [f64; 4] {
        [
            self.kappa_neg,
            self.kappa_cauchy,
            self.kappa_event,
            self.kappa_cosmo,
        ]
    }

    /// Width of the exterior region.
    pub fn gap(&self) -> f64 {
        self.r_cosmo - self.r_event
    }
}

/// Real roots of a quartic with real coefficients (descending order input),
/// via the companion matrix of the monic polynomial.
fn quartic_roots(c: [f64; 5]) -> Result<[f64; 4]> {
    let lead = c[0];
    if lead == 0.0 {
        return Err(CoreError::DegenerateHorizons("leading coefficient 0".into()));
    }
    let b: Vec<f64> = c[1..].iter().map(|x| x / lead).collect();
    let mut m = CMat::zeros(4);
    for i in 0..4 {
        *m.at_mut(0, i) = Complex64::new(-b[i], 0.0);
    }
    for i in 1..4 {
        *m.at_mut(i, i - 1) = Complex64::new(1.0, 0.0);
    }
    let eigs = eigenvalues(&m);
    let mut out = [0.0f64; 4];
    let scale: f64 = eigs.iter().map(|e| e.norm()).fold(1.0, f64::max);
    for (i, e) in eigs.iter().enumerate() {
        if e.im.abs() > 1e-8 * scale {
            return Err(CoreError::DegenerateHorizons(format!(
                "complex root {e} (near-extremal)"
            )));
        }
        out[i] = e.re;
    }
    Ok(out)
}
