//! The Regge-Wheeler coordinate `x` with `dx/dr = (r^2+a^2)/Delta_r`,
//! in the closed log form
//!
//! `x(r) = sum_sigma ln|r - r_sigma| / (2 kappa_sigma) + C`,
//!
//! anchored so that `x(r_0) = 0` at the photon-sphere radius, and its
//! inverse by safeguarded Newton.

use super::{HorizonSet, HorizonSide};
use crate::error::CoreError;
use crate::Result;
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct ReggeWheelerMap {
    pub horizons: HorizonSet,
    /// Anchor radius where `x = 0` (the photon-sphere radius `r_0`).
    pub r_anchor: f64,
    /// Integration constant making `x(r_anchor) = 0`.
    pub shift: f64,
    /// Validity window: `|x| >= x0` implies `r` within 5% of a horizon.
    pub x0: f64,
}

impl ReggeWheelerMap {
    /// Build the map anchored at `r_anchor` (expected inside the exterior).
    pub fn new(horizons: HorizonSet, r_anchor: f64) -> Result<Self> {
        if !(horizons.r_event < r_anchor && r_anchor < horizons.r_cosmo) {
            return Err(CoreError::Domain(format!(
                "anchor {r_anchor} outside ({}, {})",
                horizons.r_event, horizons.r_cosmo
            )));
        }
        let mut map = Self {
            horizons,
            r_anchor,
            shift: 0.0,
            x0: 0.0,
        };
        map.shift = -map.x_unanchored(r_anchor);
        // X_0: smallest value such that |r(x) - r_pm| < 0.05 (r_+ - r_-)
        // for +-x > X_0.
        let gap = map.horizons.gap();
        let xp = map.x(map.horizons.r_cosmo - 0.05 * gap)?;
        let xm = map.x(map.horizons.r_event + 0.05 * gap)?;
        map.x0 = xp.abs().max(xm.abs());
        Ok(map)
    }

    fn x_unanchored(&self, r: f64) -> f64 {
        let h = &self.horizons;
        ((r - h.r_event).ln() / (2.0 * h.kappa_event))
            + ((h.r_cosmo - r).ln() / (2.0 * h.kappa_cosmo))
            + ((r - h.r_cauchy).ln() / (2.0 * h.kappa_cauchy))
            + ((r - h.r_neg).ln() / (2.0 * h.kappa_neg))
            + self.shift
    }

    /// Forward map `x(r)`; domain `(r_-, r_+)`.
    pub fn x(&self, r: f64) -> Result<f64> {
        if !(self.horizons.r_event < r && r < self.horizons.r_cosmo) {
            return Err(CoreError::Domain(format!(
                "r = {r} outside exterior ({}, {})",
                self.horizons.r_event, self.horizons.r_cosmo
            )));
        }
        Ok(self.x_unanchored(r))
    }

    /// `dx/dr = (r^2 + a^2)/Delta_r`.
    pub fn dx_dr(&self, r: f64) -> f64 {
        let p = &self.horizons.params;
        (r * r + p.spin * p.spin) / p.delta_r(r)
    }

    /// Inverse map by safeguarded Newton with bisection fallback.
    pub fn r(&self, x: f64) -> Result<f64> {
        let h = &self.horizons;
        let mut lo = h.r_event;
        let mut hi = h.r_cosmo;
        // Newton from the anchor; dx/dr > 0 so x(r) is strictly increasing.
        let mut r = self.r_initial_guess(x);
        for _ in 0..200 {
            let fx = self.x_unanchored(r) - x;
            if fx.abs() < 1e-15 * (1.0 + x.abs()) {
                return Ok(r);
            }
            if fx > 0.0 {
                hi = hi.min(r);
            } else {
                lo = lo.max(r);
            }
            let d = self.dx_dr(r);
            let mut rn = r - fx / d;
            if !(lo < rn && rn < hi) {
                rn = 0.5 * (lo + hi);
            }
            if (rn - r).abs() < 1e-16 * r.abs() {
                return Ok(rn);
            }
            r = rn;
        }
        Ok(r)
    }

    // Horizon-asymptotic seed: x ~ ln(|r - r_pm| )/(2 kappa_pm) + regular.
    fn r_initial_guess(&self, x: f64) -> f64 {
        let h = &self.horizons;
        if x > self.x0 {
            let g = self.x_unanchored(h.r_cosmo - 0.05 * h.gap())
                - (0.05 * h.gap()).ln() / (2.0 * h.kappa_cosmo);
            h.r_cosmo - (2.0 * h.kappa_cosmo * (x - g)).exp()
        } else if x < -self.x0 {
            let g = self.x_unanchored(h.r_event + 0.05 * h.gap())
                - (0.05 * h.gap()).ln() / (2.0 * h.kappa_event);
            h.r_event + (2.0 * h.kappa_event * (x - g)).exp()
        } else {
            self.r_anchor
        }
    }

    /// The regular part `G_pm(r) = x(r) - ln(+-(r_pm - r))/(2 kappa_pm)`,
    /// analytic near `r_pm`, continued to complex `r`.
    pub fn g_regular(&self, side: HorizonSide, r: Complex64) -> Complex64 {
        let h = &self.horizons;
        let ln = |z: Complex64| z.ln();
        match side {
            HorizonSide::Cosmological => {
                ln(r - h.r_event) / (2.0 * h.kappa_event)
                    + ln(r - h.r_cauchy) / (2.0 * h.kappa_cauchy)
                    + ln(r - h.r_neg) / (2.0 * h.kappa_neg)
                    + self.shift
            }
            HorizonSide::Event => {
                ln(Complex64::new(h.r_cosmo, 0.0) - r) / (2.0 * h.kappa_cosmo)
                    + ln(r - h.r_cauchy) / (2.0 * h.kappa_cauchy)
                    + ln(r - h.r_neg) / (2.0 * h.kappa_neg)
                    + self.shift
            }
        }
    }

    /// Analytic continuation `r(w)` of the horizon-local inverse map, where
    /// `w = exp(kappa_pm x)`; solves `r_pm -+ (r_pm - r) = ...` via the
    /// fixed point `r = r_pm -+ w^2 exp(-2 kappa_pm G_pm(r))`.
    pub fn r_of_w(&self, side: HorizonSide, w: Complex64) -> Result<Complex64> {
        let h = &self.horizons;
        let (rs, kappa, sgn) = match side {
            HorizonSide::Cosmological => (h.r_cosmo, h.kappa_cosmo, 1.0),
            HorizonSide::Event => (h.r_event, h.kappa_event, -1.0),
        };
        let rs_c = Complex64::new(rs, 0.0);
        let mut r = rs_c;
        let mut correction = Complex64::new(0.0, 0.0);
        for it in 0..400 {
            correction = w * w * (-2.0 * kappa * self.g_regular(side, r)).exp();
            let rn = rs_c - sgn * correction;
            if (rn - r).norm() <= 1e-16 * (1.0 + r.norm()) {
                return Ok(rn);
            }
            if it > 50 && correction.norm() > 0.5 * h.gap() {
                break;
            }
            r = rn;
        }
        if correction.norm() > 0.25 * h.gap() {
            return Err(CoreError::RadiusExceeded(w.norm()));
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiclassical::PhotonSphere;
    use crate::spacetime::BlackHoleParams;

    fn map() -> ReggeWheelerMap {
        let p = BlackHoleParams::new(1.0, 0.3, 0.0, 0.04);
        let h = HorizonSet::compute(&p).unwrap();
        let ps = PhotonSphere::compute(&p).unwrap();
        ReggeWheelerMap::new(h, ps.r0).unwrap()
    }

    #[test]
    fn anchored_at_photon_sphere() {
        let m = map();
        assert!(m.x(m.r_anchor).unwrap().abs() < 1e-14);
    }

    #[test]
    fn diverges_at_horizons() {
        let m = map();
        let h = &m.horizons;
        assert!(m.x(h.r_event + 1e-9 * h.gap()).unwrap() < -8.0);
        assert!(m.x(h.r_cosmo - 1e-9 * h.gap()).unwrap() > 8.0);
    }

    #[test]
    fn inverse_round_trip_on_grid() {
        let m = map();
        let h = &m.horizons;
        for i in 1..100 {
            let r = h.r_event + h.gap() * i as f64 / 100.0;
            let x = m.x(r).unwrap();
            let rr = m.r(x).unwrap();
            assert!((rr - r).abs() < 1e-12 * r.max(1.0), "r={r} rr={rr}");
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let m = map();
        let h = &m.horizons;
        for i in 1..20 {
            let r = h.r_event + h.gap() * (0.05 + 0.9 * i as f64 / 20.0);
            let dr = 1e-6;
            let fd = (m.x(r + dr).unwrap() - m.x(r - dr).unwrap()) / (2.0 * dr);
            let an = m.dx_dr(r);
            assert!(((fd - an) / an).abs() < 1e-6, "{fd} vs {an}");
        }
    }

    #[test]
    fn strictly_increasing() {
        let m = map();
        let h = &m.horizons;
        let mut prev = f64::NEG_INFINITY;
        for i in 1..200 {
            let r = h.r_event + h.gap() * i as f64 / 200.0;
            let x = m.x(r).unwrap();
            assert!(x > prev);
            prev = x;
        }
    }

    #[test]
    fn domain_error_outside_exterior() {
        let m = map();
        assert!(matches!(m.x(0.5), Err(CoreError::Domain(_))));
        assert!(matches!(m.x(20.0), Err(CoreError::Domain(_))));
    }

    #[test]
    fn analytic_continuation_agrees_with_real_inverse() {
        let m = map();
        let h = m.horizons.clone();
        for side in [HorizonSide::Cosmological, HorizonSide::Event] {
            let kappa = h.kappa(side);
            for dx in [0.0, 1.0, 3.0] {
                let x = (m.x0 + dx) * side.sign();
                let w = Complex64::new((kappa * x).exp(), 0.0);
                let r_w = m.r_of_w(side, w).unwrap();
                let r_x = m.r(x).unwrap();
                assert!(
                    (r_w.re - r_x).abs() < 1e-10 && r_w.im.abs() < 1e-13,
                    "side {side:?} x={x}: {r_w} vs {r_x}"
                );
            }
        }
    }
}
