//! Per-parameter-set context for the radial problem: scaled Taylor series
//! (in `w_hat = e^{kappa (x -+ X_0)}`) of the coefficient functions at both
//! horizons, obtained by Cauchy integrals over the circle `|w| = rho_pm`
//! with `rho_pm = e^{+-kappa_pm X_0}` of the analytic continuation
//! `r(w)` from the horizon-local inverse map.
//!
//! The stored coefficients are `c_j rho^j` etc., which keeps every number
//! O(1); evaluation at `x` uses `w_hat = e^{kappa (|x| - X_0) sign}` with
//! `|w_hat| < 1` strictly inside the validated disc.

use crate::error::CoreError;
use crate::spacetime::{CoeffFunctions, HorizonSide};
use crate::Result;
use num_complex::Complex64;

type C = Complex64;

/// Number of Cauchy samples on the circle.
const CAUCHY_SAMPLES: usize = 1024;
/// Kept series length (noise-floored).
const COEFF_LEN: usize = 256;

/// Scaled coefficient series at one horizon.
#[derive(Debug, Clone)]
pub struct SideSeries {
    pub side: HorizonSide,
    pub kappa: f64,
    /// Circle radius `rho = e^{+-kappa X_0}` (< 1 for both sides).
    pub rho: f64,
    /// `hat a_j = a_j rho^j` for `a(x) = sqrt(Delta_r)/(r^2+a^2)`.
    pub a_hat: Vec<C>,
    /// series of `1/(r^2+a^2)` (for the `a E k` part of `c`).
    pub inv_hat: Vec<C>,
    /// series of `r/(r^2+a^2)` (for the `q Q` part of `c`).
    pub rinv_hat: Vec<C>,
    /// series of `r a(x)` (the mass coefficient `b = m r a`).
    pub ra_hat: Vec<C>,
}

impl SideSeries {
    /// `hat c_j(k)` of `c(x,k) = a E k /(r^2+a^2) + q Q r/(r^2+a^2)`.
    pub fn c_hat(&self, coeffs: &CoeffFunctions, k: f64, j: usize) -> C {
        let p = coeffs.params();
        p.spin * p.big_e() * k * self.inv_hat[j] + p.field_charge * p.charge * self.rinv_hat[j]
    }

    /// `hat b_j` of `b(x) = m r a(x)`.
    pub fn b_hat(&self, coeffs: &CoeffFunctions, j: usize) -> C {
        coeffs.params().field_mass * self.ra_hat[j]
    }

    pub fn len(&self) -> usize {
        self.a_hat.len()
    }

    /// `Omega_pm(k)` (zeroth coefficient of `c`, exact).
    pub fn omega(&self, coeffs: &CoeffFunctions, k: f64) -> f64 {
        coeffs.horizons().omega(self.side, k)
    }
}

/// Radial context: geometry plus both side series.
#[derive(Debug, Clone)]
pub struct RadialContext {
    pub coeffs: CoeffFunctions,
    pub x0: f64,
    pub plus: SideSeries,
    pub minus: SideSeries,
}

impl RadialContext {
    pub fn new(coeffs: CoeffFunctions) -> Result<Self> {
        let x0 = coeffs.map.x0;
        let plus = build_side(&coeffs, HorizonSide::Cosmological, x0)?;
        let minus = build_side(&coeffs, HorizonSide::Event, x0)?;
        Ok(Self {
            coeffs,
            x0,
            plus,
            minus,
        })
    }

    pub fn side(&self, side: HorizonSide) -> &SideSeries {
        match side {
            HorizonSide::Cosmological => &self.plus,
            HorizonSide::Event => &self.minus,
        }
    }

    /// Scaled expansion variable at coordinate `x` on the given side:
    /// `w_hat = w/rho = e^{kappa_pm (x - sign * X_0)}`; requires `|w_hat|<=1`.
    pub fn w_hat(&self, side: HorizonSide, x: f64) -> Result<f64> {
        let kappa = self.coeffs.horizons().kappa(side);
        let wh = (kappa * (x - side.sign() * self.x0)).exp();
        if wh > 1.0 + 1e-12 {
            return Err(CoreError::Domain(format!(
                "x = {x} inside the series boundary (|w_hat| = {wh:.3e} > 1)"
            )));
        }
        Ok(wh)
    }

    /// Default seeding depth for integrations: `sign (X_0 + 2/|kappa|)`.
    pub fn seed_x(&self, side: HorizonSide) -> f64 {
        let kappa = self.coeffs.horizons().kappa(side);
        side.sign() * (self.x0 + 2.0 / kappa.abs())
    }
}

fn build_side(coeffs: &CoeffFunctions, side: HorizonSide, x0: f64) -> Result<SideSeries> {
    let h = coeffs.horizons();
    let p = coeffs.params();
    let kappa = h.kappa(side);
    let rho = (side.sign() * kappa * x0).exp();
    // validate the doubled disc so the Cauchy circle sits at half of it
    for i in 0..8 {
        let ang = std::f64::consts::PI * i as f64 / 4.0;
        let w = C::from_polar(2.0 * rho, ang);
        coeffs.map.r_of_w(side, w)?;
    }
    let n = CAUCHY_SAMPLES;
    let mut s_a = vec![C::new(0.0, 0.0); n];
    let mut s_inv = vec![C::new(0.0, 0.0); n];
    let mut s_rinv = vec![C::new(0.0, 0.0); n];
    let mut s_ra = vec![C::new(0.0, 0.0); n];
    let lead = p.lambda / 3.0;
    let roots = h.roots();
    for (i, item) in s_a.iter_mut().enumerate() {
        let ang = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        let w = C::from_polar(rho, ang);
        let r = coeffs.map.r_of_w(side, w)?;
        let s2 = r * r + p.spin * p.spin;
        // sqrt(Delta_r) with the vanishing factor extracted:
        // Delta_r = lead * prod(r - r_sigma) * (+-(r_pm - r)), and
        // (r_pm - r)^{1/2} = w e^{-kappa G(r)} single-valued in w.
        let g = coeffs.map.g_regular(side, r);
        let rest: C = match side {
            HorizonSide::Cosmological => {
                (r - roots[0]) * (r - roots[1]) * (r - roots[2]) * lead
            }
            HorizonSide::Event => {
                (r - roots[0]) * (r - roots[1]) * (C::new(roots[3], 0.0) - r) * lead
            }
        };
        let sqrt_delta = rest.sqrt() * w * (-kappa * g).exp();
        *item = sqrt_delta / s2;
        s_inv[i] = 1.0 / s2;
        s_rinv[i] = r / s2;
        s_ra[i] = r * sqrt_delta / s2;
    }
    Ok(SideSeries {
        side,
        kappa,
        rho,
        a_hat: dft_coeffs(&s_a, COEFF_LEN),
        inv_hat: dft_coeffs(&s_inv, COEFF_LEN),
        rinv_hat: dft_coeffs(&s_rinv, COEFF_LEN),
        ra_hat: dft_coeffs(&s_ra, COEFF_LEN),
    })
}

/// First `keep` scaled Taylor coefficients `f_j rho^j` from uniform circle
/// samples (plain DFT), with values below the attainable floor zeroed.
fn dft_coeffs(samples: &[C], keep: usize) -> Vec<C> {
    let n = samples.len();
    let scale = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let floor = 1e-15 * scale.max(1e-300);
    let mut out = Vec::with_capacity(keep);
    for j in 0..keep.min(n) {
        let mut acc = C::new(0.0, 0.0);
        for (i, s) in samples.iter().enumerate() {
            let ang = -2.0 * std::f64::consts::PI * (i * j % n) as f64 / n as f64;
            acc += s * C::from_polar(1.0, ang);
        }
        let c = acc / n as f64;
        out.push(if c.norm() < floor { C::new(0.0, 0.0) } else { c });
    }
    out
}

/// Evaluate a scaled series at `|w_hat| <= 1`.
pub fn eval_series(coeffs_hat: &[C], w_hat: C) -> C {
    let mut acc = C::new(0.0, 0.0);
    for &c in coeffs_hat.iter().rev() {
        acc = acc * w_hat + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiclassical::build_coeffs;
    use crate::spacetime::BlackHoleParams;

    fn ctx(a: f64) -> RadialContext {
        let p = BlackHoleParams::new(1.0, 0.3, a, 0.04).with_field(0.2, 0.1);
        RadialContext::new(build_coeffs(&p).unwrap()).unwrap()
    }

    #[test]
    fn zeroth_coefficients_are_horizon_limits() {
        let c = ctx(0.02);
        let p = *c.coeffs.params();
        let h = c.coeffs.horizons().clone();
        for side in [HorizonSide::Cosmological, HorizonSide::Event] {
            let s = c.side(side);
            // a_hat[0] = 0 (a vanishes at the horizon)
            assert!(s.a_hat[0].norm() < 1e-13);
            let r = h.radius(side);
            assert!((s.inv_hat[0].re - 1.0 / (r * r + p.spin * p.spin)).abs() < 1e-12);
            assert!((s.rinv_hat[0].re - r / (r * r + p.spin * p.spin)).abs() < 1e-11);
            let k = 1.5;
            assert!((s.c_hat(&c.coeffs, k, 0).re - h.omega(side, k)).abs() < 1e-12);
        }
    }

    #[test]
    fn series_reproduce_direct_values() {
        let c = ctx(0.03);
        let k = 2.5;
        for side in [HorizonSide::Cosmological, HorizonSide::Event] {
            let s = c.side(side);
            for extra in [0.5, 1.0, 3.0] {
                let x = side.sign() * (c.x0 + extra);
                let wh = C::new(c.w_hat(side, x).unwrap(), 0.0);
                let r = c.coeffs.map.r(x).unwrap();
                let a_direct = c.coeffs.a_of_r(r);
                let c_direct = c.coeffs.c_of_r(r, k);
                let b_direct = c.coeffs.b_of_r(r);
                let a_ser = eval_series(&s.a_hat, wh).re;
                let c_ser: f64 = (0..s.len())
                    .map(|j| (s.c_hat(&c.coeffs, k, j) * wh.powu(j as u32)).re)
                    .sum();
                let b_ser: f64 = (0..s.len())
                    .map(|j| (s.b_hat(&c.coeffs, j) * wh.powu(j as u32)).re)
                    .sum();
                assert!(
                    (a_ser - a_direct).abs() < 1e-12 * (1.0 + a_direct.abs()),
                    "{side:?} x={x}: a {a_ser} vs {a_direct}"
                );
                assert!((c_ser - c_direct).abs() < 1e-12 * (1.0 + c_direct.abs()));
                assert!((b_ser - b_direct).abs() < 1e-12 * (1.0 + b_direct.abs()));
            }
        }
    }

    #[test]
    fn parity_structure() {
        // a(w) is odd in w, c(w) and r(w) are even: alternating zeros.
        let c = ctx(0.02);
        for side in [HorizonSide::Cosmological, HorizonSide::Event] {
            let s = c.side(side);
            for j in (0..20).step_by(2) {
                assert!(s.a_hat[j].norm() < 1e-12, "{side:?} a_hat[{j}]");
                assert!(s.ra_hat[j].norm() < 1e-12);
            }
            for j in (1..20).step_by(2) {
                assert!(s.inv_hat[j].norm() < 1e-12, "{side:?} inv_hat[{j}]");
                assert!(s.rinv_hat[j].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn domain_guard() {
        let c = ctx(0.0);
        assert!(c.w_hat(HorizonSide::Cosmological, c.x0 - 1.0).is_err());
        assert!(c.w_hat(HorizonSide::Cosmological, c.x0 + 0.5).is_ok());
        assert!(c.w_hat(HorizonSide::Event, -(c.x0 + 0.5)).is_ok());
        assert!(c.w_hat(HorizonSide::Event, 0.0).is_err());
    }
}
