//! Outgoing (Jost) solution series at a horizon:
//!
//! `f(x) = e^{+-i(lambda - Omega_pm(k)) x} v(e^{kappa_pm x})`
//!
//! with `v(w)` holomorphic at `w = 0`, coefficients from the recursion of
//! the separated system, Gamma-normalized so that the family is holomorphic
//! in `(lambda, omega)`:
//!
//! `v_1^+(0) = 1/Gamma(1 - 2(lambda-Omega_+)/(i kappa_+))`,
//! `v_2^-(0) = 1/Gamma(1 + 2(lambda-Omega_-)/(i kappa_-))`.
//!
//! Everything is carried in the scaled variable `w_hat = w/rho` so all
//! stored numbers stay O(1); the (large or tiny) Gamma magnitude and the
//! seed-phase magnitude live in a separate real log. The series also
//! propagates `d/d lambda` and `d/d omega` of every coefficient, so Newton
//! steps and Cauchy-Riemann checks use exact derivatives.

use super::context::SideSeries;
use super::RadialProblem;
use crate::error::CoreError;
use crate::numeric::gamma::{digamma, ln_gamma};
use crate::spacetime::HorizonSide;
use crate::Result;
use num_complex::Complex64;

type C = Complex64;

/// Initial truncation order; extended adaptively until the evaluation tail
/// is below `TAIL_TOL`.
pub const J_DEFAULT: usize = 40;
const J_MAX: usize = 250;
const TAIL_TOL: f64 = 1e-14;
/// Guard distance (in units of `|kappa|`) to the exceptional set.
const GAMMA_POLE_GUARD: f64 = 1e-8;

/// One value (with parameter derivatives) per spinor component.
#[derive(Debug, Clone)]
pub struct SpinorJet {
    pub value: Vec<C>,
    pub d_lambda: Vec<C>,
    pub d_omega: Vec<C>,
}

impl SpinorJet {
    pub fn dim(&self) -> usize {
        self.value.len()
    }
}

/// Truncated power series of one outgoing solution at one horizon.
#[derive(Debug)]
pub struct HorizonSeries {
    pub side: HorizonSide,
    pub truncation: usize,
    /// `v_hat[i][j]` = i-th component, j-th scaled coefficient, and its
    /// lambda/omega derivatives.
    pub v_hat: Vec<Vec<C>>,
    pub dv_lambda: Vec<Vec<C>>,
    pub dv_omega: Vec<Vec<C>>,
    /// Real log of the Gamma normalization magnitude.
    pub gamma_log: f64,
    /// `-psi(z) z'(lambda)`: logarithmic lambda-derivative of `1/Gamma(z)`.
    pub gamma_dlog: C,
    /// true when `lambda` was within the guard of the exceptional set and
    /// the caller asked to proceed with the limit normalization.
    pub exceptional: bool,
    /// Largest recursion residual of the verified orders.
    pub recursion_residual: f64,
}

/// Distance from `lambda` to the exceptional set
/// `Omega_+ + i kappa_+/2 Z_+` (plus side) or `Omega_- - i kappa_-/2 Z_+`.
pub fn exceptional_distance(lambda: C, omega_h: f64, kappa: f64, side: HorizonSide) -> (f64, C) {
    // points lambda_j = Omega + i kappa j / 2 (plus), Omega - i kappa j/2 (minus)
    let sgn = match side {
        HorizonSide::Cosmological => 1.0,
        HorizonSide::Event => -1.0,
    };
    let mut best = (f64::INFINITY, C::new(0.0, 0.0));
    for j in 1..=400 {
        let p = C::new(omega_h, sgn * kappa * j as f64 / 2.0);
        let d = (lambda - p).norm();
        if d < best.0 {
            best = (d, p);
        }
    }
    best
}

impl HorizonSeries {
    /// Build the series for the given problem at one side. `family` selects
    /// which growing component carries the Gamma-normalized seed (always 0
    /// for the 2-spinor system; 0 or 1 for the 4-spinor one). Truncation
    /// starts at `j_init` and is extended on demand during evaluation.
    pub fn build(
        prob: &RadialProblem,
        side: HorizonSide,
        family: usize,
        j_init: usize,
    ) -> Result<HorizonSeries> {
        let ctx = &prob.context;
        let ss = ctx.side(side);
        let kappa = ss.kappa;
        let omega_h = ss.omega(&ctx.coeffs, prob.k);
        let (dist, point) = exceptional_distance(prob.lambda, omega_h, kappa, side);
        if dist < GAMMA_POLE_GUARD * kappa.abs() && !prob.allow_exceptional {
            return Err(CoreError::GammaPole { point, dist });
        }
        // Gamma normalization: z(lambda) and (1/Gamma) split into
        // unit-modulus seed phase and real log.
        let z = match side {
            HorizonSide::Cosmological => {
                C::new(1.0, 0.0) - 2.0 * (prob.lambda - omega_h) / (C::new(0.0, kappa))
            }
            HorizonSide::Event => {
                C::new(1.0, 0.0) + 2.0 * (prob.lambda - omega_h) / (C::new(0.0, kappa))
            }
        };
        let zprime = match side {
            HorizonSide::Cosmological => -2.0 / C::new(0.0, kappa),
            HorizonSide::Event => 2.0 / C::new(0.0, kappa),
        };
        let lg = ln_gamma(z);
        let seed_phase = C::new(0.0, -lg.im).exp();
        let gamma_log = -lg.re;
        let gamma_dlog = -digamma(z) * zprime;

        let dim = prob.dim();
        if family >= dim / 2 {
            return Err(CoreError::Refused(format!(
                "family {family} out of range for dim {dim}"
            )));
        }
        let mut series = HorizonSeries {
            side,
            truncation: 0,
            v_hat: vec![Vec::new(); dim],
            dv_lambda: vec![Vec::new(); dim],
            dv_omega: vec![Vec::new(); dim],
            gamma_log,
            gamma_dlog,
            exceptional: dist < GAMMA_POLE_GUARD * kappa.abs(),
            recursion_residual: 0.0,
        };
        series.extend(prob, ss, family, seed_phase, j_init.min(J_MAX))?;
        Ok(series)
    }

    /// Recursion for orders `0..=j_to` (idempotent for already-built orders).
    fn extend(
        &mut self,
        prob: &RadialProblem,
        ss: &SideSeries,
        family: usize,
        seed_phase: C,
        j_to: usize,
    ) -> Result<()> {
        let ctx = &prob.context;
        let kappa = ss.kappa;
        let omega_h = ss.omega(&ctx.coeffs, prob.k);
        let dim = prob.dim();
        let coeff_len = ss.len();
        // Seed per the outgoing definition with Gamma normalization: the
        // index-free components are 0..dim/2 at the cosmological side and
        // dim/2..dim at the event side.
        if self.v_hat[0].is_empty() {
            for i in 0..dim {
                self.v_hat[i].push(C::new(0.0, 0.0));
                self.dv_lambda[i].push(C::new(0.0, 0.0));
                self.dv_omega[i].push(C::new(0.0, 0.0));
            }
            let comp = match self.side {
                HorizonSide::Cosmological => family,
                HorizonSide::Event => dim / 2 + family,
            };
            self.v_hat[comp][0] = seed_phase;
            self.dv_lambda[comp][0] = self.gamma_dlog * seed_phase;
        }
        let lam = prob.lambda;
        let om = prob.omega;
        let sign_plus = matches!(self.side, HorizonSide::Cosmological);
        let start = self.v_hat[0].len();
        for j in start..=j_to {
            if j >= coeff_len {
                break;
            }
            let jf = j as f64;
            // convolution sums S_i + their lambda/omega derivatives
            let mut s = vec![C::new(0.0, 0.0); dim];
            let mut s_l = vec![C::new(0.0, 0.0); dim];
            let mut s_o = vec![C::new(0.0, 0.0); dim];
            for l in 1..=j {
                let ch = ss.c_hat(&ctx.coeffs, prob.k, l);
                let ah = ss.a_hat[l];
                let bh = ss.b_hat(&ctx.coeffs, l);
                let jl = j - l;
                if dim == 2 {
                    // S1 = sum c v1 + om sum a v2 ; S2 = sum c v2 + om sum a v1
                    s[0] += ch * self.v_hat[0][jl] + om * ah * self.v_hat[1][jl];
                    s[1] += ch * self.v_hat[1][jl] + om * ah * self.v_hat[0][jl];
                    s_l[0] += ch * self.dv_lambda[0][jl] + om * ah * self.dv_lambda[1][jl];
                    s_l[1] += ch * self.dv_lambda[1][jl] + om * ah * self.dv_lambda[0][jl];
                    s_o[0] += ch * self.dv_omega[0][jl]
                        + ah * (self.v_hat[1][jl] + om * self.dv_omega[1][jl]);
                    s_o[1] += ch * self.dv_omega[1][jl]
                        + ah * (self.v_hat[0][jl] + om * self.dv_omega[0][jl]);
                } else {
                    let ib = C::new(0.0, 1.0) * bh;
                    // S1 = c v1 - i b v3 + om a v4
                    // S2 = c v2 + i b v4 - om a v3
                    // S3 = c v3 + i b v1 - om a v2
                    // S4 = c v4 - i b v2 + om a v1
                    let v = |i: usize| self.v_hat[i][jl];
                    let vl = |i: usize| self.dv_lambda[i][jl];
                    let vo = |i: usize| self.dv_omega[i][jl];
                    s[0] += ch * v(0) - ib * v(2) + om * ah * v(3);
                    s[1] += ch * v(1) + ib * v(3) - om * ah * v(2);
                    s[2] += ch * v(2) + ib * v(0) - om * ah * v(1);
                    s[3] += ch * v(3) - ib * v(1) + om * ah * v(0);
                    s_l[0] += ch * vl(0) - ib * vl(2) + om * ah * vl(3);
                    s_l[1] += ch * vl(1) + ib * vl(3) - om * ah * vl(2);
                    s_l[2] += ch * vl(2) + ib * vl(0) - om * ah * vl(1);
                    s_l[3] += ch * vl(3) - ib * vl(1) + om * ah * vl(0);
                    s_o[0] += ch * vo(0) - ib * vo(2) + ah * (v(3) + om * vo(3));
                    s_o[1] += ch * vo(1) + ib * vo(3) - ah * (v(2) + om * vo(2));
                    s_o[2] += ch * vo(2) + ib * vo(0) - ah * (v(1) + om * vo(1));
                    s_o[3] += ch * vo(3) - ib * vo(1) + ah * (v(0) + om * vo(0));
                }
            }
            // denominators: regular components get i kappa j (plus side,
            // comps < dim/2; minus side, comps >= dim/2); the shifted ones
            // get i kappa j + 2(Omega - lambda) (plus) or
            // -i kappa j + 2(Omega - lambda) (minus).
            for i in 0..dim {
                let regular = if sign_plus { i < dim / 2 } else { i >= dim / 2 };
                let (num, num_l, num_o, den, dden_dl): (C, C, C, C, C) = if regular {
                    if sign_plus {
                        // v_i j = S_i / (i kappa j)
                        (
                            s[i],
                            s_l[i],
                            s_o[i],
                            C::new(0.0, kappa * jf),
                            C::new(0.0, 0.0),
                        )
                    } else {
                        // v_i j = -S_i / (i kappa j)
                        (
                            -s[i],
                            -s_l[i],
                            -s_o[i],
                            C::new(0.0, kappa * jf),
                            C::new(0.0, 0.0),
                        )
                    }
                } else {
                    let base = 2.0 * (omega_h - lam.re) - 2.0 * C::new(0.0, lam.im);
                    let _ = base;
                    let shift = C::new(2.0 * omega_h, 0.0) - 2.0 * lam;
                    let den = if sign_plus {
                        C::new(0.0, kappa * jf) + shift
                    } else {
                        C::new(0.0, -kappa * jf) + shift
                    };
                    (-s[i], -s_l[i], -s_o[i], den, C::new(-2.0, 0.0))
                };
                if den.norm() < 1e-12 * (1.0 + lam.norm()) {
                    if prob.allow_exceptional {
                        self.v_hat[i].push(C::new(0.0, 0.0));
                        self.dv_lambda[i].push(C::new(0.0, 0.0));
                        self.dv_omega[i].push(C::new(0.0, 0.0));
                        continue;
                    }
                    return Err(CoreError::GammaPole {
                        point: lam,
                        dist: den.norm(),
                    });
                }
                let val = num / den;
                // d/dlambda (num/den) = num_l/den - num * dden/dl / den^2
                let val_l = num_l / den - val * dden_dl / den;
                let val_o = num_o / den;
                self.v_hat[i].push(val);
                self.dv_lambda[i].push(val_l);
                self.dv_omega[i].push(val_o);
            }
        }
        self.truncation = self.v_hat[0].len() - 1;
        Ok(())
    }

    /// Evaluate the analytic vector `v(w_hat)` and derivatives at scaled
    /// `w_hat`, extending the truncation until the geometric tail estimate
    /// drops below tolerance.
    pub fn eval(&mut self, prob: &RadialProblem, w_hat: f64) -> Result<SpinorJet> {
        if w_hat > 1.0 + 1e-12 {
            return Err(CoreError::Domain(format!(
                "series evaluation outside disc: w_hat = {w_hat}"
            )));
        }
        loop {
            let j = self.truncation;
            // geometric tail estimate from the last few terms
            let mut tail: f64 = 0.0;
            let whj = w_hat.powi(j as i32);
            for i in 0..self.v_hat.len() {
                let t = self.v_hat[i][j].norm() * whj;
                let prev = self.v_hat[i][j.saturating_sub(2)].norm()
                    * w_hat.powi(j.saturating_sub(2) as i32);
                // ratio-based continuation of the geometric tail
                let q = if prev > 0.0 {
                    (t / prev).sqrt().min(0.999)
                } else {
                    w_hat
                };
                tail = tail.max(t * q / (1.0 - q));
            }
            if tail < TAIL_TOL || w_hat == 0.0 {
                break;
            }
            if j >= J_MAX || j + 1 >= prob.context.side(self.side).len() {
                if tail > 1e-6 {
                    return Err(CoreError::RadiusExceeded(w_hat));
                }
                break;
            }
            let ss = prob.context.side(self.side);
            // seed phase and family unused on re-entry (orders already built)
            self.extend(prob, ss, 0, C::new(1.0, 0.0), (j + 60).min(J_MAX))?;
            if self.truncation == j {
                break;
            }
        }
        let dim = self.v_hat.len();
        let mut out = SpinorJet {
            value: vec![C::new(0.0, 0.0); dim],
            d_lambda: vec![C::new(0.0, 0.0); dim],
            d_omega: vec![C::new(0.0, 0.0); dim],
        };
        let wh = C::new(w_hat, 0.0);
        for i in 0..dim {
            out.value[i] = horner(&self.v_hat[i], wh);
            out.d_lambda[i] = horner(&self.dv_lambda[i], wh);
            out.d_omega[i] = horner(&self.dv_omega[i], wh);
        }
        Ok(out)
    }

    /// Gamma-normalized coefficient `v_{i,j}` (collapsing the log; may
    /// overflow for extreme `Im lambda`, intended for inspection and tests).
    pub fn coefficient(&self, i: usize, j: usize) -> C {
        self.v_hat[i][j] * self.gamma_log.exp()
    }
}

fn horner(c: &[C], x: C) -> C {
    let mut acc = C::new(0.0, 0.0);
    for &ci in c.iter().rev() {
        acc = acc * x + ci;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{RadialContext, RadialProblem};
    use crate::semiclassical::build_coeffs;
    use crate::spacetime::BlackHoleParams;
    use std::sync::Arc;

    fn ctx() -> Arc<RadialContext> {
        let p = BlackHoleParams::new(1.0, 0.3, 0.0, 0.04);
        Arc::new(RadialContext::new(build_coeffs(&p).unwrap()).unwrap())
    }

    fn prob(lambda: C, omega: C) -> RadialProblem {
        RadialProblem::massless(ctx(), lambda, omega, 0.5)
    }

    #[test]
    fn first_order_coefficients_match_recursion_display() {
        // v_{1,1} = c_1/(i kappa) v_{1,0} and
        // v_{2,1} = -omega a_1 v_{1,0} / (i kappa + 2(Omega - lambda)).
        let p = prob(C::new(1.5, -0.1), C::new(9.5, 0.0));
        let mut s = HorizonSeries::build(&p, HorizonSide::Cosmological, 0, 8).unwrap();
        let _ = s.eval(&p, 0.0).unwrap();
        let ss = p.context.side(HorizonSide::Cosmological);
        let kappa = ss.kappa;
        let om_h = ss.omega(&p.context.coeffs, p.k);
        let c1 = ss.c_hat(&p.context.coeffs, p.k, 1);
        let a1 = ss.a_hat[1];
        let expect_v11 = c1 / C::new(0.0, kappa) * s.v_hat[0][0];
        let expect_v21 = -p.omega * a1 * s.v_hat[0][0]
            / (C::new(0.0, kappa) + 2.0 * (C::new(om_h, 0.0) - p.lambda));
        assert!((s.v_hat[0][1] - expect_v11).norm() < 1e-13);
        assert!((s.v_hat[1][1] - expect_v21).norm() < 1e-13);
    }

    #[test]
    fn omega_zero_keeps_second_component_empty() {
        // triangular recursion: with omega = 0 and v_{2,0} = 0, v_2 == 0.
        let p = prob(C::new(1.5, -0.1), C::new(0.0, 0.0));
        let mut s = HorizonSeries::build(&p, HorizonSide::Cosmological, 0, 30).unwrap();
        let _ = s.eval(&p, 0.5).unwrap();
        for j in 0..=s.truncation {
            assert!(s.v_hat[1][j].norm() < 1e-15, "v2[{j}] = {}", s.v_hat[1][j]);
        }
    }

    #[test]
    fn gamma_pole_guard_fires() {
        let c = ctx();
        let ss_kappa = c.coeffs.horizons().kappa(HorizonSide::Cosmological);
        let om_h = c.coeffs.horizons().omega(HorizonSide::Cosmological, 0.5);
        // first exceptional point
        let lam = C::new(om_h, ss_kappa / 2.0);
        let p = RadialProblem::massless(c, lam, C::new(1.0, 0.0), 0.5);
        match HorizonSeries::build(&p, HorizonSide::Cosmological, 0, 10) {
            Err(CoreError::GammaPole { .. }) => {}
            other => panic!("expected GammaPole, got {other:?}"),
        }
    }

    #[test]
    fn gamma_normalized_coefficients_stay_bounded_near_exceptional() {
        // approach the first exceptional point to distance 1e-3 |kappa|:
        // the Gamma-normalized series must not blow up.
        let c = ctx();
        let kappa = c.coeffs.horizons().kappa(HorizonSide::Cosmological);
        let om_h = c.coeffs.horizons().omega(HorizonSide::Cosmological, 0.5);
        let mut prev_norm: f64 = 0.0;
        for dist in [1e-1, 1e-2, 1e-3] {
            let lam = C::new(om_h + dist * kappa.abs(), kappa / 2.0);
            let p = RadialProblem::massless(c.clone(), lam, C::new(3.0, 0.0), 0.5);
            let mut s = HorizonSeries::build(&p, HorizonSide::Cosmological, 0, 20).unwrap();
            let _ = s.eval(&p, 0.0).unwrap();
            // Gamma-normalized v_{2,1} = coefficient(1,1)
            let g = s.coefficient(1, 1).norm();
            assert!(g.is_finite() && g < 1e3, "dist {dist}: {g}");
            prev_norm = prev_norm.max(g);
        }
    }

    #[test]
    fn lambda_derivative_matches_finite_difference() {
        // the full normalized value includes the Gamma log, so the lambda
        // finite difference sees the complete normalization derivative.
        let lam = C::new(1.5, -0.1);
        let om = C::new(9.5, 0.0);
        let h = 1e-6;
        let eval = |l: C, o: C| {
            let p = prob(l, o);
            let mut s = HorizonSeries::build(&p, HorizonSide::Event, 0, 40).unwrap();
            let j = s.eval(&p, 0.37).unwrap();
            (
                j.value[1] * C::new(s.gamma_log, 0.0).exp(),
                j.d_lambda[1] * C::new(s.gamma_log, 0.0).exp(),
            )
        };
        let (_, dl) = eval(lam, om);
        let (vp, _) = eval(lam + h, om);
        let (vm, _) = eval(lam - h, om);
        let fd = (vp - vm) / (2.0 * h);
        assert!((dl - fd).norm() < 1e-6 * (1.0 + fd.norm()), "{dl} vs {fd}");
    }

    #[test]
    fn omega_derivative_matches_per_order() {
        // the omega sensitivity is small against the value scale, so the
        // finite difference is checked coefficient-by-coefficient where
        // there is no cancellation.
        let lam = C::new(1.5, -0.1);
        let om = C::new(9.5, 0.0);
        let h = 1e-6;
        let series_at = |o: C| {
            let p = prob(lam, o);
            let mut s = HorizonSeries::build(&p, HorizonSide::Event, 0, 12).unwrap();
            let _ = s.eval(&p, 0.0).unwrap();
            s
        };
        let s0 = series_at(om);
        let sp = series_at(om + h);
        let sm = series_at(om - h);
        for j in 0..10 {
            for i in 0..2 {
                let fd = (sp.v_hat[i][j] - sm.v_hat[i][j]) / (2.0 * h);
                let an = s0.dv_omega[i][j];
                assert!(
                    (fd - an).norm() < 1e-9 * (1.0 + fd.norm()),
                    "i={i} j={j}: {an} vs {fd}"
                );
            }
        }
    }
}
