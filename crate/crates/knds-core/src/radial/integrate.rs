//! Adaptive Dormand-Prince 5(4) integration of the first-order radial
//! system with per-step magnitude renormalization (accumulated in a real
//! log) and forward-propagated `d/d lambda`, `d/d omega` variational blocks.
//!
//! The radius `r` rides along as extra state (`dr/dx = Delta_r/(r^2+a^2)`),
//! so the right-hand side needs no transcendental map inversions.
//!
//! Massless system (`D = 2`):
//! `f1' = -i[(c-lambda) f1 + omega a f2]`,
//! `f2' = +i[(c-lambda) f2 + omega a f1]`;
//! massive (`D = 4`):
//! `f1' = -i[(c-lambda) f1 - i b f3 + omega a f4]`,
//! `f2' = -i[(c-lambda) f2 + i b f4 - omega a f3]`,
//! `f3' = +i[(c-lambda) f3 + i b f1 - omega a f2]`,
//! `f4' = +i[(c-lambda) f4 - i b f2 + omega a f1]`.

use super::RadialProblem;
use crate::error::CoreError;
use crate::Result;
use num_complex::Complex64;

type C = Complex64;

/// Default local error tolerance.
pub const LOCAL_TOL: f64 = 1e-12;

/// Spinor plus derivative blocks plus accumulated log factor.
#[derive(Debug, Clone)]
pub struct IntegratedState {
    pub f: Vec<C>,
    pub d_lambda: Vec<C>,
    pub d_omega: Vec<C>,
    /// `ln` of the factored-out magnitude (the true solution is
    /// `f * exp(log_factor)` and likewise for the derivative blocks).
    pub log_factor: f64,
    pub x: f64,
    pub r: f64,
    pub steps: usize,
}

/// Snap a proposed step to the quarter-octave grid `2^{k/4}` from below.
fn quantize_step(h: f64) -> f64 {
    if h <= 0.0 || !h.is_finite() {
        return h;
    }
    let k = (4.0 * h.log2()).floor() / 4.0;
    2.0f64.powf(k)
}

struct Rhs<'a> {
    prob: &'a RadialProblem,
}

impl Rhs<'_> {
    /// dy/dx for y = [f | df/dlambda | df/domega | r].
    fn eval(&self, y: &[C], dim: usize) -> Vec<C> {
        let p = self.prob.context.coeffs.params();
        let r = y[3 * dim].re;
        let s2 = r * r + p.spin * p.spin;
        let delta = p.delta_r(r);
        let a_of = delta.max(0.0).sqrt() / s2;
        let c_of = (p.spin * p.big_e() * self.prob.k + p.field_charge * p.charge * r) / s2;
        let b_of = p.field_mass * r * a_of;
        let lam = self.prob.lambda;
        let om = self.prob.omega;
        let i = C::new(0.0, 1.0);
        let mut dy = vec![C::new(0.0, 0.0); 3 * dim + 1];
        let cl = C::new(c_of, 0.0) - lam;
        // A f ; A_lambda f = +i f1, -i f2 pattern; A_omega f = coupling only
        let apply = |f: &[C], out: &mut [C]| {
            if dim == 2 {
                out[0] = -i * (cl * f[0] + om * a_of * f[1]);
                out[1] = i * (cl * f[1] + om * a_of * f[0]);
            } else {
                let ib = i * b_of;
                out[0] = -i * (cl * f[0] - ib * f[2] + om * a_of * f[3]);
                out[1] = -i * (cl * f[1] + ib * f[3] - om * a_of * f[2]);
                out[2] = i * (cl * f[2] + ib * f[0] - om * a_of * f[1]);
                out[3] = i * (cl * f[3] - ib * f[1] + om * a_of * f[0]);
            }
        };
        let (f, rest) = y.split_at(dim);
        let (fl, fo) = rest.split_at(dim);
        {
            let (df, drest) = dy.split_at_mut(dim);
            apply(f, df);
            let (dfl, dfo) = drest.split_at_mut(dim);
            apply(fl, dfl);
            apply(&fo[..dim], dfo);
        }
        // inhomogeneous variational terms: A_lambda f and A_omega f
        if dim == 2 {
            dy[dim] += i * f[0];
            dy[dim + 1] += -i * f[1];
            dy[2 * dim] += -i * a_of * f[1];
            dy[2 * dim + 1] += i * a_of * f[0];
        } else {
            dy[dim] += i * f[0];
            dy[dim + 1] += i * f[1];
            dy[dim + 2] += -i * f[2];
            dy[dim + 3] += -i * f[3];
            dy[2 * dim] += -i * a_of * f[3];
            dy[2 * dim + 1] += i * a_of * f[2];
            dy[2 * dim + 2] += i * a_of * f[1];
            dy[2 * dim + 3] += -i * a_of * f[0];
        }
        dy[3 * dim] = C::new(delta / s2, 0.0);
        dy
    }
}

/// Integrate from `(x_from, state)` to `x_to` with local tolerance `tol`.
/// `r_from` must be the radius at `x_from`.
pub fn integrate_interior(
    prob: &RadialProblem,
    mut state: IntegratedState,
    x_to: f64,
    tol: f64,
) -> Result<IntegratedState> {
    let dim = prob.dim();
    if state.x == x_to {
        return Ok(state);
    }
    // Dormand-Prince 5(4) tableau
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let rhs = Rhs { prob };
    let n = 3 * dim + 1;
    let mut y: Vec<C> = Vec::with_capacity(n);
    y.extend_from_slice(&state.f);
    y.extend_from_slice(&state.d_lambda);
    y.extend_from_slice(&state.d_omega);
    y.push(C::new(state.r, 0.0));

    let dir = (x_to - state.x).signum();
    let total = (x_to - state.x).abs();
    // initial step from the oscillation scale, quantized like all others
    let freq = prob.lambda.norm().max(prob.omega.norm()).max(1.0);
    let mut h = quantize_step((0.002 / freq).min(total).max(1e-8));
    let mut x = state.x;
    let mut log_factor = state.log_factor;
    let mut k_stages: Vec<Vec<C>> = vec![vec![C::new(0.0, 0.0); n]; 7];
    let mut steps = 0usize;
    let max_steps = 4_000_000usize;
    while (x - x_to).abs() > 1e-14 * (1.0 + x_to.abs()) {
        if steps > max_steps {
            return Err(CoreError::Stiffness(x));
        }
        let hstep = h.min((x_to - x).abs()) * dir;
        k_stages[0] = rhs.eval(&y, dim);
        for s in 1..=6 {
            let mut ys = y.clone();
            for (j, ks) in k_stages.iter().enumerate().take(s) {
                let aj = A[s - 1][j];
                if aj != 0.0 {
                    for i in 0..n {
                        ys[i] += hstep * aj * ks[i];
                    }
                }
            }
            k_stages[s] = rhs.eval(&ys, dim);
        }
        // 5th order solution and embedded error
        let mut y5 = y.clone();
        let mut err: f64 = 0.0;
        let mut scale: f64 = 1.0;
        for i in 0..n {
            let mut acc5 = C::new(0.0, 0.0);
            let mut acc4 = C::new(0.0, 0.0);
            for s in 0..7 {
                if B5[s] != 0.0 {
                    acc5 += B5[s] * k_stages[s][i];
                }
                if B4[s] != 0.0 {
                    acc4 += B4[s] * k_stages[s][i];
                }
            }
            y5[i] += hstep * acc5;
            if i < dim {
                scale = scale.max(y5[i].norm()).max(y[i].norm());
            }
            err = err.max((hstep * (acc5 - acc4)).norm());
        }
        let err_rel = err / scale.max(1e-280);
        if err_rel <= tol {
            x += hstep;
            y = y5;
            steps += 1;
            // renormalize magnitude into the log factor
            let m = y[..dim].iter().map(|z| z.norm()).fold(0.0, f64::max);
            if !(1e-30..=1e30).contains(&m) && m > 0.0 && m.is_finite() {
                let inv = 1.0 / m;
                for z in y[..3 * dim].iter_mut() {
                    *z *= inv;
                }
                log_factor += m.ln();
            }
            if !y[0].is_finite() {
                return Err(CoreError::Stiffness(x));
            }
        }
        // Step controller with quarter-octave quantization: nearby
        // parameter values then execute identical step sequences, so
        // finite differences across lambda/omega see no step jitter.
        let fac = if err_rel > 0.0 {
            0.9 * (tol / err_rel).powf(0.2)
        } else {
            5.0
        };
        let proposed = (h * fac.clamp(0.2, 5.0)).min(total);
        h = quantize_step(proposed);
        if h < 1e-13 * (1.0 + x.abs()) {
            return Err(CoreError::Stiffness(x));
        }
    }
    state.f = y[..dim].to_vec();
    state.d_lambda = y[dim..2 * dim].to_vec();
    state.d_omega = y[2 * dim..3 * dim].to_vec();
    state.r = y[3 * dim].re;
    state.x = x_to;
    state.log_factor = log_factor;
    state.steps += steps;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::build_context;
    use crate::spacetime::BlackHoleParams;

    fn prob(lambda: C, omega: C) -> RadialProblem {
        let p = BlackHoleParams::new(1.0, 0.3, 0.0, 0.04);
        RadialProblem::massless(build_context(&p).unwrap(), lambda, omega, 0.5)
    }

    fn state_at(prob: &RadialProblem, x: f64, f: Vec<C>) -> IntegratedState {
        IntegratedState {
            d_lambda: vec![C::new(0.0, 0.0); f.len()],
            d_omega: vec![C::new(0.0, 0.0); f.len()],
            f,
            log_factor: 0.0,
            x,
            r: prob.context.coeffs.map.r(x).unwrap(),
            steps: 0,
        }
    }

    #[test]
    fn zero_initial_data_stays_zero() {
        let p = prob(C::new(1.0, -0.1), C::new(5.0, 0.0));
        let s0 = state_at(&p, 3.0, vec![C::new(0.0, 0.0); 2]);
        let s1 = integrate_interior(&p, s0, -3.0, LOCAL_TOL).unwrap();
        assert!(s1.f[0].norm() == 0.0 && s1.f[1].norm() == 0.0);
    }

    #[test]
    fn zero_length_path_is_identity() {
        let p = prob(C::new(1.0, -0.1), C::new(5.0, 0.0));
        let f0 = vec![C::new(0.3, 0.1), C::new(-0.2, 0.7)];
        let s0 = state_at(&p, 2.0, f0.clone());
        let s1 = integrate_interior(&p, s0, 2.0, LOCAL_TOL).unwrap();
        assert_eq!(s1.f, f0);
        assert_eq!(s1.log_factor, 0.0);
    }

    #[test]
    fn determinant_of_two_solutions_is_constant() {
        // trace-free system: det of any fundamental pair is x-independent.
        let p = prob(C::new(1.3, -0.2), C::new(7.0, 0.0));
        let e1 = state_at(&p, 4.0, vec![C::new(1.0, 0.0), C::new(0.0, 0.0)]);
        let e2 = state_at(&p, 4.0, vec![C::new(0.0, 0.0), C::new(1.0, 0.0)]);
        let a = integrate_interior(&p, e1, -4.0, 1e-13).unwrap();
        let b = integrate_interior(&p, e2, -4.0, 1e-13).unwrap();
        let det = (a.f[0] * b.f[1] - a.f[1] * b.f[0])
            * (a.log_factor + b.log_factor).exp();
        assert!((det - C::new(1.0, 0.0)).norm() < 1e-10, "det = {det}");
    }

    #[test]
    fn conjugation_symmetry_preserved() {
        // for real (lambda, omega): if f solves, so does (conj f2, conj f1).
        let p = prob(C::new(1.1, 0.0), C::new(6.5, 0.0));
        let f = vec![C::new(0.4, 0.3), C::new(-0.1, 0.8)];
        let swapped = vec![f[1].conj(), f[0].conj()];
        let s1 = integrate_interior(&p, state_at(&p, 5.0, f), -2.0, 1e-13).unwrap();
        let s2 = integrate_interior(&p, state_at(&p, 5.0, swapped), -2.0, 1e-13).unwrap();
        let expect = [s1.f[1].conj(), s1.f[0].conj()];
        for i in 0..2 {
            assert!(
                (s2.f[i] * s2.log_factor.exp() - expect[i] * s1.log_factor.exp()).norm() < 1e-10,
                "component {i}"
            );
        }
    }

    #[test]
    fn variational_block_matches_finite_difference() {
        let lam = C::new(1.2, -0.15);
        let om = C::new(4.0, 0.0);
        let f0 = vec![C::new(0.9, 0.0), C::new(0.1, -0.2)];
        let run = |l: C, o: C| {
            let p = prob(l, o);
            let s = state_at(&p, 3.0, f0.clone());
            integrate_interior(&p, s, -1.0, 1e-13).unwrap()
        };
        let base = run(lam, om);
        let h = 1e-6;
        let pl = run(lam + h, om);
        let ml = run(lam - h, om);
        for i in 0..2 {
            let fd = (pl.f[i] * pl.log_factor.exp() - ml.f[i] * ml.log_factor.exp()) / (2.0 * h);
            let an = base.d_lambda[i] * base.log_factor.exp();
            assert!(
                (fd - an).norm() < 1e-6 * (1.0 + fd.norm()),
                "dlambda[{i}]: {an} vs {fd}"
            );
        }
        let po = run(lam, om + h);
        let mo = run(lam, om - h);
        for i in 0..2 {
            let fd = (po.f[i] * po.log_factor.exp() - mo.f[i] * mo.log_factor.exp()) / (2.0 * h);
            let an = base.d_omega[i] * base.log_factor.exp();
            assert!(
                (fd - an).norm() < 1e-6 * (1.0 + fd.norm()),
                "domega[{i}]: {an} vs {fd}"
            );
        }
    }

    #[test]
    fn massive_dimension_integrates() {
        let bh = BlackHoleParams::new(1.0, 0.3, 0.0, 0.04).with_field(0.0, 0.05);
        let p = RadialProblem::massive(
            build_context(&bh).unwrap(),
            C::new(1.0, -0.1),
            C::new(5.0, 0.0),
            0.5,
        );
        let f0 = vec![
            C::new(1.0, 0.0),
            C::new(0.0, 0.0),
            C::new(0.0, 0.0),
            C::new(0.5, 0.0),
        ];
        let s0 = IntegratedState {
            d_lambda: vec![C::new(0.0, 0.0); 4],
            d_omega: vec![C::new(0.0, 0.0); 4],
            f: f0,
            log_factor: 0.0,
            x: 3.0,
            r: p.context.coeffs.map.r(3.0).unwrap(),
            steps: 0,
        };
        let s1 = integrate_interior(&p, s0, 0.0, 1e-12).unwrap();
        assert!(s1.f.iter().all(|z| z.is_finite()));
        // r state must match the true inverse map at the endpoint
        let r_true = p.context.coeffs.map.r(0.0).unwrap();
        assert!((s1.r - r_true).abs() < 1e-9, "{} vs {r_true}", s1.r);
    }
}
