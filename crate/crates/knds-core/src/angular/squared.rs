//! Independent dual route: the scalar Schroedinger-type operator `P_+(lambda)`
//! whose nonzero spectrum is the square of the Dirac angular spectrum,
//!
//! `P_+ = Delta_th { (D_th + q1)^2 + (q2 k - lambda q3)^2 - (q2' k - lambda q3') }`,
//!
//! discretized in a cosine-Jacobi trial family `phi_n = s^{k+1} c^{k} cos(n th)`
//! (half-angle `s`, `c`) as a generalized eigenproblem, deliberately distinct
//! from the eigenbasis route in `discretize`.

use super::{AngularMode, HalfInt};
use crate::error::CoreError;
use crate::numeric::eig::{eigenvalues, CMat, Lu};
use crate::numeric::quadrature::gauss_legendre_on;
use crate::spacetime::BlackHoleParams;
use crate::Result;
use num_complex::Complex64;

type C = Complex64;

/// Distance from `mu^2` to the nearest eigenvalue of the independently
/// discretized `P_+(lambda)`.
pub fn squared_operator_check(
    params: &BlackHoleParams,
    mode: AngularMode,
    lambda: C,
    mu: C,
    n: usize,
) -> Result<f64> {
    let eigs = p_plus_spectrum(params, mode.k, lambda, n)?;
    let target = mu * mu;
    let nearest = eigs
        .iter()
        .map(|e| (e - target).norm())
        .fold(f64::INFINITY, f64::min);
    Ok(nearest)
}

/// Spectrum of `P_+(lambda)` restricted to the `k`-mode.
pub fn p_plus_spectrum(
    params: &BlackHoleParams,
    k: HalfInt,
    lambda: C,
    n: usize,
) -> Result<Vec<C>> {
    if n < 8 {
        return Err(CoreError::DiscretizationTooSmall(n, 8));
    }
    let ka = k.abs();
    let kv = k.value();
    let a = params.spin;
    let e = params.big_e();
    let zeta = a * a * params.lambda / 3.0;
    let quad = 2 * n + (2.0 * ka) as usize + 64;
    let (nodes, weights) = gauss_legendre_on(quad, 0.0, std::f64::consts::PI);

    // scalar coefficient profiles; q1 = i g with g real
    let nq = nodes.len();
    let mut prof = Vec::with_capacity(nq);
    for &t in &nodes {
        let (st, ct) = (t.sin(), t.cos());
        let dth = 1.0 + zeta * ct * ct;
        let g = a * a * params.lambda * (2.0 * t).sin() / (12.0 * dth);
        // g' (analytic)
        let dth_p = -zeta * 2.0 * ct * st;
        let gp = a * a * params.lambda / 12.0 * (2.0 * (2.0 * t).cos() * dth - (2.0 * t).sin() * dth_p)
            / (dth * dth);
        let q2 = e / (dth * st);
        let q3 = a * st / dth;
        let q2p = -e * (dth_p * st + dth * ct) / (dth * st).powi(2);
        let q3p = a * (ct * dth - st * dth_p) / (dth * dth);
        prof.push((dth, g, gp, q2, q3, q2p, q3p));
    }

    // trial family phi_n and derivatives (analytic)
    let aa = ka + 1.0;
    let bb = ka;
    let phi = |m: usize, t: f64| -> (f64, f64, f64) {
        let (s, c) = ((0.5 * t).sin(), (0.5 * t).cos());
        let p = s.powf(aa) * c.powf(bb);
        let l = 0.5 * aa * (c / s) - 0.5 * bb * (s / c);
        let lp = -0.25 * aa / (s * s) - 0.25 * bb / (c * c);
        let mf = m as f64;
        let (cm, sm) = ((mf * t).cos(), (mf * t).sin());
        let f = p * cm;
        let fp = p * (l * cm - mf * sm);
        let fpp = p * ((l * l + lp - mf * mf) * cm - 2.0 * l * mf * sm);
        (f, fp, fpp)
    };

    // P_+ phi at the nodes:
    // P_+ f = Dth [ -f'' - 2 i q1 f' + (-i q1' + q1^2 + (q2 k - lam q3)^2
    //               - (q2' k - lam q3') ) f ]
    // with q1 = i g: -2 i q1 = 2 g, -i q1' = g', q1^2 = -g^2.
    let apply = |m: usize| -> Vec<C> {
        let mut out = Vec::with_capacity(nq);
        for (q, &t) in nodes.iter().enumerate() {
            let (dth, g, gp, q2, q3, q2p, q3p) = prof[q];
            let (f, fp, fpp) = phi(m, t);
            let wline = {
                let u = C::new(q2 * kv, 0.0) - lambda * q3;
                u * u
            };
            let v0 = C::new(gp - g * g, 0.0) + wline
                - (C::new(q2p * kv, 0.0) - lambda * q3p);
            let val = C::new(-fpp + 2.0 * g * fp, 0.0) + v0 * f;
            out.push(dth * val);
        }
        out
    };

    // Gram (real SPD) and operator matrices in the trial family.
    let mut gram = CMat::zeros(n);
    let mut op = CMat::zeros(n);
    let mut fvals: Vec<Vec<f64>> = Vec::with_capacity(n);
    for m in 0..n {
        fvals.push(nodes.iter().map(|&t| phi(m, t).0).collect());
    }
    for m in 0..n {
        let pf = apply(m);
        for i in 0..n {
            let mut sg = 0.0;
            let mut so = C::new(0.0, 0.0);
            for q in 0..nq {
                sg += weights[q] * fvals[i][q] * fvals[m][q];
                so += weights[q] * fvals[i][q] * pf[q];
            }
            *gram.at_mut(i, m) = C::new(sg, 0.0);
            *op.at_mut(i, m) = so;
        }
    }
    // generalized problem op v = mu^2 gram v -> gram^{-1} op standard problem
    let lu = Lu::new(&gram)
        .ok_or_else(|| CoreError::ZeroSearch("singular Gram matrix".into()))?;
    let mut reduced = CMat::zeros(n);
    for j in 0..n {
        let col: Vec<C> = (0..n).map(|i| op.at(i, j)).collect();
        let sol = lu.solve(&col);
        for i in 0..n {
            *reduced.at_mut(i, j) = sol[i];
        }
    }
    Ok(eigenvalues(&reduced))
}
